#include "recnum/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace recnum {

namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'R', 'N', 'A', 'G'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw std::runtime_error("truncated checkpoint");
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_doubles(std::ostream& out, const std::vector<double>& v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}

std::vector<double> get_doubles(std::istream& in, size_t n) {
  std::vector<double> v(n);
  in.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (!in) throw std::runtime_error("truncated checkpoint");
  return v;
}

json config_json(const AgentConfig& a) {
  return json{{"embedding_dim", a.embedding_dim},
              {"hidden_dim", a.hidden_dim},
              {"learning_rate", a.learning_rate},
              {"batch_size", a.batch_size},
              {"message_alphabet_size", a.message_alphabet_size},
              {"entropy_coefficient", a.entropy_coefficient},
              {"numeral_range", a.numeral_range},
              {"init_scale", a.init_scale},
              {"speaker_entropy", a.speaker_entropy}};
}

AgentConfig config_from(const json& j) {
  AgentConfig a;
  a.embedding_dim = j.at("embedding_dim");
  a.hidden_dim = j.at("hidden_dim");
  a.learning_rate = j.at("learning_rate");
  a.batch_size = j.at("batch_size");
  a.message_alphabet_size = j.at("message_alphabet_size");
  a.entropy_coefficient = j.at("entropy_coefficient");
  a.numeral_range = j.at("numeral_range");
  a.init_scale = j.at("init_scale");
  a.speaker_entropy = j.at("speaker_entropy");
  return a;
}

json adam_json(const AdamState& s) {
  return json{{"step", s.step},
              {"beta1", s.beta1},
              {"beta2", s.beta2},
              {"epsilon", s.epsilon},
              {"size", s.first_moment.size()}};
}

}  // namespace

void save_agents(const std::string& path, const SpeakerPolicy& speaker,
                 const ListenerPolicy& listener, const AdamState& speaker_opt,
                 const AdamState& listener_opt) {
  json meta;
  meta["speaker_config"] = config_json(speaker.config());
  meta["listener_config"] = config_json(listener.config());
  meta["embed_seed"] = speaker.embed_seed();
  meta["speaker_params"] = speaker.parameters().size();
  meta["listener_params"] = listener.parameters().size();
  meta["speaker_adam"] = adam_json(speaker_opt);
  meta["listener_adam"] = adam_json(listener_opt);
  json rows = json::object();
  for (const auto& [token, row] : speaker.token_rows()) {
    rows[std::to_string(token)] = row;
  }
  meta["token_rows"] = rows;
  std::string meta_text = meta.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out.write(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(meta_text.size()));
  out.write(meta_text.data(),
            static_cast<std::streamsize>(meta_text.size()));
  put_doubles(out, speaker.parameters());
  put_doubles(out, listener.parameters());
  put_doubles(out, speaker_opt.first_moment);
  put_doubles(out, speaker_opt.second_moment);
  put_doubles(out, listener_opt.first_moment);
  put_doubles(out, listener_opt.second_moment);
  if (!out) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

AgentCheckpoint load_agents(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open checkpoint '" + path + "'");
  }
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("'" + path + "' is not an agent checkpoint");
  }
  std::uint32_t version = get_u32(in);
  if (version != kVersion) {
    throw std::runtime_error("unsupported checkpoint version " +
                             std::to_string(version));
  }
  std::uint32_t meta_len = get_u32(in);
  std::string meta_text(meta_len, '\0');
  in.read(meta_text.data(), meta_len);
  if (!in) throw std::runtime_error("truncated checkpoint");
  json meta = json::parse(meta_text);

  AgentConfig speaker_config = config_from(meta.at("speaker_config"));
  AgentConfig listener_config = config_from(meta.at("listener_config"));
  std::map<Token, int> rows;
  for (const auto& [key, value] : meta.at("token_rows").items()) {
    rows[std::stoi(key)] = value;
  }

  auto load_adam = [&](const json& j, AdamState& s) {
    s.step = j.at("step");
    s.beta1 = j.at("beta1");
    s.beta2 = j.at("beta2");
    s.epsilon = j.at("epsilon");
    size_t n = j.at("size");
    s.first_moment = get_doubles(in, n);
    s.second_moment = get_doubles(in, n);
  };

  std::vector<double> speaker_params =
      get_doubles(in, meta.at("speaker_params"));
  std::vector<double> listener_params =
      get_doubles(in, meta.at("listener_params"));

  AgentCheckpoint ckpt{
      speaker_config,
      SpeakerPolicy::restore(speaker_config, meta.at("embed_seed"),
                             std::move(rows), std::move(speaker_params)),
      ListenerPolicy::restore(listener_config, std::move(listener_params)),
      AdamState{},
      AdamState{}};
  load_adam(meta.at("speaker_adam"), ckpt.speaker_opt);
  load_adam(meta.at("listener_adam"), ckpt.listener_opt);
  return ckpt;
}

}  // namespace recnum
