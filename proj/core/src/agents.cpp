#include "recnum/agents.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace recnum {

namespace {

using Eigen::Map;
using Eigen::MatrixXd;
using Eigen::VectorXd;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void fill_uniform(double* out, size_t n, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-scale, scale);
  for (size_t i = 0; i < n; ++i) out[i] = u(rng);
}

// --- flat parameter layouts -------------------------------------------------

struct SpeakerLayout {
  int E, H, A;
  size_t wx, wh, b, wo, bo, fixed;

  explicit SpeakerLayout(const AgentConfig& c)
      : E(c.embedding_dim), H(c.hidden_dim), A(c.message_alphabet_size) {
    wx = 0;
    wh = wx + static_cast<size_t>(4 * H) * E;
    b = wh + static_cast<size_t>(4 * H) * H;
    wo = b + static_cast<size_t>(4 * H);
    bo = wo + static_cast<size_t>(A) * H;
    fixed = bo + static_cast<size_t>(A);
  }
  size_t row_offset(int row) const {
    return fixed + static_cast<size_t>(row) * E;
  }
};

struct ListenerLayout {
  int E, H, A, R;
  size_t emb, wx, wh, b, wc, bc, total;

  explicit ListenerLayout(const AgentConfig& c)
      : E(c.embedding_dim),
        H(c.hidden_dim),
        A(c.message_alphabet_size),
        R(c.numeral_range) {
    emb = 0;
    wx = emb + static_cast<size_t>(E) * A;
    wh = wx + static_cast<size_t>(4 * H) * E;
    b = wh + static_cast<size_t>(4 * H) * H;
    wc = b + static_cast<size_t>(4 * H);
    bc = wc + static_cast<size_t>(R) * H;
    total = bc + static_cast<size_t>(R);
  }
};

// --- LSTM core ---------------------------------------------------------------

struct LstmTrace {
  MatrixXd X;                      // E x L inputs
  MatrixXd I, F, G, O, C, TC, Hs;  // H x L gate/state records
  void resize(int E, int H, int L) {
    X.resize(E, L);
    for (MatrixXd* m : {&I, &F, &G, &O, &C, &TC, &Hs}) m->resize(H, L);
  }
};

// Standard single-layer LSTM; gate rows are ordered [input, forget, cell,
// output].  Initial hidden and cell states are zero.
void lstm_forward(const Map<const MatrixXd>& Wx, const Map<const MatrixXd>& Wh,
                  const Map<const VectorXd>& b, LstmTrace& tr) {
  const int H = static_cast<int>(Wh.cols());
  const int L = static_cast<int>(tr.X.cols());
  VectorXd z(4 * H);
  VectorXd h_prev = VectorXd::Zero(H);
  VectorXd c_prev = VectorXd::Zero(H);
  for (int t = 0; t < L; ++t) {
    z.noalias() = Wx * tr.X.col(t);
    z.noalias() += Wh * h_prev;
    z += b;
    auto sig = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
    for (int j = 0; j < H; ++j) {
      tr.I(j, t) = sig(z(j));
      tr.F(j, t) = sig(z(H + j));
      tr.G(j, t) = std::tanh(z(2 * H + j));
      tr.O(j, t) = sig(z(3 * H + j));
      tr.C(j, t) = tr.F(j, t) * c_prev(j) + tr.I(j, t) * tr.G(j, t);
      tr.TC(j, t) = std::tanh(tr.C(j, t));
      tr.Hs(j, t) = tr.O(j, t) * tr.TC(j, t);
    }
    h_prev = tr.Hs.col(t);
    c_prev = tr.C.col(t);
  }
}

// Backpropagation through time.  dH holds the loss gradient w.r.t. each
// hidden output; parameter gradients are accumulated in place and dX receives
// the input gradients.
void lstm_backward(const Map<const MatrixXd>& Wx, const Map<const MatrixXd>& Wh,
                   const LstmTrace& tr, const MatrixXd& dH,
                   Map<MatrixXd>& gWx, Map<MatrixXd>& gWh, Map<VectorXd>& gb,
                   MatrixXd& dX) {
  const int H = static_cast<int>(Wh.cols());
  const int L = static_cast<int>(tr.X.cols());
  dX.setZero(tr.X.rows(), L);
  VectorXd dh_carry = VectorXd::Zero(H);
  VectorXd dc_carry = VectorXd::Zero(H);
  VectorXd dz(4 * H);
  for (int t = L - 1; t >= 0; --t) {
    for (int j = 0; j < H; ++j) {
      double dh = dH(j, t) + dh_carry(j);
      double tc = tr.TC(j, t);
      double dout = dh * tc;
      double dc = dc_carry(j) + dh * tr.O(j, t) * (1.0 - tc * tc);
      double c_prev = t > 0 ? tr.C(j, t - 1) : 0.0;
      double di = dc * tr.G(j, t);
      double dg = dc * tr.I(j, t);
      double df = dc * c_prev;
      dc_carry(j) = dc * tr.F(j, t);
      dz(j) = di * tr.I(j, t) * (1.0 - tr.I(j, t));
      dz(H + j) = df * tr.F(j, t) * (1.0 - tr.F(j, t));
      dz(2 * H + j) = dg * (1.0 - tr.G(j, t) * tr.G(j, t));
      dz(3 * H + j) = dout * tr.O(j, t) * (1.0 - tr.O(j, t));
    }
    gWx.noalias() += dz * tr.X.col(t).transpose();
    if (t > 0) {
      gWh.noalias() += dz * tr.Hs.col(t - 1).transpose();
    }
    gb += dz;
    dX.col(t).noalias() = Wx.transpose() * dz;
    dh_carry.noalias() = Wh.transpose() * dz;
  }
}

VectorXd softmax(const VectorXd& logits) {
  VectorXd p = (logits.array() - logits.maxCoeff()).exp();
  return p / p.sum();
}

double entropy_of(const VectorXd& p) {
  double h = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p(i) > 0.0) h -= p(i) * std::log(p(i));
  }
  return h;
}

int sample_index(const VectorXd& p, std::mt19937_64& rng) {
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double acc = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    acc += p(i);
    if (u < acc) return i;
  }
  return static_cast<int>(p.size()) - 1;
}

int argmax_index(const VectorXd& p) {
  int best = 0;
  for (int i = 1; i < p.size(); ++i) {
    if (p(i) > p(best)) best = i;
  }
  return best;
}

// --- policy views -------------------------------------------------------------

struct SpeakerNet {
  const SpeakerPolicy& policy;
  SpeakerLayout lay;
  const double* base;

  explicit SpeakerNet(const SpeakerPolicy& p)
      : policy(p), lay(p.config()), base(p.parameters().data()) {}

  Map<const MatrixXd> Wx() const {
    return {base + lay.wx, 4 * lay.H, lay.E};
  }
  Map<const MatrixXd> Wh() const {
    return {base + lay.wh, 4 * lay.H, lay.H};
  }
  Map<const VectorXd> b() const { return {base + lay.b, 4 * lay.H}; }
  Map<const MatrixXd> Wo() const { return {base + lay.wo, lay.A, lay.H}; }
  Map<const VectorXd> bo() const { return {base + lay.bo, lay.A}; }

  void load_inputs(const std::vector<Token>& tokens, MatrixXd& X) const {
    X.resize(lay.E, tokens.size());
    const auto& rows = policy.token_rows();
    for (size_t t = 0; t < tokens.size(); ++t) {
      auto it = rows.find(tokens[t]);
      if (it == rows.end()) {
        throw OutOfVocabulary("speaker has no embedding for token '" +
                              token_text(tokens[t]) +
                              "' (stale vocabulary after a mutation?)");
      }
      X.col(t) = Map<const VectorXd>(base + lay.row_offset(it->second), lay.E);
    }
  }
};

struct ListenerNet {
  const ListenerPolicy& policy;
  ListenerLayout lay;
  const double* base;

  explicit ListenerNet(const ListenerPolicy& p)
      : policy(p), lay(p.config()), base(p.parameters().data()) {}

  Map<const MatrixXd> Emb() const { return {base + lay.emb, lay.E, lay.A}; }
  Map<const MatrixXd> Wx() const {
    return {base + lay.wx, 4 * lay.H, lay.E};
  }
  Map<const MatrixXd> Wh() const {
    return {base + lay.wh, 4 * lay.H, lay.H};
  }
  Map<const VectorXd> b() const { return {base + lay.b, 4 * lay.H}; }
  Map<const MatrixXd> Wc() const { return {base + lay.wc, lay.R, lay.H}; }
  Map<const VectorXd> bc() const { return {base + lay.bc, lay.R}; }

  void load_inputs(const std::vector<int>& message, MatrixXd& X) const {
    X.resize(lay.E, message.size());
    for (size_t t = 0; t < message.size(); ++t) {
      int sym = message[t];
      if (sym < 0 || sym >= lay.A) {
        throw std::invalid_argument("message symbol outside the alphabet");
      }
      X.col(t) = Emb().col(sym);
    }
  }
};

}  // namespace

// --- tokens -------------------------------------------------------------------

std::string token_text(Token t) {
  switch (t) {
    case kTokenMul:
      return "*";
    case kTokenPlus:
      return "+";
    case kTokenMinus:
      return "-";
    default:
      return std::to_string(t - 2);
  }
}

Vocabulary::Vocabulary(const DMPair& dm) {
  tokens_ = {kTokenMul, kTokenPlus, kTokenMinus};
  for (int d : dm.digits()) tokens_.push_back(numeral_token(d));
  for (int m : dm.multipliers()) tokens_.push_back(numeral_token(m));
  std::sort(tokens_.begin(), tokens_.end());
}

bool Vocabulary::contains(Token t) const {
  return std::binary_search(tokens_.begin(), tokens_.end(), t);
}

namespace {

void tokenize_into(const NumExpr& e, const Vocabulary& vocab,
                   std::vector<Token>& out) {
  switch (e.kind()) {
    case NumExpr::Kind::Digit: {
      Token t = numeral_token(e.value());
      if (!vocab.contains(t)) {
        throw OutOfVocabulary("numeral " + std::to_string(e.value()) +
                              " is not in the vocabulary");
      }
      out.push_back(t);
      break;
    }
    case NumExpr::Kind::Phrase: {
      tokenize_into(*e.left(), vocab, out);
      out.push_back(kTokenMul);
      Token t = numeral_token(e.outer_multiplier());
      if (!vocab.contains(t)) {
        throw OutOfVocabulary("multiplier " +
                              std::to_string(e.outer_multiplier()) +
                              " is not in the vocabulary");
      }
      out.push_back(t);
      break;
    }
    case NumExpr::Kind::Sum:
    case NumExpr::Kind::Diff:
      tokenize_into(*e.left(), vocab, out);
      out.push_back(e.kind() == NumExpr::Kind::Sum ? kTokenPlus : kTokenMinus);
      tokenize_into(*e.rest(), vocab, out);
      break;
  }
}

}  // namespace

std::vector<Token> tokenize(const NumExpr& expr, const Vocabulary& vocab) {
  std::vector<Token> out;
  out.reserve(expr.complexity());
  tokenize_into(expr, vocab, out);
  return out;
}

// --- policies -------------------------------------------------------------------

SpeakerPolicy::SpeakerPolicy(const AgentConfig& config, std::uint64_t seed)
    : config_(config), embed_seed_(splitmix64(seed ^ 0x5be5af1586a4a9d1ULL)) {
  SpeakerLayout lay(config_);
  params_.resize(lay.fixed);
  std::mt19937_64 rng(splitmix64(seed));
  fill_uniform(params_.data(), params_.size(), config_.init_scale, rng);
}

void SpeakerPolicy::register_token(Token t) {
  if (token_rows_.count(t)) return;
  SpeakerLayout lay(config_);
  int row = static_cast<int>(token_rows_.size());
  token_rows_.emplace(t, row);
  params_.resize(lay.row_offset(row) + lay.E);
  // Row init depends only on (seed, token): rows are identical no matter when
  // the token first appears in a run.
  std::mt19937_64 rng(
      splitmix64(embed_seed_ ^ (0x9e3779b97f4a7c15ULL * (std::uint64_t)(t + 1))));
  fill_uniform(params_.data() + lay.row_offset(row), lay.E, config_.init_scale,
               rng);
}

void SpeakerPolicy::register_tokens(const Vocabulary& vocab) {
  for (Token t : vocab.tokens()) register_token(t);
}

bool SpeakerPolicy::knows_token(Token t) const {
  return token_rows_.count(t) != 0;
}

SpeakerPolicy SpeakerPolicy::restore(const AgentConfig& config,
                                     std::uint64_t embed_seed,
                                     std::map<Token, int> rows,
                                     std::vector<double> params) {
  SpeakerLayout lay(config);
  if (params.size() != lay.row_offset(static_cast<int>(rows.size()))) {
    throw std::invalid_argument(
        "speaker parameter vector does not match the token table");
  }
  std::vector<bool> seen(rows.size(), false);
  for (const auto& [token, row] : rows) {
    (void)token;
    if (row < 0 || row >= static_cast<int>(rows.size()) || seen[row]) {
      throw std::invalid_argument("speaker token table is not a dense row map");
    }
    seen[row] = true;
  }
  SpeakerPolicy p(config, 0);
  p.embed_seed_ = embed_seed;
  p.params_ = std::move(params);
  p.token_rows_ = std::move(rows);
  return p;
}

ListenerPolicy::ListenerPolicy(const AgentConfig& config, std::uint64_t seed)
    : config_(config) {
  ListenerLayout lay(config_);
  params_.resize(lay.total);
  std::mt19937_64 rng(splitmix64(seed ^ 0xa3c59ac2f0ffd14bULL));
  fill_uniform(params_.data(), params_.size(), config_.init_scale, rng);
}

ListenerPolicy ListenerPolicy::restore(const AgentConfig& config,
                                       std::vector<double> params) {
  ListenerLayout lay(config);
  if (params.size() != lay.total) {
    throw std::invalid_argument("listener parameter vector has the wrong size");
  }
  ListenerPolicy p(config, 0);
  p.params_ = std::move(params);
  return p;
}

// --- inference -------------------------------------------------------------------

SpeakResult speak(const SpeakerPolicy& policy, const std::vector<Token>& tokens,
                  std::mt19937_64& rng, Mode mode) {
  if (tokens.empty()) {
    throw std::invalid_argument("cannot speak an empty token sequence");
  }
  SpeakerNet net(policy);
  LstmTrace tr;
  tr.resize(net.lay.E, net.lay.H, static_cast<int>(tokens.size()));
  net.load_inputs(tokens, tr.X);
  lstm_forward(net.Wx(), net.Wh(), net.b(), tr);

  SpeakResult result;
  result.symbols.resize(tokens.size());
  result.log_probs.resize(tokens.size());
  for (size_t t = 0; t < tokens.size(); ++t) {
    VectorXd logits = net.Wo() * tr.Hs.col(t) + net.bo();
    VectorXd p = softmax(logits);
    int sym = mode == Mode::Sample ? sample_index(p, rng) : argmax_index(p);
    result.symbols[t] = sym;
    result.log_probs[t] = std::log(std::max(p(sym), 1e-300));
  }
  return result;
}

ListenResult listen(const ListenerPolicy& policy,
                    const std::vector<int>& message, std::mt19937_64& rng,
                    Mode mode) {
  if (message.empty()) {
    throw std::invalid_argument("cannot listen to an empty message");
  }
  ListenerNet net(policy);
  LstmTrace tr;
  tr.resize(net.lay.E, net.lay.H, static_cast<int>(message.size()));
  net.load_inputs(message, tr.X);
  lstm_forward(net.Wx(), net.Wh(), net.b(), tr);

  VectorXd logits =
      net.Wc() * tr.Hs.col(static_cast<int>(message.size()) - 1) + net.bc();
  VectorXd p = softmax(logits);
  int idx = mode == Mode::Sample ? sample_index(p, rng) : argmax_index(p);
  ListenResult result;
  result.guess = idx + 1;
  result.log_prob = std::log(std::max(p(idx), 1e-300));
  result.entropy = entropy_of(p);
  return result;
}

std::vector<std::vector<double>> speaker_step_distributions(
    const SpeakerPolicy& policy, const std::vector<Token>& tokens) {
  SpeakerNet net(policy);
  LstmTrace tr;
  tr.resize(net.lay.E, net.lay.H, static_cast<int>(tokens.size()));
  net.load_inputs(tokens, tr.X);
  lstm_forward(net.Wx(), net.Wh(), net.b(), tr);
  std::vector<std::vector<double>> out;
  for (size_t t = 0; t < tokens.size(); ++t) {
    VectorXd p = softmax(net.Wo() * tr.Hs.col(t) + net.bo());
    out.emplace_back(p.data(), p.data() + p.size());
  }
  return out;
}

std::vector<double> listener_distribution(const ListenerPolicy& policy,
                                          const std::vector<int>& message) {
  ListenerNet net(policy);
  LstmTrace tr;
  tr.resize(net.lay.E, net.lay.H, static_cast<int>(message.size()));
  net.load_inputs(message, tr.X);
  lstm_forward(net.Wx(), net.Wh(), net.b(), tr);
  VectorXd p = softmax(
      net.Wc() * tr.Hs.col(static_cast<int>(message.size()) - 1) + net.bc());
  return std::vector<double>(p.data(), p.data() + p.size());
}

// --- episodes -------------------------------------------------------------------

EpisodeBatch play_batch(const SpeakerPolicy& speaker,
                        const ListenerPolicy& listener, const Lexicon& lexicon,
                        const NeedDistribution& dist, std::mt19937_64& rng) {
  if (dist.n_max() > lexicon.n_max()) {
    throw std::invalid_argument(
        "need distribution extends beyond the lexicon");
  }
  if (dist.n_max() > listener.config().numeral_range) {
    throw std::invalid_argument(
        "need distribution extends beyond the listener's numeral range");
  }
  Vocabulary vocab(lexicon.dm());
  const int B = speaker.config().batch_size;

  EpisodeBatch batch;
  batch.targets.reserve(B);
  for (int i = 0; i < B; ++i) {
    int n = dist.sample(rng);
    std::vector<Token> tokens = tokenize(lexicon.entry(n), vocab);
    SpeakResult said = speak(speaker, tokens, rng, Mode::Sample);
    ListenResult heard = listen(listener, said.symbols, rng, Mode::Sample);
    batch.targets.push_back(n);
    batch.expressions.push_back(std::move(tokens));
    batch.messages.push_back(said.symbols);
    batch.guesses.push_back(heard.guess);
    batch.rewards.push_back(heard.guess == n ? 1.0 : 0.0);
    batch.speaker_log_probs.push_back(std::move(said.log_probs));
    batch.listener_log_probs.push_back(heard.log_prob);
    batch.listener_entropies.push_back(heard.entropy);
  }
  return batch;
}

// --- learning -------------------------------------------------------------------

void AdamState::fit(size_t n) {
  if (first_moment.size() < n) {
    first_moment.resize(n, 0.0);
    second_moment.resize(n, 0.0);
  }
}

namespace {

double batch_mean_reward(const EpisodeBatch& batch) {
  double sum = 0.0;
  for (double r : batch.rewards) sum += r;
  return batch.rewards.empty() ? 0.0 : sum / batch.rewards.size();
}

// One baseline per item; TargetMean falls back to the global leave-one-out
// mean when an item's target is unique in the batch.
std::vector<double> baselines_for(const EpisodeBatch& batch,
                                  BaselineMode mode) {
  const size_t B = batch.rewards.size();
  std::vector<double> out(B, 0.0);
  if (mode == BaselineMode::BatchMean) {
    std::fill(out.begin(), out.end(), batch_mean_reward(batch));
    return out;
  }
  double total = 0.0;
  std::map<int, std::pair<double, int>> by_target;  // sum, count
  for (size_t i = 0; i < B; ++i) {
    total += batch.rewards[i];
    auto& [sum, count] = by_target[batch.targets[i]];
    sum += batch.rewards[i];
    count += 1;
  }
  for (size_t i = 0; i < B; ++i) {
    const auto& [sum, count] = by_target[batch.targets[i]];
    if (count > 1) {
      out[i] = (sum - batch.rewards[i]) / (count - 1);
    } else if (B > 1) {
      out[i] = (total - batch.rewards[i]) / (static_cast<double>(B) - 1);
    }
  }
  return out;
}

void adam_step(std::vector<double>& params, const std::vector<double>& grads,
               AdamState& state, double lr) {
  state.fit(params.size());
  state.step += 1;
  double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (size_t i = 0; i < params.size(); ++i) {
    double g = grads[i];
    state.first_moment[i] =
        state.beta1 * state.first_moment[i] + (1.0 - state.beta1) * g;
    state.second_moment[i] =
        state.beta2 * state.second_moment[i] + (1.0 - state.beta2) * g * g;
    double mhat = state.first_moment[i] / bc1;
    double vhat = state.second_moment[i] / bc2;
    params[i] -= lr * mhat / (std::sqrt(vhat) + state.epsilon);
  }
}

double norm_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

Gradients reinforce_gradients(const SpeakerPolicy& speaker,
                              const ListenerPolicy& listener,
                              const EpisodeBatch& batch) {
  const size_t B = batch.targets.size();
  if (B == 0) {
    throw std::invalid_argument("empty episode batch");
  }
  const double inv_b = 1.0 / static_cast<double>(B);

  Gradients out;
  out.speaker.assign(speaker.parameters().size(), 0.0);
  out.listener.assign(listener.parameters().size(), 0.0);
  out.diagnostics.mean_reward = batch_mean_reward(batch);

  // Speaker: policy-gradient surrogate over the per-step symbol choices.
  {
    const std::vector<double> baselines =
        baselines_for(batch, speaker.config().baseline);
    out.diagnostics.baseline =
        std::accumulate(baselines.begin(), baselines.end(), 0.0) / B;
    SpeakerNet net(speaker);
    const auto& lay = net.lay;
    Map<MatrixXd> gWx(out.speaker.data() + lay.wx, 4 * lay.H, lay.E);
    Map<MatrixXd> gWh(out.speaker.data() + lay.wh, 4 * lay.H, lay.H);
    Map<VectorXd> gb(out.speaker.data() + lay.b, 4 * lay.H);
    Map<MatrixXd> gWo(out.speaker.data() + lay.wo, lay.A, lay.H);
    Map<VectorXd> gbo(out.speaker.data() + lay.bo, lay.A);
    const double beta =
        speaker.config().speaker_entropy ? speaker.config().entropy_coefficient
                                         : 0.0;

    double loss = 0.0;
    LstmTrace tr;
    MatrixXd dH, dX;
    for (size_t i = 0; i < B; ++i) {
      const double adv = batch.rewards[i] - baselines[i];
      const auto& tokens = batch.expressions[i];
      const auto& message = batch.messages[i];
      const int L = static_cast<int>(tokens.size());
      tr.resize(lay.E, lay.H, L);
      net.load_inputs(tokens, tr.X);
      lstm_forward(net.Wx(), net.Wh(), net.b(), tr);

      dH.setZero(lay.H, L);
      for (int t = 0; t < L; ++t) {
        VectorXd logits = net.Wo() * tr.Hs.col(t) + net.bo();
        VectorXd p = softmax(logits);
        int a = message[t];
        loss -= adv * inv_b * std::log(std::max(p(a), 1e-300));
        VectorXd dlogits = adv * inv_b * p;
        dlogits(a) -= adv * inv_b;
        if (beta > 0.0) {
          double h = entropy_of(p);
          loss -= beta * inv_b * h;
          for (int k = 0; k < p.size(); ++k) {
            dlogits(k) += beta * inv_b * p(k) *
                          (std::log(std::max(p(k), 1e-300)) + h);
          }
        }
        gWo.noalias() += dlogits * tr.Hs.col(t).transpose();
        gbo += dlogits;
        dH.col(t).noalias() += net.Wo().transpose() * dlogits;
      }
      lstm_backward(net.Wx(), net.Wh(), tr, dH, gWx, gWh, gb, dX);

      // Input gradients land on the embedding rows of the tokens spoken.
      for (int t = 0; t < L; ++t) {
        int row = speaker.token_rows().at(tokens[t]);
        Map<VectorXd> grow(out.speaker.data() + lay.row_offset(row), lay.E);
        grow += dX.col(t);
      }
    }
    out.diagnostics.speaker_loss = loss;
  }

  // Listener: surrogate over the final classification plus entropy bonus.
  {
    const std::vector<double> baselines =
        baselines_for(batch, listener.config().baseline);
    ListenerNet net(listener);
    const auto& lay = net.lay;
    Map<MatrixXd> gEmb(out.listener.data() + lay.emb, lay.E, lay.A);
    Map<MatrixXd> gWx(out.listener.data() + lay.wx, 4 * lay.H, lay.E);
    Map<MatrixXd> gWh(out.listener.data() + lay.wh, 4 * lay.H, lay.H);
    Map<VectorXd> gb(out.listener.data() + lay.b, 4 * lay.H);
    Map<MatrixXd> gWc(out.listener.data() + lay.wc, lay.R, lay.H);
    Map<VectorXd> gbc(out.listener.data() + lay.bc, lay.R);
    const double beta = listener.config().entropy_coefficient;

    double loss = 0.0;
    double entropy_sum = 0.0;
    LstmTrace tr;
    MatrixXd dH, dX;
    for (size_t i = 0; i < B; ++i) {
      const double adv = batch.rewards[i] - baselines[i];
      const auto& message = batch.messages[i];
      const int L = static_cast<int>(message.size());
      tr.resize(lay.E, lay.H, L);
      net.load_inputs(message, tr.X);
      lstm_forward(net.Wx(), net.Wh(), net.b(), tr);

      VectorXd logits = net.Wc() * tr.Hs.col(L - 1) + net.bc();
      VectorXd p = softmax(logits);
      int cls = batch.guesses[i] - 1;
      double h = entropy_of(p);
      entropy_sum += h;
      loss -= adv * inv_b * std::log(std::max(p(cls), 1e-300));
      loss -= beta * inv_b * h;

      VectorXd dlogits = adv * inv_b * p;
      dlogits(cls) -= adv * inv_b;
      for (int k = 0; k < p.size(); ++k) {
        dlogits(k) +=
            beta * inv_b * p(k) * (std::log(std::max(p(k), 1e-300)) + h);
      }
      gWc.noalias() += dlogits * tr.Hs.col(L - 1).transpose();
      gbc += dlogits;
      dH.setZero(lay.H, L);
      dH.col(L - 1).noalias() = net.Wc().transpose() * dlogits;
      lstm_backward(net.Wx(), net.Wh(), tr, dH, gWx, gWh, gb, dX);

      for (int t = 0; t < L; ++t) {
        gEmb.col(message[t]) += dX.col(t);
      }
    }
    out.diagnostics.listener_loss = loss;
    out.diagnostics.listener_entropy = entropy_sum * inv_b;
  }

  out.diagnostics.speaker_grad_norm = norm_of(out.speaker);
  out.diagnostics.listener_grad_norm = norm_of(out.listener);
  if (!std::isfinite(out.diagnostics.speaker_grad_norm) ||
      !std::isfinite(out.diagnostics.listener_grad_norm)) {
    throw std::runtime_error(
        "non-finite policy gradient (mean reward " +
        std::to_string(out.diagnostics.mean_reward) + ", speaker norm " +
        std::to_string(out.diagnostics.speaker_grad_norm) +
        ", listener norm " +
        std::to_string(out.diagnostics.listener_grad_norm) + ")");
  }
  return out;
}

double speaker_surrogate_loss(const SpeakerPolicy& speaker,
                              const EpisodeBatch& batch) {
  const size_t B = batch.targets.size();
  const std::vector<double> baselines =
      baselines_for(batch, speaker.config().baseline);
  const double inv_b = 1.0 / static_cast<double>(B);
  const double beta = speaker.config().speaker_entropy
                          ? speaker.config().entropy_coefficient
                          : 0.0;
  SpeakerNet net(speaker);
  LstmTrace tr;
  double loss = 0.0;
  for (size_t i = 0; i < B; ++i) {
    const double adv = batch.rewards[i] - baselines[i];
    const auto& tokens = batch.expressions[i];
    tr.resize(net.lay.E, net.lay.H, static_cast<int>(tokens.size()));
    net.load_inputs(tokens, tr.X);
    lstm_forward(net.Wx(), net.Wh(), net.b(), tr);
    for (size_t t = 0; t < tokens.size(); ++t) {
      VectorXd p = softmax(net.Wo() * tr.Hs.col(t) + net.bo());
      loss -= adv * inv_b *
              std::log(std::max(p(batch.messages[i][t]), 1e-300));
      if (beta > 0.0) loss -= beta * inv_b * entropy_of(p);
    }
  }
  return loss;
}

double listener_surrogate_loss(const ListenerPolicy& listener,
                               const EpisodeBatch& batch) {
  const size_t B = batch.targets.size();
  const std::vector<double> baselines =
      baselines_for(batch, listener.config().baseline);
  const double inv_b = 1.0 / static_cast<double>(B);
  const double beta = listener.config().entropy_coefficient;
  ListenerNet net(listener);
  LstmTrace tr;
  double loss = 0.0;
  for (size_t i = 0; i < B; ++i) {
    const double adv = batch.rewards[i] - baselines[i];
    const auto& message = batch.messages[i];
    const int L = static_cast<int>(message.size());
    tr.resize(net.lay.E, net.lay.H, L);
    net.load_inputs(message, tr.X);
    lstm_forward(net.Wx(), net.Wh(), net.b(), tr);
    VectorXd p = softmax(net.Wc() * tr.Hs.col(L - 1) + net.bc());
    loss -= adv * inv_b *
            std::log(std::max(p(batch.guesses[i] - 1), 1e-300));
    loss -= beta * inv_b * entropy_of(p);
  }
  return loss;
}

UpdateDiagnostics reinforce_update(SpeakerPolicy& speaker,
                                   ListenerPolicy& listener,
                                   const EpisodeBatch& batch,
                                   AdamState& speaker_opt,
                                   AdamState& listener_opt) {
  Gradients g = reinforce_gradients(speaker, listener, batch);
  adam_step(speaker.parameters(), g.speaker, speaker_opt,
            speaker.config().learning_rate);
  adam_step(listener.parameters(), g.listener, listener_opt,
            listener.config().learning_rate);
  return g.diagnostics;
}

double pretrain(SpeakerPolicy& speaker, ListenerPolicy& listener,
                AdamState& speaker_opt, AdamState& listener_opt,
                const Lexicon& lexicon, const NeedDistribution& dist,
                int epochs, std::mt19937_64& rng) {
  for (int e = 0; e < epochs; ++e) {
    EpisodeBatch batch = play_batch(speaker, listener, lexicon, dist, rng);
    reinforce_update(speaker, listener, batch, speaker_opt, listener_opt);
  }
  return greedy_accuracy(speaker, listener, lexicon, dist);
}

double greedy_accuracy(const SpeakerPolicy& speaker,
                       const ListenerPolicy& listener, const Lexicon& lexicon,
                       const NeedDistribution& dist) {
  if (dist.n_max() > lexicon.n_max()) {
    throw std::invalid_argument(
        "need distribution extends beyond the lexicon");
  }
  Vocabulary vocab(lexicon.dm());
  std::mt19937_64 unused(0);  // greedy mode never draws
  double acc = 0.0;
  for (int n = 1; n <= dist.n_max(); ++n) {
    std::vector<Token> tokens = tokenize(lexicon.entry(n), vocab);
    SpeakResult said = speak(speaker, tokens, unused, Mode::Greedy);
    ListenResult heard = listen(listener, said.symbols, unused, Mode::Greedy);
    if (heard.guess == n) acc += dist.probability(n);
  }
  return acc;
}

}  // namespace recnum
