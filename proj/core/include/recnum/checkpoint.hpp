// checkpoint.hpp — agent checkpoints for resumed runs.  Binary layout:
//   bytes 0..3   magic "RNAG"
//   bytes 4..7   format version (uint32, little endian)
//   bytes 8..11  length L of the JSON metadata (uint32, little endian)
//   L bytes      JSON: both agent configs, the speaker token table, array
//                sizes and optimizer step counters
//   then         raw little-endian doubles: speaker params, listener params,
//                speaker Adam moments (m then v), listener Adam moments
// Loading restores byte-identical training state on the same platform.

#ifndef RECNUM_CHECKPOINT_HPP
#define RECNUM_CHECKPOINT_HPP

#include <string>

#include "recnum/agents.hpp"

namespace recnum {

struct AgentCheckpoint {
  AgentConfig config;
  SpeakerPolicy speaker;
  ListenerPolicy listener;
  AdamState speaker_opt;
  AdamState listener_opt;
};

void save_agents(const std::string& path, const SpeakerPolicy& speaker,
                 const ListenerPolicy& listener, const AdamState& speaker_opt,
                 const AdamState& listener_opt);

AgentCheckpoint load_agents(const std::string& path);

}  // namespace recnum

#endif  // RECNUM_CHECKPOINT_HPP
