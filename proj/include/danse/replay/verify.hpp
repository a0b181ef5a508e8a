#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "danse/game/config.hpp"
#include "danse/touch/touch_sample.hpp"

namespace danse::replay {

struct VerifyOptions {
  int runs = 2;
  /// Harness self-check: every run after the first draws its seed from the
  /// wall clock, which must make verification fail.
  bool mutant_wallclock_seed = false;
};

struct Divergence {
  int run = 0;
  std::uint64_t instant = 0;  // first instant whose line differs
  std::string expected;       // empty when the reference ended earlier
  std::string actual;
};

struct VerifyReport {
  int runs = 0;
  std::string reference_digest;
  std::vector<std::string> digests;
  std::optional<Divergence> divergence;
  bool identical() const { return !divergence.has_value(); }
};

/// Replays the trace `runs` times, alternating with and without the
/// telemetry observer, and compares every trace line with the first run.
VerifyReport verify(const game::SessionConfig& config, const std::vector<touch::TouchSample>& samples,
                    const VerifyOptions& options);

nlohmann::json to_json(const VerifyReport& report);

}  // namespace danse::replay
