#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "danse/game/config.hpp"
#include "danse/replay/replay.hpp"
#include "danse/touch/touch_sample.hpp"

namespace danse::replay {

struct BatchJob {
  game::SessionConfig config;
  std::shared_ptr<const std::vector<touch::TouchSample>> samples;
  bool attach_observer = true;
};

struct BatchOutcome {
  std::optional<ReplayResult> result;
  std::string error;  // set when the replay threw
};

/// Reference: one job after another on the calling thread.
std::vector<BatchOutcome> run_serial(const std::vector<BatchJob>& jobs);

/// Same results, jobs spread over OpenMP threads (0 = runtime default).
std::vector<BatchOutcome> run_parallel(const std::vector<BatchJob>& jobs, int threads = 0);

}  // namespace danse::replay
