#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "danse/game/config.hpp"
#include "danse/touch/touch_sample.hpp"

namespace danse::replay {

/// A simulated child, for generating traces.
struct BehaviorModel {
  enum class Latency { Fixed, Uniform };
  Latency latency = Latency::Fixed;
  std::int64_t latency_min_ms = 300;  // the fixed value for Fixed
  std::int64_t latency_max_ms = 300;
  double hit_probability = 1.0;
  double miss_scatter = 0.05;  // extra distance beyond the rim for misses
  double drop_probability_per_minute = 0.0;
  std::int64_t drop_ms = 1500;
  std::uint64_t seed = 1;
};

class ModelError : public std::invalid_argument {
 public:
  ModelError(const std::string& path, const std::string& message)
      : std::invalid_argument(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// JSON form:
/// `{"latency":{"kind":"fixed","ms":300} | {"kind":"uniform","min_ms":a,"max_ms":b},
///   "accuracy":{"hit_probability":p,"miss_scatter":r},
///   "hold":{"drop_probability_per_minute":q,"drop_ms":d}, "seed":s}`.
/// Every section is optional; omitted values keep the perfect player's.
BehaviorModel load_model(std::string_view bytes);
BehaviorModel model_from_json(const nlohmann::json& document);
nlohmann::json to_json(const BehaviorModel& model);

/// Plays a session against a live machine and returns the touches it made.
/// The player holds both signs from the start, taps the crown and then the
/// target after a sampled latency, retries after misses, drops a sign finger
/// at the model's rate, and re-plans whenever the game pauses or resumes.
std::vector<touch::TouchSample> synth_trace(const game::SessionConfig& config, const BehaviorModel& model);

}  // namespace danse::replay
