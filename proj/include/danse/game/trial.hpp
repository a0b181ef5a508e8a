#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "danse/game/fingers.hpp"
#include "danse/game/target.hpp"

namespace danse::game {

enum class Outcome { Hit, Timeout };

/// One crown prompt plus target, as recorded when it ends. Times are session
/// milliseconds of the instants involved (tick starts), so they are exact
/// multiples of the tick period up to rounding to whole ms.
struct TrialRecord {
  std::string game;
  std::size_t game_index = 0;
  Finger finger = Finger::Thumb;
  std::int64_t prompt_t_ms = 0;
  std::int64_t crown_tap_t_ms = 0;
  Outcome outcome = Outcome::Timeout;
  std::int64_t end_t_ms = 0;  // hit time for hits
  std::optional<touch::Point> hit_position;
  /// Active-play time from target display to hit; hits only.
  std::optional<std::int64_t> reaction_ms;
  touch::Point target_center;
  double target_radius = 0.0;
  Motion target_motion;
  std::int64_t unexpected_contacts = 0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

std::string_view to_string(Outcome outcome);

nlohmann::json to_json(const TrialRecord& record);
TrialRecord trial_from_json(const nlohmann::json& document);

}  // namespace danse::game
