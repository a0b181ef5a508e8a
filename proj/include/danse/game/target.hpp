#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include <json.hpp>

#include "danse/game/random.hpp"
#include "danse/touch/zones.hpp"

namespace danse::game {

struct StaticMotion {
  friend bool operator==(const StaticMotion&, const StaticMotion&) = default;
};

/// Constant velocity in normalized units per second.
struct LinearMotion {
  double vx = 0.0;
  double vy = 0.0;
  bool bounce = true;  // false: stops at the wall
  friend bool operator==(const LinearMotion&, const LinearMotion&) = default;
};

/// Orbit around the spawn point; angular velocity in radians per second.
struct CircularMotion {
  double radius = 0.0;
  double angular_velocity = 0.0;
  double phase = 0.0;
  friend bool operator==(const CircularMotion&, const CircularMotion&) = default;
};

using Motion = std::variant<StaticMotion, LinearMotion, CircularMotion>;

nlohmann::json to_json(const Motion& motion);

/// Largest distance the disc center moves away from the spawn point, which
/// the spawn area must leave free on every side.
double motion_reach(const Motion& motion);

struct Target {
  touch::Point center;  // spawn point, orbit center for circular motion
  double radius = 0.0;
  Motion motion;
  int tick_hz = 60;
  /// Region the disc center must stay in: the play area inset by the radius.
  touch::Rect bounds;
  std::uint64_t spawn_instant = 0;

  friend bool operator==(const Target&, const Target&) = default;
};

/// Center uniform over the play area inset by radius and motion reach,
/// redrawn while closer than 2 * radius to the previous center. After 64
/// rejected draws the farthest candidate is kept.
Target spawn_target(double radius, const Motion& motion, int tick_hz, const touch::Rect& play_area,
                    const std::optional<Target>& previous, Pcg32& rng, std::uint64_t spawn_instant);

inline constexpr int kMaxSpawnAttempts = 64;

/// Disc center `t_ticks` active ticks after the spawn.
touch::Point trajectory_position(const Target& target, std::int64_t t_ticks);

enum class HitResult { Hit, Miss };

/// Closed disc test against the position at `t_ticks`.
HitResult target_hit_test(const Target& target, std::int64_t t_ticks, touch::Point contact);

/// clamp(active / duration, 0, 1).
double progress_fraction(std::int64_t active_ticks, std::int64_t duration_ticks);

}  // namespace danse::game
