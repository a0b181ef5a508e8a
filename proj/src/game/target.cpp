#include "danse/game/target.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace danse::game {

using touch::Point;
using touch::Rect;

nlohmann::json to_json(const Motion& motion) {
  return std::visit(
      [](const auto& m) -> nlohmann::json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, StaticMotion>) {
          return {{"kind", "static"}};
        } else if constexpr (std::is_same_v<T, LinearMotion>) {
          return {{"kind", "linear"}, {"velocity", {m.vx, m.vy}}, {"bounce", m.bounce}};
        } else {
          return {{"kind", "circular"},
                  {"radius", m.radius},
                  {"angular_velocity", m.angular_velocity},
                  {"phase", m.phase}};
        }
      },
      motion);
}

double motion_reach(const Motion& motion) {
  if (const auto* c = std::get_if<CircularMotion>(&motion)) return c->radius;
  return 0.0;
}

namespace {

Rect inset(const Rect& r, double by) { return {r.x0 + by, r.y0 + by, r.x1 - by, r.y1 - by}; }

// Position on [lo, hi] after travelling `offset` from `start`, bouncing
// specularly off both ends.
double reflect(double start, double offset, double lo, double hi) {
  const double span = hi - lo;
  if (span <= 0) return lo;
  double u = std::fmod(start - lo + offset, 2 * span);
  if (u < 0) u += 2 * span;
  double p = u <= span ? lo + u : lo + (2 * span - u);
  return std::clamp(p, lo, hi);
}

}  // namespace

Target spawn_target(double radius, const Motion& motion, int tick_hz, const Rect& play_area,
                    const std::optional<Target>& previous, Pcg32& rng, std::uint64_t spawn_instant) {
  const Rect bounds = inset(play_area, radius);
  const Rect spawn_area = inset(bounds, motion_reach(motion));
  if (spawn_area.x0 > spawn_area.x1 || spawn_area.y0 > spawn_area.y1) {
    throw std::invalid_argument("target does not fit inside the play area");
  }
  Point best;
  double best_distance = -1;
  for (int attempt = 0; attempt < kMaxSpawnAttempts; ++attempt) {
    Point c{spawn_area.x0 + rng.unit() * spawn_area.width(), spawn_area.y0 + rng.unit() * spawn_area.height()};
    if (!previous) {
      best = c;
      break;
    }
    double d = touch::distance(c, previous->center);
    if (d >= 2 * radius) {
      best = c;
      break;
    }
    if (d > best_distance) {
      best_distance = d;
      best = c;
    }
  }
  return Target{best, radius, motion, tick_hz, bounds, spawn_instant};
}

Point trajectory_position(const Target& target, std::int64_t t_ticks) {
  const double seconds = static_cast<double>(t_ticks) / target.tick_hz;
  const Rect& b = target.bounds;
  if (const auto* m = std::get_if<LinearMotion>(&target.motion)) {
    if (m->bounce) {
      return {reflect(target.center.x, m->vx * seconds, b.x0, b.x1),
              reflect(target.center.y, m->vy * seconds, b.y0, b.y1)};
    }
    return {std::clamp(target.center.x + m->vx * seconds, b.x0, b.x1),
            std::clamp(target.center.y + m->vy * seconds, b.y0, b.y1)};
  }
  if (const auto* m = std::get_if<CircularMotion>(&target.motion)) {
    const double theta = m->phase + m->angular_velocity * seconds;
    return {target.center.x + m->radius * std::cos(theta), target.center.y + m->radius * std::sin(theta)};
  }
  return target.center;
}

HitResult target_hit_test(const Target& target, std::int64_t t_ticks, Point contact) {
  return touch::distance(contact, trajectory_position(target, t_ticks)) <= target.radius ? HitResult::Hit
                                                                                         : HitResult::Miss;
}

double progress_fraction(std::int64_t active_ticks, std::int64_t duration_ticks) {
  if (duration_ticks <= 0) throw std::invalid_argument("duration_ticks must be positive");
  return std::clamp(static_cast<double>(active_ticks) / static_cast<double>(duration_ticks), 0.0, 1.0);
}

}  // namespace danse::game
