#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "danse/game/random.hpp"

namespace danse::game {

enum class Finger { Thumb, Index, Middle, Ring, Little };

inline constexpr std::array<Finger, 5> kAllFingers{Finger::Thumb, Finger::Index, Finger::Middle, Finger::Ring,
                                                  Finger::Little};

std::string_view to_string(Finger finger);
std::optional<Finger> parse_finger(std::string_view text);

/// Draws fingers in cycles: each cycle is a uniform permutation of the five
/// fingers, redrawn when it would start with the finger that ended the
/// previous cycle.
class FingerScheduler {
 public:
  explicit FingerScheduler(std::uint64_t seed);

  std::size_t position() const { return position_; }
  const std::array<Finger, 5>& cycle() const { return cycle_; }

  friend bool operator==(const FingerScheduler&, const FingerScheduler&) = default;

 private:
  friend std::pair<Finger, FingerScheduler> next_finger(FingerScheduler scheduler);

  std::array<Finger, 5> cycle_ = kAllFingers;
  std::size_t position_ = 5;  // exhausted: the first draw starts a cycle
  std::optional<Finger> last_;
  Pcg32 rng_;
};

/// Pure: returns the next finger and the advanced scheduler.
std::pair<Finger, FingerScheduler> next_finger(FingerScheduler scheduler);

}  // namespace danse::game
