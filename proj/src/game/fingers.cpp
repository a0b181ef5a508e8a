#include "danse/game/fingers.hpp"

namespace danse::game {

namespace {
constexpr std::array<std::string_view, 5> kNames{"thumb", "index", "middle", "ring", "little"};
constexpr std::uint64_t kFingerStream = 1;
}  // namespace

std::string_view to_string(Finger finger) { return kNames[static_cast<std::size_t>(finger)]; }

std::optional<Finger> parse_finger(std::string_view text) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == text) return kAllFingers[i];
  }
  return std::nullopt;
}

FingerScheduler::FingerScheduler(std::uint64_t seed) : rng_(seed, kFingerStream) {}

std::pair<Finger, FingerScheduler> next_finger(FingerScheduler s) {
  if (s.position_ >= s.cycle_.size()) {
    do {
      s.cycle_ = kAllFingers;
      for (std::uint32_t i = 4; i > 0; --i) std::swap(s.cycle_[i], s.cycle_[s.rng_.below(i + 1)]);
    } while (s.last_ && s.cycle_[0] == *s.last_);
    s.position_ = 0;
  }
  Finger f = s.cycle_[s.position_++];
  s.last_ = f;
  return {f, s};
}

}  // namespace danse::game
