#pragma once

#include <cstdint>

namespace danse::game {

/// round(numerator / denominator), ties to even. Exact for non-negative
/// integers; negative numerators are rejected by the callers.
std::int64_t divide_round_even(std::int64_t numerator, std::int64_t denominator);

/// Trace milliseconds to the tick (instant index) that consumes them.
inline std::int64_t ms_to_tick(std::int64_t t_ms, int tick_hz) {
  return divide_round_even(t_ms * tick_hz, 1000);
}

/// Start time of a tick in whole milliseconds.
inline std::int64_t tick_to_ms(std::int64_t tick, int tick_hz) { return divide_round_even(tick * 1000, tick_hz); }

}  // namespace danse::game
