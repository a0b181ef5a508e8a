#include "danse/game/timebase.hpp"

#include <stdexcept>

namespace danse::game {

std::int64_t divide_round_even(std::int64_t numerator, std::int64_t denominator) {
  if (numerator < 0 || denominator <= 0) throw std::invalid_argument("divide_round_even: negative input");
  std::int64_t q = numerator / denominator;
  std::int64_t twice_r = 2 * (numerator % denominator);
  if (twice_r > denominator || (twice_r == denominator && q % 2 == 1)) ++q;
  return q;
}

}  // namespace danse::game
