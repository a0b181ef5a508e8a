#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace danse::touch {

enum class Phase { Down, Move, Up, Cancel };

std::string_view to_string(Phase phase);
std::optional<Phase> parse_phase(std::string_view text);

/// One pointer event, coordinates normalized to the game surface.
struct TouchSample {
  std::int64_t t_ms = 0;
  int pointer_id = 0;
  Phase phase = Phase::Down;
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const TouchSample&, const TouchSample&) = default;
};

/// Malformed trace input. `line` is 1-based, 0 when not tied to a line.
class TraceError : public std::runtime_error {
 public:
  TraceError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// `{"t_ms":1234,"id":0,"phase":"down","x":0.41,"y":0.77}`
std::string to_json_line(const TouchSample& sample);
TouchSample parse_sample(std::string_view line, std::size_t line_number = 0);

/// Reads a JSON Lines trace. Blank lines are skipped; timestamps must not
/// decrease.
std::vector<TouchSample> read_trace(std::istream& in);
void write_trace(std::ostream& out, const std::vector<TouchSample>& samples);

}  // namespace danse::touch
