#include "danse/touch/touch_sample.hpp"

#include <json.hpp>

namespace danse::touch {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Down:
      return "down";
    case Phase::Move:
      return "move";
    case Phase::Up:
      return "up";
    case Phase::Cancel:
      return "cancel";
  }
  return "?";
}

std::optional<Phase> parse_phase(std::string_view text) {
  if (text == "down") return Phase::Down;
  if (text == "move") return Phase::Move;
  if (text == "up") return Phase::Up;
  if (text == "cancel") return Phase::Cancel;
  return std::nullopt;
}

std::string to_json_line(const TouchSample& sample) {
  nlohmann::ordered_json j;
  j["t_ms"] = sample.t_ms;
  j["id"] = sample.pointer_id;
  j["phase"] = to_string(sample.phase);
  j["x"] = sample.x;
  j["y"] = sample.y;
  return j.dump();
}

TouchSample parse_sample(std::string_view line, std::size_t line_number) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw TraceError(line_number, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw TraceError(line_number, "expected a JSON object");
  auto require = [&](const char* key) -> const nlohmann::json& {
    auto it = j.find(key);
    if (it == j.end()) throw TraceError(line_number, std::string("missing field '") + key + "'");
    return *it;
  };
  TouchSample s;
  const auto& t = require("t_ms");
  if (!t.is_number_integer()) throw TraceError(line_number, "'t_ms' must be an integer");
  s.t_ms = t.get<std::int64_t>();
  if (s.t_ms < 0) throw TraceError(line_number, "'t_ms' must not be negative");
  const auto& id = require("id");
  if (!id.is_number_integer()) throw TraceError(line_number, "'id' must be an integer");
  s.pointer_id = id.get<int>();
  const auto& phase = require("phase");
  if (!phase.is_string()) throw TraceError(line_number, "'phase' must be a string");
  auto parsed = parse_phase(phase.get<std::string>());
  if (!parsed) throw TraceError(line_number, "unknown phase '" + phase.get<std::string>() + "'");
  s.phase = *parsed;
  const auto& x = require("x");
  const auto& y = require("y");
  if (!x.is_number() || !y.is_number()) throw TraceError(line_number, "'x' and 'y' must be numbers");
  s.x = x.get<double>();
  s.y = y.get<double>();
  return s;
}

std::vector<TouchSample> read_trace(std::istream& in) {
  std::vector<TouchSample> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    TouchSample s = parse_sample(line, number);
    if (!out.empty() && s.t_ms < out.back().t_ms) throw TraceError(number, "timestamps must not decrease");
    out.push_back(s);
  }
  return out;
}

void write_trace(std::ostream& out, const std::vector<TouchSample>& samples) {
  for (const TouchSample& s : samples) out << to_json_line(s) << '\n';
}

}  // namespace danse::touch
