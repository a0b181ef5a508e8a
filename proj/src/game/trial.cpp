#include "danse/game/trial.hpp"

#include <stdexcept>

namespace danse::game {

using nlohmann::json;

std::string_view to_string(Outcome outcome) { return outcome == Outcome::Hit ? "hit" : "timeout"; }

json to_json(const TrialRecord& r) {
  json j{{"game", r.game},
         {"game_index", r.game_index},
         {"finger", std::string(to_string(r.finger))},
         {"prompt_t_ms", r.prompt_t_ms},
         {"crown_tap_t_ms", r.crown_tap_t_ms},
         {"outcome", std::string(to_string(r.outcome))},
         {"end_t_ms", r.end_t_ms},
         {"target",
          {{"x", r.target_center.x},
           {"y", r.target_center.y},
           {"radius", r.target_radius},
           {"motion", to_json(r.target_motion)}}},
         {"unexpected_contacts", r.unexpected_contacts}};
  if (r.hit_position) j["hit"] = {{"t_ms", r.end_t_ms}, {"x", r.hit_position->x}, {"y", r.hit_position->y}};
  if (r.reaction_ms) j["reaction_ms"] = *r.reaction_ms;
  return j;
}

namespace {

Motion motion_from_json(const json& m) {
  const std::string kind = m.at("kind").get<std::string>();
  if (kind == "static") return StaticMotion{};
  if (kind == "linear") {
    return LinearMotion{m.at("velocity").at(0).get<double>(), m.at("velocity").at(1).get<double>(),
                        m.at("bounce").get<bool>()};
  }
  if (kind == "circular") {
    return CircularMotion{m.at("radius").get<double>(), m.at("angular_velocity").get<double>(),
                          m.at("phase").get<double>()};
  }
  throw std::invalid_argument("unknown motion kind " + kind);
}

}  // namespace

TrialRecord trial_from_json(const json& j) {
  TrialRecord r;
  r.game = j.at("game").get<std::string>();
  r.game_index = j.at("game_index").get<std::size_t>();
  auto finger = parse_finger(j.at("finger").get<std::string>());
  if (!finger) throw std::invalid_argument("unknown finger");
  r.finger = *finger;
  r.prompt_t_ms = j.at("prompt_t_ms").get<std::int64_t>();
  r.crown_tap_t_ms = j.at("crown_tap_t_ms").get<std::int64_t>();
  const std::string outcome = j.at("outcome").get<std::string>();
  if (outcome != "hit" && outcome != "timeout") throw std::invalid_argument("unknown outcome " + outcome);
  r.outcome = outcome == "hit" ? Outcome::Hit : Outcome::Timeout;
  r.end_t_ms = j.at("end_t_ms").get<std::int64_t>();
  if (j.contains("hit")) r.hit_position = touch::Point{j["hit"].at("x").get<double>(), j["hit"].at("y").get<double>()};
  if (j.contains("reaction_ms")) r.reaction_ms = j["reaction_ms"].get<std::int64_t>();
  const json& t = j.at("target");
  r.target_center = {t.at("x").get<double>(), t.at("y").get<double>()};
  r.target_radius = t.at("radius").get<double>();
  r.target_motion = motion_from_json(t.at("motion"));
  r.unexpected_contacts = j.at("unexpected_contacts").get<std::int64_t>();
  return r;
}

}  // namespace danse::game
