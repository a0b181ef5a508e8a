#include "danse/game/config.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "danse/game/timebase.hpp"

namespace danse::game {

using nlohmann::json;
using touch::Rect;

namespace {

// Field access with the current path for error messages.
class Reader {
 public:
  Reader(const json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& value() const { return value_; }

  [[noreturn]] void fail(const std::string& message) const { throw ConfigError(path_.empty() ? "$" : path_, message); }

  void expect_object(std::set<std::string> allowed) const {
    if (!value_.is_object()) fail("expected an object");
    for (const auto& [key, v] : value_.items()) {
      if (!allowed.count(key)) child_path_fail(key, "unknown field");
    }
  }

  bool has(const std::string& key) const { return value_.contains(key); }

  Reader at(const std::string& key) const {
    if (!value_.contains(key)) child_path_fail(key, "required field missing");
    return Reader(value_.at(key), join(key));
  }

  Reader index(std::size_t i) const { return Reader(value_.at(i), path_ + "[" + std::to_string(i) + "]"); }

  std::string string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  std::string non_empty_string() const {
    std::string s = string();
    if (s.empty()) fail("must not be empty");
    return s;
  }

  double number() const {
    if (!value_.is_number()) fail("expected a number");
    double d = value_.get<double>();
    if (!std::isfinite(d)) fail("expected a finite number");
    return d;
  }

  double positive() const {
    double d = number();
    if (!(d > 0)) fail("must be positive");
    return d;
  }

  std::int64_t integer() const {
    if (!value_.is_number_integer()) fail("expected an integer");
    if (value_.is_number_unsigned() && value_.get<std::uint64_t>() > std::numeric_limits<std::int64_t>::max()) {
      fail("integer out of range");
    }
    return value_.get<std::int64_t>();
  }

  bool boolean() const {
    if (!value_.is_boolean()) fail("expected a boolean");
    return value_.get<bool>();
  }

  const json& array() const {
    if (!value_.is_array()) fail("expected an array");
    return value_;
  }

 private:
  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  [[noreturn]] void child_path_fail(const std::string& key, const std::string& message) const {
    throw ConfigError(join(key), message);
  }

  const json& value_;
  std::string path_;
};

Rect read_rect(const Reader& r) {
  const json& a = r.array();
  if (a.size() != 4) r.fail("expected [x0, y0, x1, y1]");
  double v[4];
  for (std::size_t i = 0; i < 4; ++i) v[i] = r.index(i).number();
  Rect rect{v[0], v[1], v[2], v[3]};
  if (!(rect.x0 < rect.x1 && rect.y0 < rect.y1)) r.fail("rectangle must have x0 < x1 and y0 < y1");
  if (rect.x0 < 0 || rect.y0 < 0 || rect.x1 > 1 || rect.y1 > 1) r.fail("rectangle must lie inside the unit square");
  return rect;
}

json rect_json(const Rect& r) { return json::array({r.x0, r.y0, r.x1, r.y1}); }

Motion read_motion(const Reader& r) {
  if (!r.value().is_object()) r.fail("expected an object");
  std::string kind = r.at("kind").string();
  if (kind == "static") {
    r.expect_object({"kind"});
    return StaticMotion{};
  }
  if (kind == "linear") {
    r.expect_object({"kind", "velocity", "bounce"});
    Reader v = r.at("velocity");
    if (v.array().size() != 2) v.fail("expected [vx, vy]");
    LinearMotion m{v.index(0).number(), v.index(1).number(), true};
    if (r.has("bounce")) m.bounce = r.at("bounce").boolean();
    return m;
  }
  if (kind == "circular") {
    r.expect_object({"kind", "radius", "angular_velocity", "phase"});
    CircularMotion m;
    m.radius = r.at("radius").number();
    if (m.radius < 0) r.at("radius").fail("must not be negative");
    m.angular_velocity = r.at("angular_velocity").number();
    if (r.has("phase")) m.phase = r.at("phase").number();
    return m;
  }
  r.at("kind").fail("expected one of static, linear, circular");
}

GameConfig read_game(const Reader& r) {
  r.expect_object({"name", "target_radius", "motion", "duration_s", "timeout_ms", "cue", "picture"});
  GameConfig g;
  g.name = r.at("name").non_empty_string();
  g.target_radius = r.at("target_radius").positive();
  g.motion = r.has("motion") ? read_motion(r.at("motion")) : Motion{StaticMotion{}};
  if (r.has("duration_s")) g.duration_s = r.at("duration_s").positive();
  if (r.has("timeout_ms")) {
    g.timeout_ms = r.at("timeout_ms").integer();
    if (g.timeout_ms <= 0) r.at("timeout_ms").fail("must be positive");
  }
  g.cue = r.has("cue") ? r.at("cue").non_empty_string() : g.name;
  g.picture = r.has("picture") ? r.at("picture").non_empty_string() : g.name;
  return g;
}

SubthemeConfig read_subtheme(const Reader& r) {
  r.expect_object({"name", "games"});
  SubthemeConfig s;
  s.name = r.at("name").non_empty_string();
  Reader games = r.at("games");
  if (games.array().size() != 4) games.fail("exactly 4 games required, got " + std::to_string(games.array().size()));
  std::set<std::string> names;
  for (std::size_t i = 0; i < 4; ++i) {
    s.games.push_back(read_game(games.index(i)));
    if (!names.insert(s.games.back().name).second) games.index(i).at("name").fail("duplicate game name");
  }
  return s;
}

void read_layout(const Reader& r, SessionConfig& c) {
  r.expect_object({"sign_left", "sign_right", "play_area", "crown_zone", "min_sign_separation"});
  if (r.has("sign_left")) c.layout.sign_left = read_rect(r.at("sign_left"));
  if (r.has("sign_right")) c.layout.sign_right = read_rect(r.at("sign_right"));
  if (r.has("play_area")) c.layout.play_area = read_rect(r.at("play_area"));
  if (r.has("crown_zone")) c.crown_zone = read_rect(r.at("crown_zone"));
  if (r.has("min_sign_separation")) c.layout.min_sign_separation = r.at("min_sign_separation").positive();
  if (c.layout.sign_left.intersects(c.layout.sign_right)) r.fail("sign zones must be disjoint");
  if (c.layout.sign_left.intersects(c.layout.play_area) || c.layout.sign_right.intersects(c.layout.play_area)) {
    r.fail("sign zones must not overlap the play area");
  }
  if (c.crown_zone.intersects(c.layout.play_area) || c.crown_zone.intersects(c.layout.sign_left) ||
      c.crown_zone.intersects(c.layout.sign_right)) {
    r.fail("crown zone must not overlap the signs or the play area");
  }
}

}  // namespace

std::int64_t SessionConfig::duration_ticks(std::size_t game) const {
  return static_cast<std::int64_t>(std::nearbyint(active().games.at(game).duration_s * tick_hz));
}

std::int64_t SessionConfig::timeout_ticks(std::size_t game) const {
  return ms_to_tick(active().games.at(game).timeout_ms, tick_hz);
}

std::int64_t SessionConfig::wall_budget_ticks() const {
  return static_cast<std::int64_t>(std::nearbyint(wall_budget_s * tick_hz));
}

SessionConfig config_from_json(const json& document) {
  Reader root(document, "");
  root.expect_object({"schema", "theme", "subthemes", "subtheme", "trained_hand", "tick_hz", "rng_seed", "layout",
                      "assets", "count_paused_time", "wall_budget_s", "telemetry"});
  if (root.at("schema").string() != kConfigSchema) {
    root.at("schema").fail(std::string("unsupported schema, expected ") + kConfigSchema);
  }
  SessionConfig c;
  c.theme = root.at("theme").non_empty_string();

  Reader subs = root.at("subthemes");
  if (subs.array().empty()) subs.fail("at least one subtheme required");
  for (std::size_t i = 0; i < subs.array().size(); ++i) c.subthemes.push_back(read_subtheme(subs.index(i)));
  if (root.has("subtheme")) {
    std::string name = root.at("subtheme").string();
    bool found = false;
    for (std::size_t i = 0; i < c.subthemes.size(); ++i) {
      if (c.subthemes[i].name == name) {
        c.subtheme = i;
        found = true;
      }
    }
    if (!found) root.at("subtheme").fail("no subtheme named '" + name + "'");
  }

  std::string hand = root.at("trained_hand").string();
  if (hand == "left") {
    c.trained_hand = touch::Hand::Left;
  } else if (hand == "right") {
    c.trained_hand = touch::Hand::Right;
  } else {
    root.at("trained_hand").fail("expected left or right");
  }

  if (root.has("tick_hz")) {
    std::int64_t hz = root.at("tick_hz").integer();
    if (hz < 1 || hz > 1000) root.at("tick_hz").fail("must be between 1 and 1000");
    c.tick_hz = static_cast<int>(hz);
  }

  Reader seed = root.at("rng_seed");
  if (!seed.value().is_number_unsigned()) {
    seed.fail("expected an unsigned 64-bit integer");
  }
  c.rng_seed = seed.value().get<std::uint64_t>();

  c.layout = touch::default_layout(c.trained_hand);
  c.crown_zone = touch::default_crown_zone(c.trained_hand);
  if (root.has("layout")) read_layout(root.at("layout"), c);

  if (root.has("assets")) c.assets = root.at("assets").string();
  if (root.has("count_paused_time")) c.count_paused_time = root.at("count_paused_time").boolean();
  if (root.has("wall_budget_s")) c.wall_budget_s = root.at("wall_budget_s").positive();
  if (root.has("telemetry")) {
    Reader t = root.at("telemetry");
    t.expect_object({"endpoint", "spool_dir"});
    if (t.has("endpoint")) c.telemetry.endpoint = t.at("endpoint").string();
    if (t.has("spool_dir")) c.telemetry.spool_dir = t.at("spool_dir").non_empty_string();
  }

  // Geometry: every target, including its motion, must fit the play area.
  const Rect& play = c.layout.play_area;
  for (std::size_t s = 0; s < c.subthemes.size(); ++s) {
    for (std::size_t g = 0; g < 4; ++g) {
      const GameConfig& game = c.subthemes[s].games[g];
      double span = 2 * (game.target_radius + motion_reach(game.motion));
      if (span > play.width() || span > play.height()) {
        throw ConfigError("subthemes[" + std::to_string(s) + "].games[" + std::to_string(g) + "].target_radius",
                          "target does not fit inside the play area");
      }
    }
  }
  for (std::size_t g = 0; g < 4; ++g) {
    if (c.duration_ticks(g) < 1) {
      throw ConfigError("subthemes[" + std::to_string(c.subtheme) + "].games[" + std::to_string(g) + "].duration_s",
                        "shorter than one tick");
    }
  }
  return c;
}

SessionConfig load_config(std::string_view bytes) {
  json document;
  try {
    document = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(document);
}

json to_json(const SessionConfig& c) {
  json subthemes = json::array();
  for (const SubthemeConfig& s : c.subthemes) {
    json games = json::array();
    for (const GameConfig& g : s.games) {
      games.push_back({{"name", g.name},
                       {"target_radius", g.target_radius},
                       {"motion", to_json(g.motion)},
                       {"duration_s", g.duration_s},
                       {"timeout_ms", g.timeout_ms},
                       {"cue", g.cue},
                       {"picture", g.picture}});
    }
    subthemes.push_back({{"name", s.name}, {"games", games}});
  }
  return {{"schema", kConfigSchema},
          {"theme", c.theme},
          {"subthemes", subthemes},
          {"subtheme", c.active().name},
          {"trained_hand", c.trained_hand == touch::Hand::Left ? "left" : "right"},
          {"tick_hz", c.tick_hz},
          {"rng_seed", c.rng_seed},
          {"layout",
           {{"sign_left", rect_json(c.layout.sign_left)},
            {"sign_right", rect_json(c.layout.sign_right)},
            {"play_area", rect_json(c.layout.play_area)},
            {"crown_zone", rect_json(c.crown_zone)},
            {"min_sign_separation", c.layout.min_sign_separation}}},
          {"assets", c.assets},
          {"count_paused_time", c.count_paused_time},
          {"wall_budget_s", c.wall_budget_s},
          {"telemetry", {{"endpoint", c.telemetry.endpoint}, {"spool_dir", c.telemetry.spool_dir}}}};
}

}  // namespace danse::game
