#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "danse/game/target.hpp"
#include "danse/touch/zones.hpp"

namespace danse::game {

inline constexpr const char* kConfigSchema = "danse-doigts/1";

struct GameConfig {
  std::string name;
  double target_radius = 0.0;
  Motion motion;
  double duration_s = 150.0;
  std::int64_t timeout_ms = 5000;
  std::string cue;      // audio/visual reinforcement id, defaults to the name
  std::string picture;  // reward picture id, defaults to the name
};

struct SubthemeConfig {
  std::string name;
  std::vector<GameConfig> games;
};

struct TelemetryConfig {
  std::string endpoint;  // empty: no upload
  std::string spool_dir = "spool";
};

struct SessionConfig {
  std::string theme;
  std::vector<SubthemeConfig> subthemes;
  std::size_t subtheme = 0;  // the one played
  touch::Hand trained_hand = touch::Hand::Right;
  int tick_hz = 60;
  std::uint64_t rng_seed = 0;
  touch::ZoneLayout layout;  // crown_zone unset, see crown_zone below
  touch::Rect crown_zone;
  std::string assets;
  bool count_paused_time = false;
  double wall_budget_s = 1800.0;
  TelemetryConfig telemetry;

  const SubthemeConfig& active() const { return subthemes.at(subtheme); }
  std::int64_t duration_ticks(std::size_t game) const;
  std::int64_t timeout_ticks(std::size_t game) const;
  std::int64_t wall_budget_ticks() const;
};

/// Validation failure. `path` locates the offending field, e.g.
/// `subthemes[0].games[2].target_radius`.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

SessionConfig load_config(std::string_view bytes);
SessionConfig config_from_json(const nlohmann::json& document);

/// Fully expanded form (every default written out). Round-trips through
/// config_from_json.
nlohmann::json to_json(const SessionConfig& config);

}  // namespace danse::game
