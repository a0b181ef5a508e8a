#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "danse/game/config.hpp"
#include "danse/game/trial.hpp"

namespace danse::telemetry {

inline constexpr const char* kStatsSchema = "danse-doigts-stats/1";

struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 0;
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

struct FingerAggregate {
  std::int64_t trials = 0;
  std::int64_t hits = 0;
  std::optional<double> mean_reaction_ms;          // absent without hits
  std::optional<std::int64_t> median_reaction_ms;  // lower median
  friend bool operator==(const FingerAggregate&, const FingerAggregate&) = default;
};

struct GameAggregate {
  std::int64_t trials = 0;
  std::int64_t hits = 0;
  std::int64_t timeouts = 0;
  Ratio hit_rate;  // hits / trials, unreduced
  friend bool operator==(const GameAggregate&, const GameAggregate&) = default;
};

struct Aggregates {
  std::map<game::Finger, FingerAggregate> per_finger;  // all five fingers
  std::map<std::string, GameAggregate> per_game;       // every listed game
  std::int64_t unexpected_contacts = 0;
  friend bool operator==(const Aggregates&, const Aggregates&) = default;
};

struct PauseStats {
  std::int64_t count = 0;
  std::int64_t paused_ticks = 0;
  friend bool operator==(const PauseStats&, const PauseStats&) = default;
};

struct SessionStats {
  std::string session_id;
  std::string config_digest;
  std::uint64_t seed = 0;
  std::string theme;
  std::string subtheme;
  int tick_hz = 60;
  bool completed = false;
  std::vector<std::string> games;
  std::vector<game::TrialRecord> trials;  // in prompt order
  Aggregates aggregates;
  PauseStats pauses;
  friend bool operator==(const SessionStats&, const SessionStats&) = default;
};

/// Pure function of the trials. `games` lists the games that must appear
/// even without trials.
Aggregates aggregate(const std::vector<game::TrialRecord>& trials, const std::vector<std::string>& games);

std::string config_digest(const game::SessionConfig& config);

/// 128-bit id, hex: SHA-256 over config digest, seed and input trace digest,
/// truncated. The same inputs always name the same session.
std::string derive_session_id(const std::string& config_digest, std::uint64_t seed, const std::string& input_digest);

nlohmann::json to_json(const SessionStats& stats);
SessionStats stats_from_json(const nlohmann::json& document);

}  // namespace danse::telemetry
