#include "danse/telemetry/stats.hpp"

#include <algorithm>
#include <stdexcept>

#include "danse/telemetry/digest.hpp"

namespace danse::telemetry {

using game::Finger;
using game::Outcome;
using game::TrialRecord;
using nlohmann::json;

Aggregates aggregate(const std::vector<TrialRecord>& trials, const std::vector<std::string>& games) {
  Aggregates a;
  for (Finger f : game::kAllFingers) a.per_finger[f];
  for (const auto& g : games) a.per_game[g];
  std::map<Finger, std::vector<std::int64_t>> reactions;
  for (const TrialRecord& t : trials) {
    FingerAggregate& fa = a.per_finger[t.finger];
    GameAggregate& ga = a.per_game[t.game];
    ++fa.trials;
    ++ga.trials;
    if (t.outcome == Outcome::Hit) {
      ++fa.hits;
      ++ga.hits;
      if (t.reaction_ms) reactions[t.finger].push_back(*t.reaction_ms);
    } else {
      ++ga.timeouts;
    }
    a.unexpected_contacts += t.unexpected_contacts;
  }
  for (auto& [f, values] : reactions) {
    std::int64_t sum = 0;
    for (std::int64_t v : values) sum += v;
    std::sort(values.begin(), values.end());
    a.per_finger[f].mean_reaction_ms = static_cast<double>(sum) / static_cast<double>(values.size());
    a.per_finger[f].median_reaction_ms = values[(values.size() - 1) / 2];
  }
  for (auto& [name, ga] : a.per_game) ga.hit_rate = {ga.hits, ga.trials};
  return a;
}

std::string config_digest(const game::SessionConfig& config) { return sha256_hex(game::to_json(config).dump()); }

std::string derive_session_id(const std::string& config_digest, std::uint64_t seed, const std::string& input_digest) {
  return sha256_hex(config_digest + "\n" + std::to_string(seed) + "\n" + input_digest).substr(0, 32);
}

namespace {

json optional_json(const auto& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json(const SessionStats& s) {
  json per_finger = json::object();
  for (const auto& [f, a] : s.aggregates.per_finger) {
    per_finger[std::string(game::to_string(f))] = {{"trials", a.trials},
                                                   {"hits", a.hits},
                                                   {"mean_reaction_ms", optional_json(a.mean_reaction_ms)},
                                                   {"median_reaction_ms", optional_json(a.median_reaction_ms)}};
  }
  json per_game = json::object();
  for (const auto& [g, a] : s.aggregates.per_game) {
    per_game[g] = {{"trials", a.trials},
                   {"hits", a.hits},
                   {"timeouts", a.timeouts},
                   {"hit_rate", {{"num", a.hit_rate.num}, {"den", a.hit_rate.den}}}};
  }
  json trials = json::array();
  for (const TrialRecord& t : s.trials) trials.push_back(game::to_json(t));
  return {{"schema", kStatsSchema},
          {"session_id", s.session_id},
          {"config_digest", s.config_digest},
          {"seed", s.seed},
          {"theme", s.theme},
          {"subtheme", s.subtheme},
          {"tick_hz", s.tick_hz},
          {"completed", s.completed},
          {"games", s.games},
          {"trials", trials},
          {"aggregates",
           {{"per_finger", per_finger},
            {"per_game", per_game},
            {"unexpected_contacts", s.aggregates.unexpected_contacts}}},
          {"pauses", {{"count", s.pauses.count}, {"paused_ticks", s.pauses.paused_ticks}}}};
}

SessionStats stats_from_json(const json& j) {
  if (j.at("schema") != kStatsSchema) throw std::invalid_argument("unsupported stats schema");
  SessionStats s;
  s.session_id = j.at("session_id").get<std::string>();
  s.config_digest = j.at("config_digest").get<std::string>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.theme = j.at("theme").get<std::string>();
  s.subtheme = j.at("subtheme").get<std::string>();
  s.tick_hz = j.at("tick_hz").get<int>();
  s.completed = j.at("completed").get<bool>();
  s.games = j.at("games").get<std::vector<std::string>>();
  for (const json& t : j.at("trials")) s.trials.push_back(game::trial_from_json(t));
  const json& a = j.at("aggregates");
  for (const auto& [name, v] : a.at("per_finger").items()) {
    auto f = game::parse_finger(name);
    if (!f) throw std::invalid_argument("unknown finger " + name);
    FingerAggregate fa;
    fa.trials = v.at("trials").get<std::int64_t>();
    fa.hits = v.at("hits").get<std::int64_t>();
    if (!v.at("mean_reaction_ms").is_null()) fa.mean_reaction_ms = v["mean_reaction_ms"].get<double>();
    if (!v.at("median_reaction_ms").is_null()) fa.median_reaction_ms = v["median_reaction_ms"].get<std::int64_t>();
    s.aggregates.per_finger[*f] = fa;
  }
  for (const auto& [name, v] : a.at("per_game").items()) {
    GameAggregate ga;
    ga.trials = v.at("trials").get<std::int64_t>();
    ga.hits = v.at("hits").get<std::int64_t>();
    ga.timeouts = v.at("timeouts").get<std::int64_t>();
    ga.hit_rate = {v.at("hit_rate").at("num").get<std::int64_t>(), v.at("hit_rate").at("den").get<std::int64_t>()};
    s.aggregates.per_game[name] = ga;
  }
  s.aggregates.unexpected_contacts = a.at("unexpected_contacts").get<std::int64_t>();
  s.pauses.count = j.at("pauses").at("count").get<std::int64_t>();
  s.pauses.paused_ticks = j.at("pauses").at("paused_ticks").get<std::int64_t>();
  return s;
}

}  // namespace danse::telemetry
