#include "danse/replay/synth.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "danse/game/random.hpp"
#include "danse/game/session.hpp"
#include "danse/game/timebase.hpp"
#include "danse/touch/gateway.hpp"

namespace danse::replay {

using nlohmann::json;
using touch::Phase;
using touch::Point;
using touch::TouchSample;

namespace {

constexpr std::uint64_t kPlayerStream = 3;
constexpr int kSignA = 0;
constexpr int kSignB = 1;
constexpr int kPlayer = 2;
constexpr std::int64_t kTapTicks = 3;

double number_at(const json& j, const std::string& key, const std::string& path, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ModelError(path + "." + key, "expected a number");
  return j[key].get<double>();
}

std::int64_t integer_at(const json& j, const std::string& key, const std::string& path, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer() || j[key].get<std::int64_t>() < 0) {
    throw ModelError(path + "." + key, "expected a non-negative integer");
  }
  return j[key].get<std::int64_t>();
}

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ModelError(path, "expected an object");
  for (const auto& [key, v] : j.items()) {
    bool known = false;
    for (const char* k : keys) known |= key == k;
    if (!known) throw ModelError(path + "." + key, "unknown field");
  }
}

void probability(double p, const std::string& path) {
  if (!(p >= 0 && p <= 1)) throw ModelError(path, "must be within [0, 1]");
}

}  // namespace

BehaviorModel model_from_json(const json& j) {
  if (!j.is_object()) throw ModelError("$", "expected an object");
  for (const auto& [key, v] : j.items()) {
    if (key != "latency" && key != "accuracy" && key != "hold" && key != "seed") throw ModelError(key, "unknown field");
  }
  BehaviorModel m;
  if (j.contains("latency")) {
    const json& l = j["latency"];
    only_keys(l, "latency", {"kind", "ms", "min_ms", "max_ms"});
    const std::string kind = l.value("kind", "");
    if (kind == "fixed") {
      m.latency = BehaviorModel::Latency::Fixed;
      m.latency_min_ms = m.latency_max_ms = integer_at(l, "ms", "latency", 300);
    } else if (kind == "uniform") {
      m.latency = BehaviorModel::Latency::Uniform;
      m.latency_min_ms = integer_at(l, "min_ms", "latency", 0);
      m.latency_max_ms = integer_at(l, "max_ms", "latency", 0);
      if (m.latency_max_ms < m.latency_min_ms) throw ModelError("latency.max_ms", "smaller than min_ms");
    } else {
      throw ModelError("latency.kind", "expected fixed or uniform");
    }
  }
  if (j.contains("accuracy")) {
    const json& a = j["accuracy"];
    only_keys(a, "accuracy", {"hit_probability", "miss_scatter"});
    m.hit_probability = number_at(a, "hit_probability", "accuracy", 1.0);
    probability(m.hit_probability, "accuracy.hit_probability");
    m.miss_scatter = number_at(a, "miss_scatter", "accuracy", m.miss_scatter);
    if (m.miss_scatter < 0) throw ModelError("accuracy.miss_scatter", "must not be negative");
  }
  if (j.contains("hold")) {
    const json& h = j["hold"];
    only_keys(h, "hold", {"drop_probability_per_minute", "drop_ms"});
    m.drop_probability_per_minute = number_at(h, "drop_probability_per_minute", "hold", 0.0);
    probability(m.drop_probability_per_minute, "hold.drop_probability_per_minute");
    m.drop_ms = integer_at(h, "drop_ms", "hold", m.drop_ms);
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ModelError("seed", "expected an unsigned integer");
    m.seed = j["seed"].get<std::uint64_t>();
  }
  return m;
}

BehaviorModel load_model(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ModelError("$", std::string("invalid JSON: ") + e.what());
  }
  return model_from_json(doc);
}

json to_json(const BehaviorModel& m) {
  json latency = m.latency == BehaviorModel::Latency::Fixed
                     ? json{{"kind", "fixed"}, {"ms", m.latency_min_ms}}
                     : json{{"kind", "uniform"}, {"min_ms", m.latency_min_ms}, {"max_ms", m.latency_max_ms}};
  return {{"latency", latency},
          {"accuracy", {{"hit_probability", m.hit_probability}, {"miss_scatter", m.miss_scatter}}},
          {"hold", {{"drop_probability_per_minute", m.drop_probability_per_minute}, {"drop_ms", m.drop_ms}}},
          {"seed", m.seed}};
}

namespace {

class Player {
 public:
  Player(const game::SessionConfig& config, const BehaviorModel& model)
      : config_(config), model_(model), rng_(model.seed, kPlayerStream) {
    const double per_tick = 1.0 / (60.0 * config.tick_hz);
    drop_per_tick_ = 1.0 - std::pow(1.0 - model.drop_probability_per_minute, per_tick);
  }

  std::vector<TouchSample> play() {
    reactive::Machine machine;
    game::declare_session_events(machine);
    game::SessionProgram session = game::build_session_program(config_);
    machine.add_program(session.program);
    touch::TouchGateway gateway;

    const auto budget = static_cast<std::uint64_t>(config_.wall_budget_ticks());
    for (std::uint64_t instant = 0; instant < budget; ++instant) {
      const auto i = static_cast<std::int64_t>(instant);
      act(i);
      for (const TouchSample& s : pending_) {
        gateway.ingest(s, machine);
        out_.push_back(s);
      }
      pending_.clear();
      if (ending_) break;
      observe(i, machine.react());
    }
    return std::move(out_);
  }

 private:
  enum class Prompt { None, Crown, Target };

  void emit(std::int64_t i, int id, Phase phase, Point p) {
    pending_.push_back(TouchSample{game::tick_to_ms(i, config_.tick_hz), id, phase, p.x, p.y});
  }

  std::int64_t latency_ticks() {
    std::int64_t ms = model_.latency_min_ms;
    if (model_.latency == BehaviorModel::Latency::Uniform) {
      ms += rng_.below(static_cast<std::uint32_t>(model_.latency_max_ms - model_.latency_min_ms + 1));
    }
    return std::max<std::int64_t>(1, game::ms_to_tick(ms, config_.tick_hz));
  }

  std::optional<Point> aim_at_target() {
    const Point centre = game::trajectory_position(*target_, elapsed_ + 1);
    if (model_.hit_probability >= 1.0 || rng_.unit() < model_.hit_probability) return centre;
    for (int attempt = 0; attempt < 16; ++attempt) {
      const double angle = 2 * std::numbers::pi * rng_.unit();
      const double d = target_->radius * 1.5 + model_.miss_scatter * rng_.unit();
      Point p{centre.x + d * std::cos(angle), centre.y + d * std::sin(angle)};
      if (config_.layout.play_area.contains(p)) return p;
    }
    return std::nullopt;
  }

  void act(std::int64_t i) {
    if (i == 0) {
      emit(i, kSignA, Phase::Down, config_.layout.sign_left.center());
      emit(i, kSignB, Phase::Down, config_.layout.sign_right.center());
    }
    if (end_at_ && *end_at_ == i) {
      emit(i, kSignA, Phase::Up, config_.layout.sign_left.center());
      if (!dropped_) emit(i, kSignB, Phase::Up, config_.layout.sign_right.center());
      if (player_down_) emit(i, kPlayer, Phase::Up, last_tap_);
      ending_ = true;
      return;
    }
    if (dropped_ && redown_at_ == i) {
      emit(i, kSignB, Phase::Down, config_.layout.sign_right.center());
      dropped_ = false;
    } else if (!dropped_ && i > 0 && drop_per_tick_ > 0 && rng_.unit() < drop_per_tick_) {
      emit(i, kSignB, Phase::Up, config_.layout.sign_right.center());
      dropped_ = true;
      redown_at_ = i + std::max<std::int64_t>(1, game::ms_to_tick(model_.drop_ms, config_.tick_hz));
    }
    if (player_down_ && up_at_ == i) {
      emit(i, kPlayer, Phase::Up, last_tap_);
      player_down_ = false;
    }
    if (tap_at_ && *tap_at_ == i) {
      tap_at_.reset();
      std::optional<Point> where;
      if (prompt_ == Prompt::Crown) where = config_.crown_zone.center();
      if (prompt_ == Prompt::Target) {
        where = aim_at_target();
        tap_at_ = i + latency_ticks();  // try again unless the trial ends first
      }
      if (where) {
        if (player_down_) emit(i, kPlayer, Phase::Up, last_tap_);
        emit(i, kPlayer, Phase::Down, *where);
        player_down_ = true;
        last_tap_ = *where;
        up_at_ = i + kTapTicks;
      }
    }
  }

  void observe(std::int64_t i, const reactive::InstantReport& r) {
    namespace ev = game::events;
    if (prompt_ == Prompt::Target && r.present(ev::kPlayTick) && target_->spawn_instant < static_cast<std::uint64_t>(i)) {
      ++elapsed_;
    }
    if (r.present(ev::kHideTarget)) {
      prompt_ = Prompt::None;
      tap_at_.reset();
    }
    if (r.present(ev::kShowCrown)) {
      prompt_ = Prompt::Crown;
      tap_at_ = i + latency_ticks();
    }
    if (r.present(ev::kShowTarget)) {
      const json& t = r.emitted.at(ev::kShowTarget).front().json();
      game::Target target;
      target.center = {t["x"].get<double>(), t["y"].get<double>()};
      target.radius = t["radius"].get<double>();
      target.tick_hz = config_.tick_hz;
      target.bounds = {t["bounds"][0].get<double>(), t["bounds"][1].get<double>(), t["bounds"][2].get<double>(),
                       t["bounds"][3].get<double>()};
      target.motion = motion_of(t["motion"]);
      target.spawn_instant = static_cast<std::uint64_t>(i);
      target_ = target;
      elapsed_ = 0;
      prompt_ = Prompt::Target;
      tap_at_ = i + latency_ticks();
    }
    if (r.present(ev::kGamePaused)) tap_at_.reset();
    if (r.present(ev::kGameResumed) && prompt_ != Prompt::None) tap_at_ = i + latency_ticks();
    if (r.present(ev::kSessionComplete)) end_at_ = i + 1;
  }

  static game::Motion motion_of(const json& m) {
    const std::string kind = m["kind"];
    if (kind == "linear") {
      return game::LinearMotion{m["velocity"][0].get<double>(), m["velocity"][1].get<double>(),
                                m["bounce"].get<bool>()};
    }
    if (kind == "circular") {
      return game::CircularMotion{m["radius"].get<double>(), m["angular_velocity"].get<double>(),
                                  m["phase"].get<double>()};
    }
    return game::StaticMotion{};
  }

  const game::SessionConfig& config_;
  const BehaviorModel& model_;
  game::Pcg32 rng_;
  double drop_per_tick_ = 0;

  std::vector<TouchSample> pending_;
  std::vector<TouchSample> out_;
  bool ending_ = false;
  std::optional<std::int64_t> end_at_;
  bool dropped_ = false;
  std::int64_t redown_at_ = 0;
  bool player_down_ = false;
  std::int64_t up_at_ = 0;
  Point last_tap_;
  std::optional<std::int64_t> tap_at_;
  Prompt prompt_ = Prompt::None;
  std::optional<game::Target> target_;
  std::int64_t elapsed_ = 0;
};

}  // namespace

std::vector<TouchSample> synth_trace(const game::SessionConfig& config, const BehaviorModel& model) {
  return Player(config, model).play();
}

}  // namespace danse::replay
