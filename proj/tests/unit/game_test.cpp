#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "danse/game/config.hpp"
#include "danse/game/fingers.hpp"
#include "danse/game/random.hpp"
#include "danse/game/session.hpp"
#include "danse/game/target.hpp"
#include "danse/game/timebase.hpp"

namespace danse::game {
namespace {

using nlohmann::json;
using touch::Phase;
using touch::Point;
using touch::Rect;
using touch::TouchSample;

std::string read_file(const std::string& name) {
  std::ifstream in(std::string(DANSE_FIXTURE_DIR) + "/" + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

json fixture(const std::string& name) { return json::parse(read_file(name)); }

// ---------------------------------------------------------------- PRNG

TEST(Pcg32, ReferenceVector) {
  // Output of the reference pcg32 demo seeded with (42, 54).
  Pcg32 rng(42, 54);
  const std::uint32_t expected[] = {0xa15c02b7, 0x7b47f409, 0xba1d3330, 0x83d2f293, 0xbfa4784b, 0xcbed606e};
  for (std::uint32_t e : expected) EXPECT_EQ(rng.next(), e);
}

TEST(Pcg32, BoundedAndUnitRanges) {
  Pcg32 rng(1, 2);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[rng.below(7)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
  for (int i = 0; i < 10000; ++i) {
    double u = rng.unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

// ---------------------------------------------------------------- time base

TEST(TimeBase, TiesGoToEven) {
  // At 60 Hz, 25 ms is tick 1.5 and 75 ms is tick 4.5.
  EXPECT_EQ(ms_to_tick(25, 60), 2);
  EXPECT_EQ(ms_to_tick(75, 60), 4);
  EXPECT_EQ(ms_to_tick(24, 60), 1);
  EXPECT_EQ(ms_to_tick(26, 60), 2);
  EXPECT_EQ(ms_to_tick(5000, 60), 300);
  EXPECT_EQ(tick_to_ms(1, 60), 17);
  EXPECT_EQ(tick_to_ms(18, 60), 300);
  EXPECT_EQ(tick_to_ms(9000, 60), 150000);
}

TEST(TimeBase, TickRoundTrip) {
  for (int hz : {1, 24, 50, 60, 144, 1000}) {
    for (std::int64_t tick = 0; tick < 5000; ++tick) ASSERT_EQ(ms_to_tick(tick_to_ms(tick, hz), hz), tick) << hz;
  }
}

// ---------------------------------------------------------------- fingers

TEST(Fingers, CyclesArePermutationsWithoutRepeats) {
  FingerScheduler s(99);
  std::optional<Finger> previous;
  std::set<Finger> window;
  for (int i = 0; i < 100000; ++i) {
    auto [f, next] = next_finger(s);
    s = next;
    if (previous) {
      ASSERT_NE(*previous, f) << "draw " << i;
    }
    previous = f;
    window.insert(f);
    if (i % 5 == 4) {
      ASSERT_EQ(window.size(), 5u);
      window.clear();
    }
  }
}

TEST(Fingers, PureAndDeterministic) {
  FingerScheduler a(5);
  FingerScheduler b(5);
  auto [fa, na] = next_finger(a);
  auto [fa2, na2] = next_finger(a);  // same input, same output
  EXPECT_EQ(fa, fa2);
  EXPECT_EQ(na, na2);
  for (int i = 0; i < 50; ++i) {
    auto [x, nx] = next_finger(a);
    auto [y, ny] = next_finger(b);
    ASSERT_EQ(x, y);
    a = nx;
    b = ny;
  }
  FingerScheduler c(6);
  std::vector<Finger> sa, sc;
  for (int i = 0; i < 20; ++i) {
    auto [x, nx] = next_finger(a);
    auto [y, ny] = next_finger(c);
    sa.push_back(x);
    sc.push_back(y);
    a = nx;
    c = ny;
  }
  EXPECT_NE(sa, sc);
}

TEST(Fingers, Names) {
  for (Finger f : kAllFingers) EXPECT_EQ(parse_finger(to_string(f)), f);
  EXPECT_FALSE(parse_finger("pinky"));
}

// ---------------------------------------------------------------- targets

const Rect kPlay{0.28, 0.02, 0.98, 0.74};

TEST(Spawn, NeverWithinTwoRadiiOfPrevious) {
  Pcg32 rng(3, 2);
  std::optional<Target> previous;
  for (int i = 0; i < 10000; ++i) {
    Target t = spawn_target(0.06, StaticMotion{}, 60, kPlay, previous, rng, static_cast<std::uint64_t>(i));
    ASSERT_GE(t.center.x - t.radius, kPlay.x0);
    ASSERT_LE(t.center.x + t.radius, kPlay.x1);
    ASSERT_GE(t.center.y - t.radius, kPlay.y0);
    ASSERT_LE(t.center.y + t.radius, kPlay.y1);
    if (previous) {
      ASSERT_GE(touch::distance(t.center, previous->center), 2 * t.radius);
    }
    previous = t;
  }
}

TEST(Spawn, FallsBackToFarthestCandidate) {
  // The spawn area is a 0.02 square: every candidate is within 2r of the
  // previous center, so the farthest of 64 is kept.
  Rect tiny{0.4, 0.4, 0.52, 0.52};
  Pcg32 rng(1, 2);
  Target first = spawn_target(0.05, StaticMotion{}, 60, tiny, std::nullopt, rng, 0);
  Pcg32 replay = rng;
  Target second = spawn_target(0.05, StaticMotion{}, 60, tiny, first, rng, 1);
  double best = 0;
  for (int i = 0; i < kMaxSpawnAttempts; ++i) {
    Point c{0.45 + replay.unit() * 0.02, 0.45 + replay.unit() * 0.02};
    best = std::max(best, touch::distance(c, first.center));
  }
  EXPECT_DOUBLE_EQ(touch::distance(second.center, first.center), best);
}

TEST(Spawn, Reproducible) {
  Pcg32 a(11, 2), b(11, 2);
  std::optional<Target> pa, pb;
  for (int i = 0; i < 100; ++i) {
    pa = spawn_target(0.03, StaticMotion{}, 60, kPlay, pa, a, 0);
    pb = spawn_target(0.03, StaticMotion{}, 60, kPlay, pb, b, 0);
    ASSERT_EQ(*pa, *pb);
  }
}

TEST(Spawn, CircularOrbitStaysInside) {
  Pcg32 rng(8, 2);
  CircularMotion orbit{0.1, 2.0, 0.0};
  std::optional<Target> previous;
  for (int i = 0; i < 500; ++i) {
    Target t = spawn_target(0.04, orbit, 60, kPlay, previous, rng, 0);
    for (std::int64_t tick = 0; tick < 400; tick += 7) {
      Point p = trajectory_position(t, tick);
      ASSERT_GE(p.x - t.radius, kPlay.x0 - 1e-12);
      ASSERT_LE(p.x + t.radius, kPlay.x1 + 1e-12);
      ASSERT_GE(p.y - t.radius, kPlay.y0 - 1e-12);
      ASSERT_LE(p.y + t.radius, kPlay.y1 + 1e-12);
    }
    previous = t;
  }
}

TEST(Trajectory, StaticIsConstant) {
  Target t{{0.5, 0.5}, 0.05, StaticMotion{}, 60, {0.3, 0.1, 0.9, 0.7}, 0};
  for (std::int64_t tick : {0, 1, 1000, 123456}) EXPECT_EQ(trajectory_position(t, tick), (Point{0.5, 0.5}));
}

TEST(Trajectory, CircularQuarterPeriod) {
  // Period 2 s at 60 Hz: a quarter is 30 ticks.
  const double omega = std::numbers::pi;
  Target t{{0.5, 0.4}, 0.03, CircularMotion{0.1, omega, 0.0}, 60, {0.3, 0.1, 0.9, 0.7}, 0};
  Point p = trajectory_position(t, 30);
  EXPECT_NEAR(p.x, 0.5, 1e-12);
  EXPECT_NEAR(p.y, 0.5, 1e-12);
  p = trajectory_position(t, 0);
  EXPECT_NEAR(p.x, 0.6, 1e-12);
  EXPECT_NEAR(p.y, 0.4, 1e-12);
}

// Step-by-step oracle: move one tick, mirror any overshoot back inside.
struct StepOracle {
  double x, y, vx, vy;
  Rect b;
  void step(int hz) {
    x += vx / hz;
    y += vy / hz;
    if (x > b.x1) { x = 2 * b.x1 - x; vx = -vx; }
    if (x < b.x0) { x = 2 * b.x0 - x; vx = -vx; }
    if (y > b.y1) { y = 2 * b.y1 - y; vy = -vy; }
    if (y < b.y0) { y = 2 * b.y0 - y; vy = -vy; }
  }
};

TEST(Trajectory, LinearReflectionMatchesStepSimulation) {
  const Rect bounds{0.33, 0.07, 0.93, 0.69};
  Target t{{0.4, 0.6}, 0.05, LinearMotion{0.37, -0.23, true}, 60, bounds, 0};
  StepOracle o{0.4, 0.6, 0.37, -0.23, bounds};
  double worst = 0;
  int x_reflections = 0;
  double last_vx = o.vx;
  for (std::int64_t tick = 0; tick <= 100000; ++tick) {
    Point p = trajectory_position(t, tick);
    ASSERT_GE(p.x, bounds.x0);
    ASSERT_LE(p.x, bounds.x1);
    ASSERT_GE(p.y, bounds.y0);
    ASSERT_LE(p.y, bounds.y1);
    worst = std::max({worst, std::abs(p.x - o.x), std::abs(p.y - o.y)});
    o.step(60);
    if (o.vx != last_vx) ++x_reflections;
    last_vx = o.vx;
  }
  EXPECT_LT(worst, 1e-9);
  EXPECT_GT(x_reflections, 100);
}

TEST(Trajectory, LinearWithoutBounceStopsAtWall) {
  const Rect bounds{0.3, 0.1, 0.9, 0.7};
  Target t{{0.8, 0.5}, 0.05, LinearMotion{0.5, 0.0, false}, 50, bounds, 0};
  EXPECT_NEAR(trajectory_position(t, 5).x, 0.85, 1e-12);
  EXPECT_EQ(trajectory_position(t, 50).x, 0.9);
  EXPECT_EQ(trajectory_position(t, 5000).x, 0.9);
}

TEST(HitTest, ClosedDisc) {
  Target t{{0.5, 0.5}, 0.25, StaticMotion{}, 60, {0.25, 0.25, 0.75, 0.75}, 0};
  EXPECT_EQ(target_hit_test(t, 0, {0.5, 0.5}), HitResult::Hit);
  EXPECT_EQ(target_hit_test(t, 0, {0.75, 0.5}), HitResult::Hit);  // exactly on the rim
  EXPECT_EQ(target_hit_test(t, 0, {0.5 + 1.01 * 0.25, 0.5}), HitResult::Miss);
}

TEST(HitTest, FollowsTheTrajectory) {
  Target t{{0.5, 0.4}, 0.02, CircularMotion{0.1, std::numbers::pi, 0.0}, 60, {0.3, 0.1, 0.9, 0.7}, 0};
  EXPECT_EQ(target_hit_test(t, 30, {0.5, 0.5}), HitResult::Hit);
  EXPECT_EQ(target_hit_test(t, 0, {0.5, 0.5}), HitResult::Miss);
}

TEST(Progress, Fraction) {
  EXPECT_EQ(progress_fraction(0, 9000), 0.0);
  EXPECT_EQ(progress_fraction(9000, 9000), 1.0);
  EXPECT_EQ(progress_fraction(4500, 9000), 0.5);
  EXPECT_EQ(progress_fraction(9500, 9000), 1.0);
  EXPECT_THROW(progress_fraction(1, 0), std::invalid_argument);
}

// ---------------------------------------------------------------- config

TEST(Config, FixtureLoadsWithDefaults) {
  SessionConfig c = load_config(read_file("nature_sky.json"));
  EXPECT_EQ(c.theme, "nature");
  ASSERT_EQ(c.active().games.size(), 4u);
  std::vector<std::string> names;
  for (const auto& g : c.active().games) names.push_back(g.name);
  EXPECT_EQ(names, (std::vector<std::string>{"clouds", "flakes", "sun", "rain"}));
  EXPECT_EQ(c.tick_hz, 60);
  EXPECT_EQ(c.duration_ticks(0), 9000);
  EXPECT_EQ(c.timeout_ticks(0), 300);
  EXPECT_EQ(c.active().games[1].target_radius, 0.045);
  EXPECT_EQ(c.layout.play_area, touch::default_layout(touch::Hand::Right).play_area);
  EXPECT_EQ(c.rng_seed, 20150601u);
}

TEST(Config, RoundTripsThroughExpandedForm) {
  for (const char* name : {"nature_sky.json", "moving_targets.json"}) {
    SessionConfig c = load_config(read_file(name));
    json expanded = to_json(c);
    EXPECT_EQ(to_json(config_from_json(expanded)), expanded) << name;
  }
}

std::string error_path(const json& doc) {
  try {
    config_from_json(doc);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<accepted>";
}

TEST(Config, ThreeGamesRejected) {
  json doc = fixture("nature_sky.json");
  doc["subthemes"][0]["games"].erase(3);
  try {
    config_from_json(doc);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.path(), "subthemes[0].games");
    EXPECT_NE(std::string(e.what()).find("exactly 4 games"), std::string::npos);
  }
}

TEST(Config, OversizedTargetRejected) {
  json doc = fixture("nature_sky.json");
  doc["layout"] = {{"play_area", {0.3, 0.1, 0.8, 0.7}}};  // 0.5 wide
  doc["subthemes"][0]["games"][2]["target_radius"] = 0.9;
  EXPECT_EQ(error_path(doc), "subthemes[0].games[2].target_radius");
}

TEST(Config, FieldPaths) {
  json doc = fixture("nature_sky.json");
  doc["schema"] = "danse-doigts/2";
  EXPECT_EQ(error_path(doc), "schema");

  doc = fixture("nature_sky.json");
  doc["subthemes"][0]["games"][1]["timeout_ms"] = -5;
  EXPECT_EQ(error_path(doc), "subthemes[0].games[1].timeout_ms");

  doc = fixture("nature_sky.json");
  doc["subthemes"][0]["games"][0]["colour"] = "red";
  EXPECT_EQ(error_path(doc), "subthemes[0].games[0].colour");

  doc = fixture("nature_sky.json");
  doc.erase("trained_hand");
  EXPECT_EQ(error_path(doc), "trained_hand");

  doc = fixture("nature_sky.json");
  doc["rng_seed"] = -1;
  EXPECT_EQ(error_path(doc), "rng_seed");

  doc = fixture("nature_sky.json");
  doc["layout"] = {{"sign_left", {0.3, 0.1, 0.4, 0.2}}};
  EXPECT_EQ(error_path(doc), "layout");

  doc = fixture("nature_sky.json");
  doc["subthemes"][0]["games"][3]["motion"] = {{"kind", "spiral"}};
  EXPECT_EQ(error_path(doc), "subthemes[0].games[3].motion.kind");

  doc = fixture("nature_sky.json");
  doc["tick_hz"] = 0;
  EXPECT_EQ(error_path(doc), "tick_hz");

  EXPECT_THROW(load_config("{"), ConfigError);
}

TEST(Config, LeftHandMirrorsDefaults) {
  json doc = fixture("nature_sky.json");
  doc["trained_hand"] = "left";
  SessionConfig c = config_from_json(doc);
  EXPECT_LT(c.layout.play_area.center().x, 0.5);
  EXPECT_LT(c.crown_zone.center().x, 0.5);
}

// ---------------------------------------------------------------- session

// Drives a session machine instant by instant with scripted samples.
struct Harness {
  explicit Harness(const SessionConfig& c) : config(c), session(build_session_program(c)) {
    declare_session_events(machine);
    machine.add_program(session.program);
  }

  const reactive::InstantReport& step(const std::vector<std::pair<int, Point>>& downs = {},
                                      const std::vector<int>& ups = {}) {
    const std::int64_t t = tick_to_ms(static_cast<std::int64_t>(machine.instant_index()), config.tick_hz);
    for (int id : ups) gateway.ingest(TouchSample{t, id, Phase::Up, 0.5, 0.5}, machine);
    for (const auto& [id, p] : downs) gateway.ingest(TouchSample{t, id, Phase::Down, p.x, p.y}, machine);
    reports.push_back(machine.react());
    phases.push_back(session.state->phase().kind);
    return reports.back();
  }

  std::vector<std::pair<int, Point>> hold() const {
    return {{0, config.layout.sign_left.center()}, {1, config.layout.sign_right.center()}};
  }

  const json& value(const reactive::InstantReport& r, const char* event, std::size_t i = 0) {
    return r.emitted.at(event).at(i).json();
  }

  SessionConfig config;
  reactive::Machine machine;
  touch::TouchGateway gateway;
  SessionProgram session;
  std::vector<reactive::InstantReport> reports;
  std::vector<PhaseKind> phases;
};

SessionConfig short_config(double duration_s = 1.0, std::int64_t timeout_ms = 5000) {
  json doc = fixture("nature_sky.json");
  for (auto& g : doc["subthemes"][0]["games"]) {
    g["duration_s"] = duration_s;
    g["timeout_ms"] = timeout_ms;
  }
  return config_from_json(doc);
}

TEST(Session, HitTrialFlow) {
  Harness h(short_config());
  const auto& r0 = h.step(h.hold());
  EXPECT_TRUE(r0.present(events::kPlayTick));
  EXPECT_TRUE(r0.present(events::kShowCrown));
  EXPECT_EQ(h.value(r0, events::kPlayCue)["cue"], kCuePlaceSigns);
  EXPECT_EQ(h.value(r0, events::kGameStart)["game"], "clouds");
  EXPECT_EQ(h.value(r0, events::kProgress)["fraction"], 1.0 / 60);
  EXPECT_EQ(h.phases[0], PhaseKind::CrownPrompt);
  const std::string finger = h.value(r0, events::kShowCrown)["finger"];
  EXPECT_EQ(h.value(r0, events::kShowCrown)["hand"], "right");

  h.step();
  h.step();
  const auto& r3 = h.step({{2, h.config.crown_zone.center()}});
  ASSERT_TRUE(r3.present(events::kCrownTap));
  ASSERT_TRUE(r3.present(events::kShowTarget));
  EXPECT_EQ(h.phases[3], PhaseKind::TargetActive);
  const json target = h.value(r3, events::kShowTarget);
  EXPECT_EQ(target["game"], "clouds");
  EXPECT_EQ(target["radius"], 0.06);
  h.step({}, {2});
  h.step();
  const auto& r6 = h.step({{2, {target["x"].get<double>(), target["y"].get<double>()}}});
  ASSERT_TRUE(r6.present(events::kTrialEnd));
  EXPECT_EQ(h.value(r6, events::kHideTarget)["reason"], "hit");
  EXPECT_EQ(h.value(r6, events::kPlayCue)["cue"], "clouds");
  EXPECT_TRUE(r6.present(events::kShowCrown));  // next prompt starts at once
  EXPECT_NE(h.value(r6, events::kShowCrown)["finger"], finger);

  ASSERT_EQ(h.session.state->records.size(), 1u);
  const TrialRecord& rec = h.session.state->records[0];
  EXPECT_EQ(rec.outcome, Outcome::Hit);
  EXPECT_EQ(to_string(rec.finger), finger);
  EXPECT_EQ(rec.prompt_t_ms, 0);
  EXPECT_EQ(rec.crown_tap_t_ms, 50);
  EXPECT_EQ(rec.end_t_ms, 100);
  EXPECT_EQ(rec.reaction_ms, 50);  // 3 ticks
  EXPECT_EQ(rec.unexpected_contacts, 0);
  EXPECT_EQ(trial_from_json(h.value(r6, events::kTrialEnd)), rec);
}

TEST(Session, CrownTouchInThePromptInstantIsIgnored) {
  Harness h(short_config());
  // The crown is touched in the very instant it appears.
  auto downs = h.hold();
  downs.push_back({2, h.config.crown_zone.center()});
  const auto& r0 = h.step(downs);
  EXPECT_TRUE(r0.present(events::kShowCrown));
  EXPECT_FALSE(r0.present(events::kCrownTap));
  EXPECT_FALSE(h.step().present(events::kCrownTap));
  EXPECT_EQ(h.phases.back(), PhaseKind::CrownPrompt);
}

TEST(Session, MissesAndPlayAreaTouchesAreUnexpected) {
  Harness h(short_config(1.0, 100));  // timeout 6 ticks
  h.step(h.hold());
  const auto& r1 = h.step({{2, h.config.crown_zone.center()}});
  const json target = h.value(r1, events::kShowTarget);
  Point far{target["x"].get<double>() < 0.6 ? 0.95 : 0.3, target["y"].get<double>() < 0.4 ? 0.7 : 0.05};
  h.step({{3, far}});  // tick 1 after display: a miss
  for (int i = 0; i < 4; ++i) EXPECT_FALSE(h.step().present(events::kTrialEnd));
  const auto& r7 = h.step();  // elapsed reaches 6 ticks
  ASSERT_TRUE(r7.present(events::kTrialEnd));
  EXPECT_EQ(h.value(r7, events::kHideTarget)["reason"], "timeout");
  EXPECT_FALSE(r7.present(events::kPlayCue));
  const TrialRecord& rec = h.session.state->records.at(0);
  EXPECT_EQ(rec.outcome, Outcome::Timeout);
  EXPECT_FALSE(rec.reaction_ms);
  EXPECT_EQ(rec.unexpected_contacts, 1);
}

TEST(Session, ReleasingASignPausesEverything) {
  Harness h(short_config(1.0, 100));
  h.step(h.hold());
  h.step({{2, h.config.crown_zone.center()}});
  const auto& lift = h.step({}, {1});
  EXPECT_TRUE(lift.present(events::kGamePaused));
  EXPECT_FALSE(lift.present(events::kPlayTick));
  EXPECT_TRUE(lift.present(events::kPausedTick));
  EXPECT_EQ(h.phases.back(), PhaseKind::Paused);
  EXPECT_EQ(h.session.state->phase().resume, PhaseKind::TargetActive);
  // Far beyond the timeout: nothing happens while paused.
  for (int i = 0; i < 30; ++i) {
    const auto& r = h.step();
    for (const char* e : {events::kProgress, events::kTrialEnd, events::kHideTarget, events::kShowTarget,
                          events::kShowCrown, events::kGamePaused}) {
      EXPECT_FALSE(r.present(e)) << e;
    }
  }
  EXPECT_EQ(h.session.state->active_ticks[0], 2);
  const auto& back = h.step({{1, h.config.layout.sign_right.center()}});
  EXPECT_TRUE(back.present(events::kGameResumed));
  EXPECT_EQ(h.phases.back(), PhaseKind::TargetActive);
  EXPECT_EQ(h.session.state->target_elapsed, 1);
}

TEST(Session, NoTouchesNeverLeavesAwaitHold) {
  Harness h(short_config());
  for (int i = 0; i < 600; ++i) {
    const auto& r = h.step();
    ASSERT_FALSE(r.present(events::kPlayTick));
    ASSERT_FALSE(r.present(events::kProgress));
    ASSERT_EQ(h.phases.back(), PhaseKind::AwaitHold);
  }
  EXPECT_TRUE(h.session.state->records.empty());
}

TEST(Session, FourGamesOfExactDuration) {
  Harness h(short_config(1.0));
  h.step(h.hold());
  while (!h.reports.back().present(events::kSessionComplete)) {
    ASSERT_LT(h.reports.size(), 1000u);
    h.step();
  }
  std::map<std::string, int> progress;
  int time_up = 0;
  std::vector<std::uint64_t> game_end;
  for (const auto& r : h.reports) {
    if (r.present(events::kProgress)) ++progress[h.value(r, events::kProgress)["game"]];
    if (r.present(events::kTimeUp)) ++time_up;
    if (r.present(events::kGameEnd)) {
      game_end.push_back(r.instant);
      EXPECT_EQ(h.value(r, events::kGameEnd)["active_ticks"], 60);
      EXPECT_EQ(h.value(r, events::kHideTarget)["reason"], "gameEnd");
    }
  }
  EXPECT_EQ(progress, (std::map<std::string, int>{{"clouds", 60}, {"flakes", 60}, {"sun", 60}, {"rain", 60}}));
  EXPECT_EQ(time_up, 4);
  EXPECT_EQ(game_end, (std::vector<std::uint64_t>{60, 120, 180, 240}));
  const auto& last = h.reports.back();
  EXPECT_EQ(last.instant, 240u);
  EXPECT_EQ(h.value(last, events::kSessionComplete)["games"][3],
            (json{{"name", "rain"}, {"picture", "sky/rain"}}));
  EXPECT_EQ(h.value(last, events::kPlayCue, 0)["cue"], kCueCongratulations);
  EXPECT_FALSE(last.present(events::kPlayTick));
  EXPECT_FALSE(last.present(events::kClockTick));
  int play_ticks = 0;
  for (const auto& r : h.reports) play_ticks += r.present(events::kPlayTick);
  EXPECT_EQ(play_ticks, 240);
  EXPECT_EQ(h.phases.back(), PhaseKind::Finished);
  EXPECT_TRUE(h.session.state->records.empty());
  const auto& after = h.step();
  EXPECT_EQ(after.terminated.size(), 1u);
}

TEST(Session, CountPausedTimeSwitch) {
  json doc = fixture("nature_sky.json");
  for (auto& g : doc["subthemes"][0]["games"]) g["duration_s"] = 1;
  doc["count_paused_time"] = true;
  Harness h(config_from_json(doc));
  h.step(h.hold());
  h.step({}, {0});
  for (int i = 0; i < 10; ++i) h.step();
  EXPECT_EQ(h.session.state->active_ticks[0], 12);
  EXPECT_EQ(h.phases.back(), PhaseKind::Paused);
}

TEST(Session, UiPayloadsCarryNoCounts) {
  Harness h(short_config(1.0, 100));
  h.step(h.hold());
  for (int i = 1; i < 400 && !h.reports.back().present(events::kSessionComplete); ++i) {
    if (i % 9 == 0) {
      h.step({{2, h.config.crown_zone.center()}}, {});
    } else if (i % 9 == 1 && i > 1) {
      h.step({}, {2});
    } else {
      h.step();
    }
  }
  const std::set<std::string> numeric_ok{"x", "y", "radius", "fraction", "velocity", "angular_velocity", "phase",
                                         "bounds"};
  std::set<std::string> seen;
  for (const auto& r : h.reports) {
    for (const auto& ev : events::ui_events()) {
      auto it = r.emitted.find(ev);
      if (it == r.emitted.end()) continue;
      seen.insert(ev);
      for (const auto& p : it->second) {
        std::function<void(const json&, const std::string&)> scan = [&](const json& j, const std::string& key) {
          if (j.is_number()) {
            EXPECT_TRUE(numeric_ok.count(key)) << ev << "." << key;
          }
          if (j.is_object()) {
            for (const auto& [k, v] : j.items()) scan(v, k);
          }
          if (j.is_array()) {
            for (const auto& v : j) scan(v, key);
          }
        };
        scan(p.json(), "");
      }
    }
  }
  EXPECT_GE(seen.size(), 6u);
}

}  // namespace
}  // namespace danse::game
