#include "danse/game/session.hpp"

#include "danse/game/timebase.hpp"

namespace danse::game {

using nlohmann::json;
using reactive::Context;
using reactive::Payload;
using reactive::Program;
using namespace reactive;  // combinators

namespace events {

const std::vector<std::string>& ui_events() {
  static const std::vector<std::string> names{kShowCrown, kShowTarget, kHideTarget,  kProgress,
                                              kPlayCue,   kGamePaused, kGameResumed, kSessionComplete};
  return names;
}

const std::vector<std::string>& internal_events() {
  static const std::vector<std::string> names{kPlayTick, kClockTick, kPausedTick, kCrownTap,
                                              kTrialEnd, kTimeUp,    kGameStart,  kGameEnd};
  return names;
}

}  // namespace events

std::string_view to_string(PhaseKind kind) {
  switch (kind) {
    case PhaseKind::AwaitHold:
      return "awaitHold";
    case PhaseKind::CrownPrompt:
      return "crownPrompt";
    case PhaseKind::TargetActive:
      return "targetActive";
    case PhaseKind::Paused:
      return "paused";
    case PhaseKind::Finished:
      return "finished";
  }
  return "?";
}

GamePhase SessionState::phase() const {
  GamePhase p;
  PhaseKind trial_kind = PhaseKind::AwaitHold;
  if (stage == Stage::Crown) trial_kind = PhaseKind::CrownPrompt;
  if (stage == Stage::Target) trial_kind = PhaseKind::TargetActive;
  if (stage != Stage::None) p.finger = finger;
  if (stage == Stage::Target) p.target = target;
  if (finished) {
    p.kind = PhaseKind::Finished;
  } else if (!started) {
    p.kind = PhaseKind::AwaitHold;
  } else if (paused) {
    p.kind = PhaseKind::Paused;
    p.resume = trial_kind;
  } else {
    p.kind = trial_kind;
  }
  return p;
}

namespace {

constexpr std::uint64_t kSpawnStream = 2;

json rect_json(const touch::Rect& r) { return json::array({r.x0, r.y0, r.x1, r.y1}); }

// Per-instant scratch next to the public state.
struct Shared {
  explicit Shared(const SessionConfig& c)
      : config(c), fingers(c.rng_seed), spawns(c.rng_seed, kSpawnStream) {}

  SessionConfig config;
  SessionState state;
  FingerScheduler fingers;
  Pcg32 spawns;

  std::vector<touch::ContactMirror::Change> changes;
  bool play_tick = false;
  bool clock_tick = false;
  bool paused_tick = false;
  bool paused_edge = false;
  bool resumed_edge = false;

  std::uint64_t prompt_instant = 0;
  std::uint64_t crown_tap_instant = 0;
  std::int64_t unexpected = 0;
  std::optional<Target> previous_target;
  bool crown_tapped = false;
  bool trial_done = false;
  bool cut = false;
  bool clocks_done = false;  // the last game's time is up
  std::optional<TrialRecord> last;

  std::int64_t ms(std::uint64_t instant) const {
    return tick_to_ms(static_cast<std::int64_t>(instant), config.tick_hz);
  }
  const GameConfig& game(std::size_t g) const { return config.active().games[g]; }
};

using SharedPtr = std::shared_ptr<Shared>;

Program flag(const SharedPtr& s, bool Shared::*member, Program then_branch) {
  return if_else([s, member](Context&) { return (*s).*member; }, std::move(then_branch));
}

Program empty_event(const char* name) { return generate(name, Payload(json::object())); }

Program watcher(const SharedPtr& s) {
  Program watch = atom([s](Context& ctx) {
    SessionState& st = s->state;
    s->changes = st.contacts.apply(ctx);
    st.hold = touch::sign_hold_status(st.contacts.contacts(), s->config.layout);
    s->play_tick = s->clock_tick = s->paused_tick = s->paused_edge = s->resumed_edge = false;
    if (st.finished || s->clocks_done) return;
    if (st.hold.held) st.started = true;
    if (!st.started) return;
    if (st.hold.held) {
      s->play_tick = true;
      s->resumed_edge = st.paused;
      st.paused = false;
    } else {
      s->paused_tick = true;
      s->paused_edge = !st.paused;
      st.paused = true;
    }
    s->clock_tick = st.hold.held || s->config.count_paused_time;
  });
  return loop(seq({watch, flag(s, &Shared::play_tick, generate(events::kPlayTick)),
                   flag(s, &Shared::clock_tick, generate(events::kClockTick)),
                   flag(s, &Shared::paused_tick, generate(events::kPausedTick)),
                   flag(s, &Shared::paused_edge, empty_event(events::kGamePaused)),
                   flag(s, &Shared::resumed_edge, empty_event(events::kGameResumed)), pause()}));
}

Program game_clock(const SharedPtr& s, std::size_t g) {
  const std::int64_t duration = s->config.duration_ticks(g);
  return loop(seq({await(events::kClockTick), atom([s, g](Context&) { ++s->state.active_ticks[g]; }),
                   generate(events::kProgress,
                            [s, g, duration](Context&) {
                              return Payload(json{{"game", s->game(g).name},
                                                  {"fraction", progress_fraction(s->state.active_ticks[g], duration)}});
                            }),
                   if_else([s, g, duration](Context&) { return s->state.active_ticks[g] >= duration; },
                           seq({atom([s, g](Context&) { s->clocks_done = g + 1 == s->config.active().games.size(); }),
                                generate(events::kTimeUp)})),
                   pause()}));
}

Program trial_loop(const SharedPtr& s, std::size_t g) {
  Program begin_prompt = atom([s](Context& ctx) {
    auto [finger, next] = next_finger(s->fingers);
    s->fingers = next;
    s->state.finger = finger;
    s->state.stage = SessionState::Stage::Crown;
    s->state.target.reset();
    s->prompt_instant = ctx.instant();
    s->unexpected = 0;
  });
  Program show_crown = generate(events::kShowCrown, [s](Context&) {
    return Payload(json{{"finger", std::string(to_string(s->state.finger))},
                        {"hand", s->config.trained_hand == touch::Hand::Left ? "left" : "right"}});
  });
  Program spawn = atom([s, g](Context& ctx) {
    const GameConfig& game = s->game(g);
    Target t = spawn_target(game.target_radius, game.motion, s->config.tick_hz, s->config.layout.play_area,
                            s->previous_target, s->spawns, ctx.instant());
    s->previous_target = t;
    s->state.target = t;
    s->state.target_elapsed = 0;
    s->state.stage = SessionState::Stage::Target;
  });
  Program show_target = generate(events::kShowTarget, [s, g](Context&) {
    const Target& t = *s->state.target;
    return Payload(json{{"game", s->game(g).name},
                        {"x", t.center.x},
                        {"y", t.center.y},
                        {"radius", t.radius},
                        {"motion", to_json(t.motion)},
                        {"bounds", rect_json(t.bounds)}});
  });
  Program hide_target = generate(events::kHideTarget, [s](Context&) {
    return Payload(json{{"reason", std::string(to_string(s->last->outcome))}});
  });
  Program cue = if_else([s](Context&) { return s->last->outcome == Outcome::Hit; },
                        generate(events::kPlayCue, Payload(json{{"cue", s->game(g).cue}})));
  return loop(seq({await(events::kPlayTick), begin_prompt, show_crown, await(events::kCrownTap), spawn, show_target,
                   await(events::kTrialEnd), hide_target, cue}));
}

// Looks at this instant's new contacts. Prompts and targets shown in the
// current instant are not judged until the next one.
Program judge(const SharedPtr& s, std::size_t g) {
  const std::int64_t timeout = s->config.timeout_ticks(g);
  Program look = atom([s, g, timeout](Context& ctx) {
    SessionState& st = s->state;
    const std::uint64_t now = ctx.instant();
    s->crown_tapped = s->trial_done = false;
    const bool crown_live = st.stage == SessionState::Stage::Crown && s->prompt_instant < now;
    const bool target_live = st.stage == SessionState::Stage::Target && st.target->spawn_instant < now;
    if (target_live) ++st.target_elapsed;

    touch::ZoneLayout layout = s->config.layout;
    if (st.stage == SessionState::Stage::Crown) layout.crown_zone = s->config.crown_zone;
    std::optional<touch::Point> hit;
    for (const auto& c : s->changes) {
      if (c.phase != touch::Phase::Down) continue;
      touch::Zone zone = touch::classify(c.position, layout);
      if (crown_live && zone == touch::Zone::Crown && !s->crown_tapped) {
        s->crown_tapped = true;
        s->crown_tap_instant = now;
      } else if (zone == touch::Zone::PlayArea) {
        if (target_live && !hit && target_hit_test(*st.target, st.target_elapsed, c.position) == HitResult::Hit) {
          hit = c.position;
        } else {
          ++s->unexpected;
        }
      }
    }
    if (!target_live || (!hit && st.target_elapsed < timeout)) return;

    TrialRecord r;
    r.game = s->game(g).name;
    r.game_index = g;
    r.finger = st.finger;
    r.prompt_t_ms = s->ms(s->prompt_instant);
    r.crown_tap_t_ms = s->ms(s->crown_tap_instant);
    r.outcome = hit ? Outcome::Hit : Outcome::Timeout;
    r.end_t_ms = s->ms(now);
    r.hit_position = hit;
    if (hit) r.reaction_ms = tick_to_ms(st.target_elapsed, s->config.tick_hz);
    r.target_center = st.target->center;
    r.target_radius = st.target->radius;
    r.target_motion = st.target->motion;
    r.unexpected_contacts = s->unexpected;
    st.records.push_back(r);
    s->last = r;
    st.stage = SessionState::Stage::None;
    s->trial_done = true;
  });
  return loop(seq({await(events::kPlayTick), look,
                   flag(s, &Shared::crown_tapped, generate(events::kCrownTap,
                                                           [s](Context& ctx) {
                                                             return Payload(json{{"t_ms", s->ms(ctx.instant())}});
                                                           })),
                   flag(s, &Shared::trial_done,
                        generate(events::kTrialEnd, [s](Context&) { return Payload(to_json(*s->last)); })),
                   pause()}));
}

Program one_game(const SharedPtr& s, std::size_t g) {
  Program start = atom([s, g](Context&) {
    s->state.game = g;
    s->state.stage = SessionState::Stage::None;
    s->state.target.reset();
    s->previous_target.reset();
  });
  Program end = atom([s](Context&) {
    s->cut = s->state.stage != SessionState::Stage::None;
    s->state.stage = SessionState::Stage::None;
    s->state.target.reset();
  });
  return seq({start, generate(events::kGameStart, Payload(json{{"game", s->game(g).name}})),
              until(events::kTimeUp, par({game_clock(s, g), trial_loop(s, g), judge(s, g)})), end,
              flag(s, &Shared::cut, generate(events::kHideTarget, Payload(json{{"reason", "gameEnd"}}))),
              generate(events::kGameEnd, [s, g](Context&) {
                return Payload(json{{"game", s->game(g).name}, {"active_ticks", s->state.active_ticks[g]}});
              })});
}

}  // namespace

SessionProgram build_session_program(const SessionConfig& config) {
  auto s = std::make_shared<Shared>(config);
  std::vector<Program> games{generate(events::kPlayCue, Payload(json{{"cue", kCuePlaceSigns}}))};
  for (std::size_t g = 0; g < 4; ++g) games.push_back(one_game(s, g));
  games.push_back(atom([s](Context&) { s->state.finished = true; }));
  json summary = json::array();
  for (const GameConfig& game : config.active().games) summary.push_back({{"name", game.name}, {"picture", game.picture}});
  games.push_back(generate(events::kSessionComplete, Payload(json{{"subtheme", config.active().name}, {"games", summary}})));
  games.push_back(generate(events::kPlayCue, Payload(json{{"cue", kCueCongratulations}})));

  Program program = until(events::kSessionComplete, par({watcher(s), seq(std::move(games))}));
  return SessionProgram{program, std::shared_ptr<const SessionState>(s, &s->state)};
}

void declare_session_events(reactive::Machine& machine) {
  touch::TouchGateway::declare_events(machine);
  for (const auto& name : events::ui_events()) machine.declare_event(name);
  for (const auto& name : events::internal_events()) machine.declare_event(name);
}

}  // namespace danse::game
