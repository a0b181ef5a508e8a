#include "danse/telemetry/observer.hpp"

#include "danse/game/session.hpp"

namespace danse::telemetry {

using namespace reactive;

const std::vector<std::string>& observed_events() {
  static const std::vector<std::string> names{game::events::kTrialEnd, game::events::kGamePaused,
                                              game::events::kPausedTick, game::events::kSessionComplete};
  return names;
}

Program build_observer_program(const std::vector<std::string>& events, std::shared_ptr<ObserverLog> log) {
  if (events.empty()) return nothing();
  std::vector<Program> branches;
  for (const std::string& name : events) {
    Program record = atom(
        [log, name](Context& ctx) {
          auto values = ctx.read_values(name);
          log->entries.push_back(ObservedEvent{ctx.instant(), name, values ? **values : ValueList{}});
          if (log->on_record) log->on_record(log->entries.back());
        },
        AtomTiming::EndOfInstant);
    branches.push_back(loop(seq({await(name), record, pause()})));
  }
  return par(std::move(branches));
}

SessionStats collect_stats(const ObserverLog& log, const game::SessionConfig& config) {
  SessionStats s;
  s.config_digest = config_digest(config);
  s.seed = config.rng_seed;
  s.theme = config.theme;
  s.subtheme = config.active().name;
  s.tick_hz = config.tick_hz;
  for (const auto& g : config.active().games) s.games.push_back(g.name);
  for (const ObservedEvent& e : log.entries) {
    if (e.event == game::events::kTrialEnd) {
      for (const Payload& p : e.values) s.trials.push_back(game::trial_from_json(p.json()));
    } else if (e.event == game::events::kGamePaused) {
      ++s.pauses.count;
    } else if (e.event == game::events::kPausedTick) {
      ++s.pauses.paused_ticks;
    } else if (e.event == game::events::kSessionComplete) {
      s.completed = true;
    }
  }
  s.aggregates = aggregate(s.trials, s.games);
  return s;
}

}  // namespace danse::telemetry
