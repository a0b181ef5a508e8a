#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "danse/game/config.hpp"
#include "danse/reactive/program.hpp"
#include "danse/telemetry/stats.hpp"

namespace danse::telemetry {

struct ObservedEvent {
  std::uint64_t instant = 0;
  std::string event;
  reactive::ValueList values;
};

/// Filled by an observer program, read between reactions.
struct ObserverLog {
  std::vector<ObservedEvent> entries;
  /// Called for each entry after it is appended. May throw: only the
  /// observer branch that recorded the entry dies.
  std::function<void(const ObservedEvent&)> on_record;
};

/// Events the stats need: trial ends, pauses, paused ticks, session end.
const std::vector<std::string>& observed_events();

/// For every event of `events`, a branch that waits for it and records its
/// value list at the end of the instant. Generates nothing. An empty list
/// gives an inert program.
reactive::Program build_observer_program(const std::vector<std::string>& events, std::shared_ptr<ObserverLog> log);

/// Builds stats from what an observer of observed_events() recorded. The
/// session id is left empty; see derive_session_id.
SessionStats collect_stats(const ObserverLog& log, const game::SessionConfig& config);

}  // namespace danse::telemetry
