#include "danse/replay/replay.hpp"

#include "danse/game/session.hpp"
#include "danse/game/timebase.hpp"
#include "danse/telemetry/digest.hpp"
#include "danse/telemetry/observer.hpp"
#include "danse/touch/gateway.hpp"

namespace danse::replay {

std::string input_digest(const std::vector<touch::TouchSample>& samples) {
  telemetry::Sha256 h;
  for (const auto& s : samples) {
    h.update(touch::to_json_line(s));
    h.update("\n");
  }
  return h.hex();
}

ReplayResult replay(const game::SessionConfig& base_config, const std::vector<touch::TouchSample>& samples,
                    const ReplayOptions& options) {
  game::SessionConfig config = base_config;
  if (options.seed_override) config.rng_seed = *options.seed_override;

  reactive::Machine machine;
  game::declare_session_events(machine);
  game::SessionProgram session = game::build_session_program(config);
  machine.add_program(session.program);
  auto log = std::make_shared<telemetry::ObserverLog>();
  if (options.attach_observer) {
    machine.add_program(telemetry::build_observer_program(telemetry::observed_events(), log));
  }

  touch::TouchGateway gateway;
  telemetry::Sha256 digest;
  ReplayResult result;
  result.input_digest = input_digest(samples);
  const std::uint64_t budget = static_cast<std::uint64_t>(config.wall_budget_ticks());
  std::size_t next = 0;
  while (result.instants < budget) {
    const auto instant = static_cast<std::int64_t>(machine.instant_index());
    while (next < samples.size() && game::ms_to_tick(samples[next].t_ms, config.tick_hz) <= instant) {
      gateway.ingest(samples[next++], machine);
    }
    reactive::InstantReport report = machine.react();
    ++result.instants;
    std::string line = reactive::to_json_line(report);
    digest.update(line);
    digest.update("\n");
    if (options.trace_sink) options.trace_sink(line);
    if (options.report_sink) {
      InstantView view{session.state->hold.held, session.state->phase().kind,
                       gateway.contacts().size(), session.state->contacts.contacts().size()};
      options.report_sink(report, view);
    }
    if (options.keep_lines) result.lines.push_back(std::move(line));
    if (report.present(game::events::kSessionComplete)) {
      result.completed = true;
      break;
    }
  }
  result.trace_digest = digest.hex();
  result.anomalies = gateway.anomalies();
  result.records = session.state->records;
  if (options.attach_observer) {
    telemetry::SessionStats stats = telemetry::collect_stats(*log, config);
    stats.session_id = telemetry::derive_session_id(stats.config_digest, config.rng_seed, result.input_digest);
    result.stats = std::move(stats);
  }
  return result;
}

}  // namespace danse::replay
