#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "danse/game/config.hpp"
#include "danse/game/session.hpp"
#include "danse/game/trial.hpp"
#include "danse/reactive/machine.hpp"
#include "danse/telemetry/stats.hpp"
#include "danse/touch/touch_sample.hpp"

namespace danse::replay {

/// What the session looked like right after one instant.
struct InstantView {
  bool held = false;
  game::PhaseKind phase = game::PhaseKind::AwaitHold;
  std::size_t contacts = 0;  // live contacts seen by the gateway
  std::size_t mirrored = 0;  // live contacts as rebuilt inside the session
};

struct ReplayOptions {
  bool attach_observer = true;
  /// Receives each instant's JSON trace line (without newline).
  std::function<void(const std::string&)> trace_sink;
  /// Receives each report and the session phase after it; for checks that
  /// need more than the trace line.
  std::function<void(const reactive::InstantReport&, const InstantView&)> report_sink;
  /// Replaces the config seed. Only for harness sanity checks.
  std::optional<std::uint64_t> seed_override;
  bool keep_lines = false;
};

struct ReplayResult {
  std::string trace_digest;  // SHA-256 over the trace lines, each followed by '\n'
  std::string input_digest;  // SHA-256 over the input samples as JSON lines
  std::uint64_t instants = 0;
  bool completed = false;
  std::uint64_t anomalies = 0;
  std::vector<game::TrialRecord> records;  // from the session state
  std::optional<telemetry::SessionStats> stats;  // with the observer attached
  std::vector<std::string> lines;                // when keep_lines
};

std::string input_digest(const std::vector<touch::TouchSample>& samples);

/// Runs the session at tick_hz: samples go to the instant their timestamp
/// rounds to, and the run stops at sessionComplete or after the wall budget.
ReplayResult replay(const game::SessionConfig& config, const std::vector<touch::TouchSample>& samples,
                    const ReplayOptions& options = {});

}  // namespace danse::replay
