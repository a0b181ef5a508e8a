// Headless harness: run, synth, verify, export.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "danse/game/config.hpp"
#include "danse/replay/export.hpp"
#include "danse/replay/replay.hpp"
#include "danse/replay/synth.hpp"
#include "danse/replay/verify.hpp"
#include "danse/telemetry/spool.hpp"
#include "danse/telemetry/upload.hpp"
#include "danse/touch/touch_sample.hpp"

using namespace danse;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kAssertion = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::stringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

game::SessionConfig read_config(const std::string& path) {
  try {
    return game::load_config(slurp(path));
  } catch (const game::ConfigError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<touch::TouchSample> read_samples(const std::string& path) {
  std::istringstream in(slurp(path));
  try {
    return touch::read_trace(in);
  } catch (const touch::TraceError& e) {
    throw InputError(path + ": " + e.what());
  }
}

/// Writes to `path`, or stdout for "-".
template <class F>
void with_output(const std::string& path, F&& write) {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  write(out);
  if (!out.flush()) throw InputError("write failed: " + path);
}

void only_one_stdin(std::initializer_list<std::string> paths) {
  int n = 0;
  for (const auto& p : paths) n += p == "-";
  if (n > 1) throw InputError("only one input may come from stdin");
}

struct RunArgs {
  std::string config, trace, collect, spool, trace_out;
  bool no_observer = false;
};

int cmd_run(const RunArgs& a) {
  only_one_stdin({a.config, a.trace});
  const game::SessionConfig config = read_config(a.config);
  const auto samples = read_samples(a.trace);

  std::ofstream trace_file;
  std::ostream* trace_out = nullptr;
  if (a.trace_out == "-") {
    trace_out = &std::cout;
  } else if (!a.trace_out.empty()) {
    trace_file.open(a.trace_out, std::ios::binary | std::ios::trunc);
    if (!trace_file) throw InputError("cannot write " + a.trace_out);
    trace_out = &trace_file;
  }

  replay::ReplayOptions options;
  options.attach_observer = !a.no_observer;
  if (trace_out) options.trace_sink = [trace_out](const std::string& line) { *trace_out << line << '\n'; };
  const replay::ReplayResult r = replay::replay(config, samples, options);
  if (trace_out) trace_out->flush();

  json summary{{"completed", r.completed},
               {"instants", r.instants},
               {"trace_digest", r.trace_digest},
               {"input_digest", r.input_digest},
               {"anomalies", r.anomalies}};
  int status = kOk;
  if (r.stats) {
    summary["session_id"] = r.stats->session_id;
    summary["stats"] = telemetry::to_json(*r.stats);
    // Flag beats environment beats config.
    const std::string endpoint =
        a.collect.empty() ? telemetry::resolve_endpoint(config.telemetry.endpoint) : a.collect;
    const std::string spool = a.spool.empty() ? config.telemetry.spool_dir : a.spool;
    json upload{{"spool", spool}, {"endpoint", endpoint.empty() ? json(nullptr) : json(endpoint)}};
    try {
      if (endpoint.empty()) {
        telemetry::SpoolStore(spool).put(*r.stats);
        upload["results"] = json::array();
      } else {
        telemetry::Uploader uploader(spool, std::make_unique<telemetry::HttpTransport>(endpoint),
                                     telemetry::system_clock_ms);
        uploader.submit(*r.stats);
        json results = json::array();
        for (const auto& f : uploader.drain()) {
          results.push_back({{"id", f.id},
                             {"attempted", f.attempted},
                             {"delivered", f.delivered},
                             {"status", f.status},
                             {"error", f.error},
                             {"attempts", f.attempts},
                             {"next_due_ms", f.next_due_ms}});
        }
        upload["results"] = results;
        for (const auto& e : uploader.errors()) {
          std::cerr << "danse: spool: " << e << '\n';
          status = kInputError;
        }
      }
    } catch (const std::exception& e) {
      std::cerr << "danse: spool: " << e.what() << '\n';
      upload["error"] = e.what();
      status = kInputError;
    }
    summary["upload"] = upload;
  }
  std::cout << summary.dump() << std::endl;
  return status;
}

int cmd_synth(const std::string& config_path, const std::string& model_path, const std::string& out) {
  only_one_stdin({config_path, model_path});
  const game::SessionConfig config = read_config(config_path);
  replay::BehaviorModel model;
  try {
    model = replay::load_model(slurp(model_path));
  } catch (const replay::ModelError& e) {
    throw InputError(model_path + ": " + e.what());
  }
  const auto samples = replay::synth_trace(config, model);
  with_output(out, [&](std::ostream& o) { touch::write_trace(o, samples); });
  if (out != "-") std::cout << json{{"samples", samples.size()}, {"out", out}}.dump() << std::endl;
  return kOk;
}

int cmd_verify(const std::string& config_path, const std::string& trace_path, int runs, bool mutant) {
  only_one_stdin({config_path, trace_path});
  if (runs < 2) throw InputError("--runs must be at least 2");
  const game::SessionConfig config = read_config(config_path);
  const auto samples = read_samples(trace_path);
  const replay::VerifyReport report = replay::verify(config, samples, {runs, mutant});
  std::cout << replay::to_json(report).dump() << std::endl;
  if (report.identical()) return kOk;
  const auto& d = *report.divergence;
  std::cerr << "danse: run " << d.run << " diverged at instant " << d.instant << "\n  expected: " << d.expected
            << "\n  actual:   " << d.actual << '\n';
  return kAssertion;
}

int cmd_export(const std::string& spool, const std::string& out) {
  json doc;
  try {
    doc = replay::export_spool(spool);
  } catch (const telemetry::SpoolError& e) {
    throw InputError(e.what());
  }
  with_output(out, [&](std::ostream& o) { o << doc.dump() << '\n'; });
  if (out != "-") std::cout << json{{"sessions", doc["sessions"].size()}, {"out", out}}.dump() << std::endl;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replay, synthesize and verify touch-training sessions."};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "replay a touch trace headlessly");
  run_cmd->add_option("--config", run.config, "session config (JSON)")->required();
  run_cmd->add_option("--trace", run.trace, "touch trace (JSON Lines)")->required();
  run_cmd->add_option("--collect", run.collect, "collect endpoint, http://host[:port][/prefix]");
  run_cmd->add_option("--spool", run.spool, "spool directory");
  run_cmd->add_option("--trace-out", run.trace_out, "write instant reports (JSON Lines)");
  run_cmd->add_flag("--no-observer", run.no_observer, "do not attach the telemetry observer");

  std::string config, model, out, trace, spool;
  int runs = 2;
  bool mutant = false;
  auto* synth_cmd = app.add_subcommand("synth", "generate a trace from a behavior model");
  synth_cmd->add_option("--config", config)->required();
  synth_cmd->add_option("--model", model)->required();
  synth_cmd->add_option("--out", out)->required();

  auto* verify_cmd = app.add_subcommand("verify", "replay several times and compare traces");
  verify_cmd->add_option("--config", config)->required();
  verify_cmd->add_option("--trace", trace)->required();
  verify_cmd->add_option("--runs", runs)->required();
  verify_cmd->add_flag("--mutant-wallclock-seed", mutant, "seed later runs from the clock (self-check)");

  auto* export_cmd = app.add_subcommand("export", "dump spooled stats");
  export_cmd->add_option("--spool", spool)->required();
  export_cmd->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return kInputError;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*synth_cmd) return cmd_synth(config, model, out);
    if (*verify_cmd) return cmd_verify(config, trace, runs, mutant);
    if (*export_cmd) return cmd_export(spool, out);
  } catch (const InputError& e) {
    std::cerr << "danse: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "danse: " << e.what() << '\n';
    return kAssertion;
  }
  return kInputError;
}
