#include "danse/replay/verify.hpp"

#include <chrono>

#include "danse/replay/replay.hpp"

namespace danse::replay {

VerifyReport verify(const game::SessionConfig& config, const std::vector<touch::TouchSample>& samples,
                    const VerifyOptions& options) {
  VerifyReport report;
  report.runs = options.runs;
  std::vector<std::string> reference;
  for (int run = 0; run < options.runs; ++run) {
    ReplayOptions ro;
    ro.attach_observer = run % 2 == 0;
    if (run == 0) {
      ro.keep_lines = true;
    } else {
      if (options.mutant_wallclock_seed) {
        ro.seed_override = static_cast<std::uint64_t>(std::chrono::system_clock::now().time_since_epoch().count());
      }
      std::uint64_t instant = 0;
      ro.trace_sink = [&](const std::string& line) {
        if (!report.divergence) {
          if (instant >= reference.size()) {
            report.divergence = Divergence{run, instant, "", line};
          } else if (reference[instant] != line) {
            report.divergence = Divergence{run, instant, reference[instant], line};
          }
        }
        ++instant;
      };
    }
    ReplayResult r = replay(config, samples, ro);
    if (run == 0) {
      reference = std::move(r.lines);
      report.reference_digest = r.trace_digest;
    } else if (!report.divergence && r.instants < reference.size()) {
      report.divergence = Divergence{run, r.instants, reference[r.instants], ""};
    }
    report.digests.push_back(r.trace_digest);
  }
  return report;
}

nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json j{{"runs", r.runs},
                   {"identical", r.identical()},
                   {"reference_digest", r.reference_digest},
                   {"digests", r.digests}};
  if (r.divergence) {
    j["divergence"] = {{"run", r.divergence->run},
                       {"instant", r.divergence->instant},
                       {"expected", r.divergence->expected},
                       {"actual", r.divergence->actual}};
  } else {
    j["divergence"] = nullptr;
  }
  return j;
}

}  // namespace danse::replay
