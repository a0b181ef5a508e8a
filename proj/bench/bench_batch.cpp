// Serial reference vs OpenMP batch over independent sessions, plus one full session.

#include <benchmark/benchmark.h>

#include <fstream>
#include <memory>
#include <sstream>

#include "danse/replay/batch.hpp"
#include "danse/replay/replay.hpp"
#include "danse/replay/synth.hpp"

using namespace danse;
using nlohmann::json;

namespace {

json fixture(const std::string& name) {
  std::ifstream in(std::string(DANSE_FIXTURE_DIR) + "/" + name);
  return json::parse(in);
}

std::vector<replay::BatchJob> make_jobs(int n) {
  std::vector<replay::BatchJob> jobs;
  for (int i = 0; i < n; ++i) {
    json doc = fixture(i % 2 ? "moving_targets.json" : "nature_sky.json");
    doc["rng_seed"] = static_cast<std::uint64_t>(1000 + i);
    for (auto& g : doc["subthemes"][0]["games"]) g["duration_s"] = 10.0;
    const auto config = game::config_from_json(doc);
    replay::BehaviorModel model;
    model.latency = replay::BehaviorModel::Latency::Uniform;
    model.latency_min_ms = 300;
    model.latency_max_ms = 1200;
    model.hit_probability = 0.8;
    model.seed = static_cast<std::uint64_t>(i);
    jobs.push_back({config, std::make_shared<const std::vector<touch::TouchSample>>(replay::synth_trace(config, model)),
                    true});
  }
  return jobs;
}

void BM_BatchSerial(benchmark::State& state) {
  const auto jobs = make_jobs(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(replay::run_serial(jobs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BatchSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_BatchParallel(benchmark::State& state) {
  const auto jobs = make_jobs(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(replay::run_parallel(jobs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BatchParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_FullSession(benchmark::State& state) {
  const auto config = game::config_from_json(fixture("nature_sky.json"));
  std::ifstream in(std::string(DANSE_FIXTURE_DIR) + "/perfect_trace.jsonl");
  const auto samples = touch::read_trace(in);
  replay::ReplayOptions options;
  options.attach_observer = state.range(0) != 0;
  std::uint64_t instants = 0;
  for (auto _ : state) {
    const auto r = replay::replay(config, samples, options);
    instants += r.instants;
    benchmark::DoNotOptimize(r.trace_digest);
  }
  state.counters["instants/s"] = benchmark::Counter(static_cast<double>(instants), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_FullSession)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
