#include "danse/replay/batch.hpp"

#include <omp.h>

namespace danse::replay {

namespace {

BatchOutcome run_one(const BatchJob& job) {
  BatchOutcome out;
  try {
    ReplayOptions options;
    options.attach_observer = job.attach_observer;
    out.result = replay(job.config, job.samples ? *job.samples : std::vector<touch::TouchSample>{}, options);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<BatchOutcome> run_serial(const std::vector<BatchJob>& jobs) {
  std::vector<BatchOutcome> out;
  out.reserve(jobs.size());
  for (const BatchJob& job : jobs) out.push_back(run_one(job));
  return out;
}

std::vector<BatchOutcome> run_parallel(const std::vector<BatchJob>& jobs, int threads) {
  std::vector<BatchOutcome> out(jobs.size());
  const auto n = static_cast<long>(jobs.size());
  const int t = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(t)
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = run_one(jobs[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace danse::replay
