#include <gtest/gtest.h>

#include <set>

#include "program_gen.hpp"

namespace danse::testing {
namespace {

TEST(ReactiveProperties, RepeatedRunsAreIdentical) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Schedule schedule = generate_schedule(seed, 50);
    RunResult a = run_generated(generate_program(seed), schedule, {});
    RunResult b = run_generated(generate_program(seed), schedule, {});
    ASSERT_EQ(a.trace_lines, b.trace_lines) << generate_program(seed).text;
    ASSERT_EQ(a.reports, b.reports);
  }
}

TEST(ReactiveProperties, CoherenceMonotonicityAndDeferredAbsence) {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    GeneratedProgram program = generate_program(seed);
    RunResult run = run_generated(program, generate_schedule(seed, 30), {});
    auto violations = check_invariants(run);
    ASSERT_TRUE(violations.empty()) << program.text << "\n" << violations.front();
  }
}

TEST(ReactiveProperties, ParBranchOrderDoesNotChangePresence) {
  GenOptions options;
  options.value_readers = false;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Schedule schedule = generate_schedule(seed, 30, options);
    RunResult base = run_generated(generate_program(seed, options), schedule, options);
    for (std::uint64_t perm = 1; perm <= 3; ++perm) {
      GeneratedProgram permuted = generate_program_permuted(seed, perm, options);
      RunResult other = run_generated(permuted, schedule, options);
      for (std::size_t i = 0; i < base.reports.size(); ++i) {
        std::set<std::string> lhs;
        std::set<std::string> rhs;
        for (const auto& [name, v] : base.reports[i].emitted) lhs.insert(name);
        for (const auto& [name, v] : other.reports[i].emitted) rhs.insert(name);
        ASSERT_EQ(lhs, rhs) << "seed " << seed << " instant " << i << "\n" << permuted.text;
        ASSERT_EQ(base.reports[i].terminated, other.reports[i].terminated);
      }
    }
  }
}

TEST(ReactiveProperties, GeneratedProgramsNeverReportLoops) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    RunResult run = run_generated(generate_program(seed), generate_schedule(seed, 30), {});
    for (const auto& r : run.reports) {
      for (const auto& e : r.errors) {
        ASSERT_NE(e.kind, reactive::ErrorKind::InstantaneousLoop) << generate_program(seed).text;
      }
    }
  }
}

}  // namespace
}  // namespace danse::testing

namespace danse::testing {
namespace {

// Guards against a generator that silently stops exercising the checks.
TEST(ReactiveProperties, GeneratorCoversTheInterestingCases) {
  std::size_t else_entries = 0, handler_entries = 0, shared_reads = 0, causality = 0, eoi_reads = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    RunResult run = run_generated(generate_program(seed), generate_schedule(seed, 30), {});
    for (const auto& o : run.log->entries) {
      else_entries += o.kind == Observation::Kind::ElseEntered;
      handler_entries += o.kind == Observation::Kind::HandlerEntered;
      shared_reads += o.kind == Observation::Kind::Read && o.snapshot != nullptr;
      eoi_reads += o.kind == Observation::Kind::Read && o.end_of_instant;
    }
    for (const auto& r : run.reports) {
      for (const auto& e : r.errors) causality += e.kind == reactive::ErrorKind::CausalityViolation;
    }
  }
  std::printf("else=%zu handler=%zu value-reads=%zu eoi-reads=%zu causality=%zu\n", else_entries, handler_entries,
              shared_reads, eoi_reads, causality);
  EXPECT_GT(else_entries, 500u);
  EXPECT_GT(handler_entries, 100u);
  EXPECT_GT(shared_reads, 1000u);
  EXPECT_GT(eoi_reads, 1000u);
}

}  // namespace
}  // namespace danse::testing
