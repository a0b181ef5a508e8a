#include "program_gen.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace danse::testing {

using namespace danse::reactive;

namespace {

class Builder {
 public:
  Builder(std::uint64_t seed, std::uint64_t permutation_seed, bool permute, const GenOptions& options)
      : rng_(seed),
        perm_rng_(permutation_seed),
        permute_(permute),
        options_(options),
        log_(std::make_shared<ObservationLog>()),
        alphabet_(event_alphabet(options)) {}

  GeneratedProgram build() {
    Program p = node(0);
    return GeneratedProgram{p, log_, describe(p)};
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  const std::string& event() { return alphabet_[static_cast<std::size_t>(pick(0, static_cast<int>(alphabet_.size()) - 1))]; }

  Program record(Observation::Kind kind, int id, const std::string& ev) {
    auto log = log_;
    return atom([log, kind, id, ev](Context& c) {
      Observation o{kind, c.instant(), id, ev, 0, Presence::Unknown, nullptr, {}, false, false};
      o.event_index = c.event(ev).index();
      o.local = c.environment().find(ev) != c.event(ev);
      o.presence = c.presence(ev);
      log->entries.push_back(o);
    });
  }

  Program reader(const std::string& ev, bool end_of_instant) {
    auto log = log_;
    const int id = next_id_++;
    const bool read_values = options_.value_readers;
    return atom(
        [log, id, ev, end_of_instant, read_values](Context& c) {
          Observation o{Observation::Kind::Read, c.instant(), id, ev, 0, Presence::Unknown, nullptr, {}, end_of_instant,
                        false};
          o.event_index = c.event(ev).index();
          o.local = c.environment().find(ev) != c.event(ev);
          o.presence = c.presence(ev);
          if (read_values && o.presence == Presence::Present) {
            auto snapshot = *c.read_values(ev);
            o.snapshot = snapshot.get();
            std::string s;
            for (const Payload& p : *snapshot) s += p.json().dump() + ",";
            o.values = s;
          }
          log->entries.push_back(o);
        },
        end_of_instant ? AtomTiming::EndOfInstant : AtomTiming::Immediate);
  }

  Program leaf() {
    switch (pick(0, 6)) {
      case 0:
        return nothing();
      case 1:
        return pause();
      case 2: {
        const int id = next_id_++;
        return generate(event(), [id](Context& c) { return Payload(static_cast<long long>(c.instant()) * 100000 + id); });
      }
      case 3:
        return generate(event());
      case 4:
        return await(event());
      case 5:
        return reader(event(), false);
      default:
        return reader(event(), true);
    }
  }

  std::vector<Program> children(int depth, int count) {
    std::vector<Program> out;
    for (int i = 0; i < count; ++i) out.push_back(node(depth + 1));
    return out;
  }

  Program node(int depth) {
    if (depth >= options_.max_depth || pick(0, 9) < 3) return leaf();
    switch (pick(0, options_.local_events ? 6 : 5)) {
      case 0:
        return seq(children(depth, pick(2, 3)));
      case 1: {
        auto branches = children(depth, pick(2, 3));
        if (permute_) std::shuffle(branches.begin(), branches.end(), perm_rng_);
        return par(std::move(branches));
      }
      case 2:
        return loop(seq({node(depth + 1), pause()}));
      case 3:
        return repeat(static_cast<std::size_t>(pick(0, 3)), node(depth + 1));
      case 4: {
        const int id = next_id_++;
        const std::string& ev = event();
        Program then_branch = node(depth + 1);
        Program else_branch = node(depth + 1);
        return seq({record(Observation::Kind::GuardStarted, id, ev),
                    when_present_else(ev, seq({record(Observation::Kind::ThenEntered, id, ev), then_branch}),
                                      seq({record(Observation::Kind::ElseEntered, id, ev), else_branch}))});
      }
      case 5: {
        const int id = next_id_++;
        const std::string& ev = event();
        Program body = node(depth + 1);
        Program handler = node(depth + 1);
        return seq({record(Observation::Kind::GuardStarted, id, ev),
                    until(ev, body, seq({record(Observation::Kind::HandlerEntered, id, ev), handler}))});
      }
      default:
        return local_event(event(), node(depth + 1));
    }
  }

  std::mt19937_64 rng_;
  std::mt19937_64 perm_rng_;
  bool permute_;
  GenOptions options_;
  std::shared_ptr<ObservationLog> log_;
  std::vector<std::string> alphabet_;
  int next_id_ = 0;
};

}  // namespace

std::vector<std::string> event_alphabet(const GenOptions& options) {
  std::vector<std::string> out;
  for (int i = 0; i < options.alphabet; ++i) out.push_back(std::string(1, static_cast<char>('A' + i)));
  return out;
}

GeneratedProgram generate_program(std::uint64_t seed, const GenOptions& options) {
  return Builder(seed, 0, false, options).build();
}

GeneratedProgram generate_program_permuted(std::uint64_t seed, std::uint64_t permutation_seed,
                                           const GenOptions& options) {
  return Builder(seed, permutation_seed, true, options).build();
}

Schedule generate_schedule(std::uint64_t seed, int instants, const GenOptions& options) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  auto alphabet = event_alphabet(options);
  Schedule schedule(static_cast<std::size_t>(instants));
  for (int i = 0; i < instants; ++i) {
    for (std::size_t e = 0; e < alphabet.size(); ++e) {
      if (std::uniform_int_distribution<int>(0, 9)(rng) < 2) {
        bool with_value = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
        schedule[static_cast<std::size_t>(i)].push_back(Injection{alphabet[e], with_value, i * 100000 + 99999});
      }
    }
  }
  return schedule;
}

RunResult run_generated(const GeneratedProgram& program, const Schedule& schedule, const GenOptions& options) {
  Machine m;
  for (const auto& name : event_alphabet(options)) m.declare_event(name);
  program.log->entries.clear();
  m.add_program(program.program);
  RunResult result;
  result.log = program.log;
  for (const auto& step : schedule) {
    for (const Injection& inj : step) {
      if (inj.has_value) {
        m.inject_event(inj.event, Payload(inj.value));
      } else {
        m.inject_event(inj.event);
      }
    }
    InstantReport r = m.react();
    result.trace_lines.push_back(to_json_line(r));
    result.reports.push_back(std::move(r));
  }
  return result;
}

std::vector<std::string> check_invariants(const RunResult& run) {
  std::vector<std::string> violations;
  auto fail = [&](const std::string& what, const Observation& o) {
    std::ostringstream s;
    s << what << " (instant " << o.instant << ", node " << o.node << ", event " << o.event << ")";
    violations.push_back(s.str());
  };
  auto emitted_at = [&](std::uint64_t instant, const std::string& ev) -> const ValueList* {
    if (instant >= run.reports.size()) return nullptr;
    auto it = run.reports[instant].emitted.find(ev);
    return it == run.reports[instant].emitted.end() ? nullptr : &it->second;
  };
  auto serialize = [](const ValueList& list) {
    std::string s;
    for (const Payload& p : list) s += p.json().dump() + ",";
    return s;
  };

  struct Seen {
    bool present = false;
    bool absent = false;
    const void* snapshot = nullptr;
    std::string values;
    bool has_values = false;
  };
  std::map<std::pair<std::uint64_t, std::uint32_t>, Seen> seen;
  // Latest guard start per instrumented node.
  std::map<int, std::uint64_t> guard_start;

  for (const Observation& o : run.log->entries) {
    switch (o.kind) {
      case Observation::Kind::Read: {
        Seen& s = seen[{o.instant, o.event_index}];
        if (o.presence == Presence::Present) {
          if (s.absent) fail("present after absent verdict", o);
          s.present = true;
          if (!o.values.empty() || o.snapshot != nullptr) {
            if (s.has_values && (s.snapshot != o.snapshot || s.values != o.values)) {
              fail("readers saw different value lists", o);
            }
            s.has_values = true;
            s.snapshot = o.snapshot;
            s.values = o.values;
            // Value lifetime: every payload carries the instant it was made in.
            std::istringstream in(o.values);
            std::string item;
            while (std::getline(in, item, ',')) {
              if (!item.empty() && item != "null" && std::stoll(item) / 100000 != static_cast<long long>(o.instant)) {
                fail("value from another instant", o);
              }
            }
          }
        } else if (o.presence == Presence::Absent) {
          if (s.present) fail("absent after present verdict", o);
          s.absent = true;
        } else if (s.present) {
          fail("presence went back to unknown", o);
        } else if (o.end_of_instant) {
          fail("unknown status at end of instant", o);
        }
        // End-of-instant readers of global events must agree with the report.
        const ValueList* emitted = emitted_at(o.instant, o.event);
        if (o.end_of_instant && !o.local) {
          if ((o.presence == Presence::Present) != (emitted != nullptr)) fail("report disagrees with reader", o);
          if (emitted != nullptr && !o.values.empty() && serialize(*emitted) != o.values) {
            fail("report values differ from reader", o);
          }
        }
        break;
      }
      case Observation::Kind::GuardStarted:
        guard_start[o.node] = o.instant;
        break;
      case Observation::Kind::ThenEntered: {
        auto it = guard_start.find(o.node);
        if (it == guard_start.end()) {
          fail("then-branch without guard", o);
        } else if (o.presence != Presence::Present) {
          fail("then-branch entered without presence", o);
        }
        break;
      }
      case Observation::Kind::ElseEntered: {
        auto it = guard_start.find(o.node);
        if (it == guard_start.end()) {
          fail("else-branch without guard", o);
        } else if (o.instant <= it->second) {
          fail("else-branch entered in the instant that resolved absence", o);
        } else if (o.instant != it->second + 1) {
          fail("else-branch delayed by more than one instant", o);
        } else if (!o.local && emitted_at(it->second, o.event) != nullptr) {
          fail("else-branch taken although the event was present", o);
        }
        break;
      }
      case Observation::Kind::HandlerEntered: {
        auto it = guard_start.find(o.node);
        if (it == guard_start.end()) {
          fail("handler without guard", o);
        } else if (o.instant <= it->second) {
          fail("handler entered in the instant of preemption", o);
        } else if (!o.local && emitted_at(o.instant - 1, o.event) == nullptr) {
          fail("handler entered without a preempting presence in the previous instant", o);
        }
        break;
      }
    }
  }
  return violations;
}

}  // namespace danse::testing
