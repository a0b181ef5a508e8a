#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "danse/reactive/event.hpp"
#include "danse/reactive/payload.hpp"
#include "danse/reactive/program.hpp"

namespace danse::reactive {

enum class ErrorKind {
  InstantaneousLoop,
  ActionFailure,
  /// A value was generated for an event whose list had already been read in
  /// the same instant.
  CausalityViolation,
};

struct RuntimeError {
  ErrorKind kind;
  ProgramHandle program;
  std::string message;

  friend bool operator==(const RuntimeError&, const RuntimeError&) = default;
};

struct InstantReport {
  std::uint64_t instant = 0;
  /// Every non-local event present at the end of the instant, keyed by name.
  std::map<std::string, ValueList> emitted;
  /// Top-level programs that completed (or were killed) during the instant,
  /// in addition order.
  std::vector<ProgramHandle> terminated;
  std::vector<RuntimeError> errors;

  bool present(std::string_view event) const { return emitted.find(std::string(event)) != emitted.end(); }

  friend bool operator==(const InstantReport&, const InstantReport&) = default;
};

/// One JSON line: `{"instant":N,"emitted":{"name":[...]},"terminated":[...]}`.
/// Event names are sorted and payload objects use sorted keys, so equal
/// reports always serialize to the same bytes.
std::string to_json_line(const InstantReport& report);

/// Per-instant status and values of every event of a machine.
class Environment {
 public:
  std::uint64_t instant() const { return instant_; }

  Presence presence(EventId id) const;

  /// Snapshot of the values of a present event; nullopt while the event is
  /// unknown or once it is absent. Reading a present event freezes its list
  /// for the rest of the instant.
  std::optional<ValueSnapshot> read_values(EventId id) const;

  std::optional<EventId> find(std::string_view name) const;
  const std::string& name(EventId id) const;
  std::size_t size() const { return slots_.size(); }

 private:
  friend class Machine;
  friend struct EnvironmentAccess;

  struct Slot {
    std::string name;
    bool local = false;
    Presence presence = Presence::Unknown;
    mutable bool frozen = false;
    std::shared_ptr<ValueList> values;
  };

  EventId declare(std::string_view name);
  EventId declare_local(std::string_view name);
  void begin_instant(std::uint64_t instant);
  /// Marks the event present and appends `value`. Returns false when the
  /// list is frozen and a value was supplied.
  bool emit(EventId id, const std::optional<Payload>& value);
  void resolve_absent();
  const Slot& slot(EventId id) const;

  std::vector<Slot> slots_;
  std::map<std::string, EventId, std::less<>> global_names_;
  std::uint64_t instant_ = 0;
  std::uint64_t new_presences_ = 0;
};

/// What an Atom, Predicate or Producer sees. Name lookups honour local event
/// scopes of the calling node.
class Context {
 public:
  std::uint64_t instant() const { return env_.instant(); }
  ProgramHandle program() const { return program_; }

  Presence presence(EventId id) const { return env_.presence(id); }
  Presence presence(std::string_view name) const { return env_.presence(event(name)); }
  std::optional<ValueSnapshot> read_values(EventId id) const { return env_.read_values(id); }
  std::optional<ValueSnapshot> read_values(std::string_view name) const {
    return env_.read_values(event(name));
  }

  /// Throws UnknownEvent for names not declared on the machine.
  EventId event(std::string_view name) const;

  const Environment& environment() const { return env_; }

  /// Chain of local event declarations enclosing a node.
  struct Scope;

 private:
  friend struct Runtime;
  Context(const Environment& env, const Scope* scope, ProgramHandle program)
      : env_(env), scope_(scope), program_(program) {}

  const Environment& env_;
  const Scope* scope_;
  ProgramHandle program_;
};

/// A synchronous reactive machine: a clock driving a set of parallel programs
/// through successive logical instants.
///
/// `inject_event` may be called from any thread. Every other member requires
/// external serialization.
class Machine {
 public:
  Machine();
  ~Machine();
  Machine(Machine&&) noexcept;
  Machine& operator=(Machine&&) noexcept;
  Machine(const Machine&) = delete;
  Machine& operator=(const Machine&) = delete;

  /// Interns `name`; repeated calls return the same id.
  EventId declare_event(std::string_view name);
  std::optional<EventId> find_event(std::string_view name) const;

  /// Adds `program` to the top-level parallel set. It first runs at the next
  /// reaction. Throws std::logic_error when called from inside a reaction.
  ProgramHandle add_program(const Program& program);

  /// Queues `event` (with an optional value) for the next reaction.
  void inject_event(EventId event, std::optional<Payload> value = std::nullopt);
  void inject_event(std::string_view event, std::optional<Payload> value = std::nullopt);

  /// Runs one logical instant to quiescence.
  InstantReport react();

  std::uint64_t instant_index() const;
  std::size_t program_count() const;
  bool is_alive(ProgramHandle handle) const;
  const Environment& environment() const;

  /// Receives every report right after its instant completes. Used for trace
  /// dumping and digests.
  void set_trace_sink(std::function<void(const InstantReport&)> sink);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace danse::reactive
