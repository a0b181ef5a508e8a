#include "danse/reactive/machine.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <type_traits>
#include <utility>

namespace danse::reactive {

// ---------------------------------------------------------------------------
// Environment

namespace {
const ValueSnapshot& empty_values() {
  static const ValueSnapshot kEmpty = std::make_shared<const ValueList>();
  return kEmpty;
}
}  // namespace

const Environment::Slot& Environment::slot(EventId id) const {
  if (id.index() >= slots_.size()) {
    throw UnknownEvent("unknown event id " + std::to_string(id.index()));
  }
  return slots_[id.index()];
}

Presence Environment::presence(EventId id) const { return slot(id).presence; }

std::optional<ValueSnapshot> Environment::read_values(EventId id) const {
  const Slot& s = slot(id);
  if (s.presence != Presence::Present) return std::nullopt;
  s.frozen = true;
  if (!s.values) return empty_values();
  return s.values;
}

std::optional<EventId> Environment::find(std::string_view name) const {
  auto it = global_names_.find(name);
  if (it == global_names_.end()) return std::nullopt;
  return it->second;
}

const std::string& Environment::name(EventId id) const { return slot(id).name; }

EventId Environment::declare(std::string_view name) {
  if (auto found = find(name)) return *found;
  EventId id(static_cast<std::uint32_t>(slots_.size()));
  slots_.push_back(Slot{std::string(name), false, Presence::Unknown, false, nullptr});
  global_names_.emplace(std::string(name), id);
  return id;
}

EventId Environment::declare_local(std::string_view name) {
  EventId id(static_cast<std::uint32_t>(slots_.size()));
  slots_.push_back(Slot{std::string(name), true, Presence::Unknown, false, nullptr});
  return id;
}

void Environment::begin_instant(std::uint64_t instant) {
  instant_ = instant;
  new_presences_ = 0;
  for (Slot& s : slots_) {
    s.presence = Presence::Unknown;
    s.frozen = false;
    s.values.reset();
  }
}

bool Environment::emit(EventId id, const std::optional<Payload>& value) {
  Slot& s = slots_.at(id.index());
  if (s.presence != Presence::Present) {
    s.presence = Presence::Present;
    ++new_presences_;
  }
  if (!value) return true;
  if (s.frozen) return false;
  if (!s.values) s.values = std::make_shared<ValueList>();
  s.values->push_back(*value);
  return true;
}

void Environment::resolve_absent() {
  for (Slot& s : slots_) {
    if (s.presence == Presence::Unknown) s.presence = Presence::Absent;
  }
}

// ---------------------------------------------------------------------------
// Context

struct Context::Scope {
  std::string name;
  EventId id;
  const Scope* parent;
};

EventId Context::event(std::string_view name) const {
  for (const Scope* s = scope_; s != nullptr; s = s->parent) {
    if (s->name == name) return s->id;
  }
  if (auto id = env_.find(name)) return *id;
  throw UnknownEvent("unknown event '" + std::string(name) + "'");
}

struct EnvironmentAccess {
  static EventId declare(Environment& env, std::string_view name) { return env.declare(name); }
  static EventId declare_local(Environment& env, std::string_view name) { return env.declare_local(name); }
  static bool emit(Environment& env, EventId id, const std::optional<Payload>& value) { return env.emit(id, value); }
};

// ---------------------------------------------------------------------------
// Runtime tasks

namespace {

constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

enum class Status { Term, Stop, Susp };

/// Thrown to unwind a branch that must die; caught by the nearest enclosing
/// Par branch or by the machine for a top-level program.
struct BranchKilled {};

/// Liveness flag of one Par branch or top-level program. End-of-instant
/// actions hold a pointer to the nearest one so a late failure can kill it.
struct Slot {
  bool killed = false;
};

}  // namespace

struct Runtime {
  explicit Runtime(Environment& e) : env(e) {}

  Environment& env;
  bool eoi = false;
  ProgramHandle current;
  std::vector<RuntimeError> errors;

  struct Deferred {
    const Action* action;
    const Context::Scope* scope;
    Slot* slot;
    ProgramHandle program;
  };
  std::vector<Deferred> deferred;

  std::uint64_t instant() const { return env.instant(); }

  Context context(const Context::Scope* scope) const { return Context(env, scope, current); }
  Context context(const Context::Scope* scope, ProgramHandle program) const {
    return Context(env, scope, program);
  }

  [[noreturn]] void fail(ErrorKind kind, std::string message) {
    errors.push_back(RuntimeError{kind, current, std::move(message)});
    throw BranchKilled{};
  }
};

namespace {

std::string describe_exception() {
  try {
    throw;
  } catch (const std::exception& e) {
    return e.what();
  } catch (...) {
    return "non-standard exception";
  }
}

class Task {
 public:
  virtual ~Task() = default;
  virtual Status activate(Runtime& rt) = 0;
  /// Returns the task to its initial state, ready for re-entry.
  virtual void reset() = 0;
};

using TaskPtr = std::unique_ptr<Task>;

class NothingTask final : public Task {
 public:
  Status activate(Runtime&) override { return Status::Term; }
  void reset() override {}
};

class AtomTask final : public Task {
 public:
  AtomTask(const node::Atom& n, const Context::Scope* scope, Slot* slot) : node_(n), scope_(scope), slot_(slot) {}

  Status activate(Runtime& rt) override {
    if (node_.timing == AtomTiming::EndOfInstant) {
      rt.deferred.push_back({&node_.action, scope_, slot_, rt.current});
      return Status::Term;
    }
    try {
      Context ctx = rt.context(scope_);
      node_.action(ctx);
    } catch (...) {
      rt.fail(ErrorKind::ActionFailure, describe_exception());
    }
    return Status::Term;
  }
  void reset() override {}

 private:
  const node::Atom& node_;
  const Context::Scope* scope_;
  Slot* slot_;
};

class PauseTask final : public Task {
 public:
  Status activate(Runtime&) override {
    if (paused_) return Status::Term;
    paused_ = true;
    return Status::Stop;
  }
  void reset() override { paused_ = false; }

 private:
  bool paused_ = false;
};

class SeqTask final : public Task {
 public:
  explicit SeqTask(std::vector<TaskPtr> steps) : steps_(std::move(steps)) {}

  Status activate(Runtime& rt) override {
    while (index_ < steps_.size()) {
      Status s = steps_[index_]->activate(rt);
      if (s != Status::Term) return s;
      ++index_;
    }
    return Status::Term;
  }
  void reset() override {
    index_ = 0;
    for (auto& s : steps_) s->reset();
  }

 private:
  std::vector<TaskPtr> steps_;
  std::size_t index_ = 0;
};

class ParTask final : public Task {
 public:
  struct Branch {
    TaskPtr task;
    Slot slot;
    bool done = false;
    std::uint64_t stopped_at = kNever;
  };

  explicit ParTask(std::vector<std::unique_ptr<Branch>> branches) : branches_(std::move(branches)) {}

  Status activate(Runtime& rt) override {
    bool all_done = true;
    bool any_susp = false;
    for (auto& b : branches_) {
      if (b->done) continue;
      if (b->slot.killed) {
        b->done = true;
        continue;
      }
      all_done = false;
      if (b->stopped_at == rt.instant()) continue;
      Status s;
      try {
        s = b->task->activate(rt);
      } catch (const BranchKilled&) {
        b->slot.killed = true;
        b->done = true;
        continue;
      }
      if (s == Status::Term) {
        b->done = true;
      } else if (s == Status::Stop) {
        b->stopped_at = rt.instant();
      } else {
        any_susp = true;
      }
    }
    if (all_done || std::all_of(branches_.begin(), branches_.end(), [](const auto& b) { return b->done; })) {
      return Status::Term;
    }
    return any_susp ? Status::Susp : Status::Stop;
  }

  void reset() override {
    for (auto& b : branches_) {
      b->task->reset();
      b->slot.killed = false;
      b->done = false;
      b->stopped_at = kNever;
    }
  }

 private:
  std::vector<std::unique_ptr<Branch>> branches_;
};

class LoopTask final : public Task {
 public:
  explicit LoopTask(TaskPtr body) : body_(std::move(body)) {}

  Status activate(Runtime& rt) override {
    for (;;) {
      Status s = body_->activate(rt);
      if (s != Status::Term) return s;
      if (last_termination_ == rt.instant()) {
        rt.fail(ErrorKind::InstantaneousLoop, "loop body terminated twice in one instant");
      }
      last_termination_ = rt.instant();
      body_->reset();
    }
  }
  void reset() override {
    body_->reset();
    last_termination_ = kNever;
  }

 private:
  TaskPtr body_;
  std::uint64_t last_termination_ = kNever;
};

class RepeatTask final : public Task {
 public:
  RepeatTask(std::size_t count, TaskPtr body) : count_(count), body_(std::move(body)) {}

  Status activate(Runtime& rt) override {
    while (done_ < count_) {
      Status s = body_->activate(rt);
      if (s != Status::Term) return s;
      ++done_;
      body_->reset();
    }
    return Status::Term;
  }
  void reset() override {
    done_ = 0;
    body_->reset();
  }

 private:
  std::size_t count_;
  std::size_t done_ = 0;
  TaskPtr body_;
};

class GenerateTask final : public Task {
 public:
  GenerateTask(EventId event, const node::Generate& n, const Context::Scope* scope)
      : event_(event), node_(n), scope_(scope) {}

  Status activate(Runtime& rt) override {
    std::optional<Payload> value;
    if (node_.producer) {
      try {
        Context ctx = rt.context(scope_);
        value = node_.producer(ctx);
      } catch (...) {
        rt.fail(ErrorKind::ActionFailure, describe_exception());
      }
    }
    if (!EnvironmentAccess::emit(rt.env, event_, value)) {
      rt.fail(ErrorKind::CausalityViolation,
              "value generated for '" + node_.event + "' after its values were read");
    }
    return Status::Term;
  }
  void reset() override {}

 private:
  EventId event_;
  const node::Generate& node_;
  const Context::Scope* scope_;
};

class AwaitTask final : public Task {
 public:
  explicit AwaitTask(EventId event) : event_(event) {}

  Status activate(Runtime& rt) override {
    switch (rt.env.presence(event_)) {
      case Presence::Present:
        return Status::Term;
      case Presence::Absent:
        return Status::Stop;
      case Presence::Unknown:
        break;
    }
    return Status::Susp;
  }
  void reset() override {}

 private:
  EventId event_;
};

class WhenTask final : public Task {
 public:
  WhenTask(EventId event, TaskPtr then_branch, TaskPtr else_branch)
      : event_(event), then_(std::move(then_branch)), else_(std::move(else_branch)) {}

  Status activate(Runtime& rt) override {
    if (chosen_ == nullptr) {
      switch (rt.env.presence(event_)) {
        case Presence::Present:
          chosen_ = then_.get();
          break;
        case Presence::Absent:
          // Reaction to absence waits for the next instant.
          chosen_ = else_.get();
          return Status::Stop;
        case Presence::Unknown:
          return Status::Susp;
      }
    }
    return chosen_->activate(rt);
  }
  void reset() override {
    chosen_ = nullptr;
    then_->reset();
    else_->reset();
  }

 private:
  EventId event_;
  TaskPtr then_;
  TaskPtr else_;
  Task* chosen_ = nullptr;
};

class UntilTask final : public Task {
 public:
  UntilTask(EventId event, TaskPtr body, TaskPtr handler)
      : event_(event), body_(std::move(body)), handler_(std::move(handler)) {}

  Status activate(Runtime& rt) override {
    if (in_handler_) return handler_->activate(rt);
    if (body_stopped_at_ != rt.instant()) {
      Status s = body_->activate(rt);
      if (s != Status::Stop) return s;
      body_stopped_at_ = rt.instant();
    }
    switch (rt.env.presence(event_)) {
      case Presence::Present:
        in_handler_ = true;
        return Status::Stop;
      case Presence::Absent:
        return Status::Stop;
      case Presence::Unknown:
        break;
    }
    return Status::Susp;
  }
  void reset() override {
    in_handler_ = false;
    body_stopped_at_ = kNever;
    body_->reset();
    handler_->reset();
  }

 private:
  EventId event_;
  TaskPtr body_;
  TaskPtr handler_;
  bool in_handler_ = false;
  std::uint64_t body_stopped_at_ = kNever;
};

class LocalEventTask final : public Task {
 public:
  explicit LocalEventTask(std::unique_ptr<Context::Scope> scope) : scope_(std::move(scope)) {}

  void set_body(TaskPtr body) { body_ = std::move(body); }
  const Context::Scope* scope() const { return scope_.get(); }

  Status activate(Runtime& rt) override { return body_->activate(rt); }
  void reset() override { body_->reset(); }

 private:
  std::unique_ptr<Context::Scope> scope_;
  TaskPtr body_;
};

class IfTask final : public Task {
 public:
  IfTask(const node::If& n, const Context::Scope* scope, TaskPtr then_branch, TaskPtr else_branch)
      : node_(n), scope_(scope), then_(std::move(then_branch)), else_(std::move(else_branch)) {}

  Status activate(Runtime& rt) override {
    if (chosen_ == nullptr) {
      bool result = false;
      try {
        Context ctx = rt.context(scope_);
        result = node_.predicate(ctx);
      } catch (...) {
        rt.fail(ErrorKind::ActionFailure, describe_exception());
      }
      chosen_ = result ? then_.get() : else_.get();
    }
    return chosen_->activate(rt);
  }
  void reset() override {
    chosen_ = nullptr;
    then_->reset();
    else_->reset();
  }

 private:
  const node::If& node_;
  const Context::Scope* scope_;
  TaskPtr then_;
  TaskPtr else_;
  Task* chosen_ = nullptr;
};

/// Turns an immutable Program into a tree of runtime tasks, resolving event
/// names against the local scopes and the machine's global table.
class Compiler {
 public:
  explicit Compiler(Environment& env) : env_(env) {}

  TaskPtr compile(const Program& program, const Context::Scope* scope, Slot* slot);

 private:
  EventId resolve(const std::string& name, const Context::Scope* scope);

  Environment& env_;
};

}  // namespace

namespace {

EventId Compiler::resolve(const std::string& name, const Context::Scope* scope) {
  for (const Context::Scope* s = scope; s != nullptr; s = s->parent) {
    if (s->name == name) return s->id;
  }
  return EnvironmentAccess::declare(env_, name);
}

TaskPtr Compiler::compile(const Program& program, const Context::Scope* scope, Slot* slot) {
  return std::visit(
      [&](const auto& n) -> TaskPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Nothing>) {
          return std::make_unique<NothingTask>();
        } else if constexpr (std::is_same_v<T, node::Atom>) {
          return std::make_unique<AtomTask>(n, scope, slot);
        } else if constexpr (std::is_same_v<T, node::Pause>) {
          return std::make_unique<PauseTask>();
        } else if constexpr (std::is_same_v<T, node::Seq>) {
          std::vector<TaskPtr> steps;
          steps.reserve(n.steps.size());
          for (const Program& p : n.steps) steps.push_back(compile(p, scope, slot));
          return std::make_unique<SeqTask>(std::move(steps));
        } else if constexpr (std::is_same_v<T, node::Par>) {
          std::vector<std::unique_ptr<ParTask::Branch>> branches;
          branches.reserve(n.branches.size());
          for (const Program& p : n.branches) {
            auto branch = std::make_unique<ParTask::Branch>();
            branch->task = compile(p, scope, &branch->slot);
            branches.push_back(std::move(branch));
          }
          return std::make_unique<ParTask>(std::move(branches));
        } else if constexpr (std::is_same_v<T, node::Loop>) {
          return std::make_unique<LoopTask>(compile(n.body, scope, slot));
        } else if constexpr (std::is_same_v<T, node::Repeat>) {
          return std::make_unique<RepeatTask>(n.count, compile(n.body, scope, slot));
        } else if constexpr (std::is_same_v<T, node::Generate>) {
          return std::make_unique<GenerateTask>(resolve(n.event, scope), n, scope);
        } else if constexpr (std::is_same_v<T, node::Await>) {
          return std::make_unique<AwaitTask>(resolve(n.event, scope));
        } else if constexpr (std::is_same_v<T, node::WhenPresentElse>) {
          EventId id = resolve(n.event, scope);
          return std::make_unique<WhenTask>(id, compile(n.then_branch, scope, slot),
                                            compile(n.else_branch, scope, slot));
        } else if constexpr (std::is_same_v<T, node::Until>) {
          EventId id = resolve(n.event, scope);
          return std::make_unique<UntilTask>(id, compile(n.body, scope, slot), compile(n.handler, scope, slot));
        } else if constexpr (std::is_same_v<T, node::LocalEvent>) {
          EventId id = EnvironmentAccess::declare_local(env_, n.name);
          auto task = std::make_unique<LocalEventTask>(
              std::make_unique<Context::Scope>(Context::Scope{n.name, id, scope}));
          task->set_body(compile(n.body, task->scope(), slot));
          return task;
        } else if constexpr (std::is_same_v<T, node::If>) {
          return std::make_unique<IfTask>(n, scope, compile(n.then_branch, scope, slot),
                                          compile(n.else_branch, scope, slot));
        }
      },
      program.node().value);
}

}  // namespace

// ---------------------------------------------------------------------------
// Machine

struct Machine::Impl {
  struct Entry {
    ProgramHandle handle;
    Program program;  // keeps the nodes referenced by the tasks alive
    std::unique_ptr<Slot> slot;
    TaskPtr task;
    bool done = false;
    std::uint64_t stopped_at = kNever;
  };

  Environment env;
  std::vector<Entry> programs;
  std::uint64_t next_handle = 0;
  std::uint64_t instant = 0;
  bool reacting = false;
  std::function<void(const InstantReport&)> sink;

  std::mutex queue_mutex;
  std::vector<std::pair<EventId, std::optional<Payload>>> queue;
  /// Mirror of which ids accept injection, readable under queue_mutex from
  /// other threads.
  std::vector<bool> injectable;
  std::map<std::string, EventId, std::less<>> injectable_names;

  void publish_declarations() {
    std::lock_guard lock(queue_mutex);
    injectable_names = env.global_names_;
    injectable.resize(env.size());
    for (std::size_t i = 0; i < env.size(); ++i) injectable[i] = !env.slots_[i].local;
  }
};

Machine::Machine() : impl_(std::make_unique<Impl>()) {}
Machine::~Machine() = default;
Machine::Machine(Machine&&) noexcept = default;
Machine& Machine::operator=(Machine&&) noexcept = default;

EventId Machine::declare_event(std::string_view name) {
  if (impl_->reacting) throw std::logic_error("declare_event called during a reaction");
  EventId id = EnvironmentAccess::declare(impl_->env, name);
  impl_->publish_declarations();
  return id;
}

std::optional<EventId> Machine::find_event(std::string_view name) const { return impl_->env.find(name); }

ProgramHandle Machine::add_program(const Program& program) {
  if (impl_->reacting) throw std::logic_error("add_program called during a reaction");
  Impl::Entry entry;
  entry.handle = ProgramHandle(impl_->next_handle++);
  entry.program = program;
  entry.slot = std::make_unique<Slot>();
  Compiler compiler(impl_->env);
  entry.task = compiler.compile(entry.program, nullptr, entry.slot.get());
  impl_->programs.push_back(std::move(entry));
  impl_->publish_declarations();
  return impl_->programs.back().handle;
}

void Machine::inject_event(EventId event, std::optional<Payload> value) {
  std::lock_guard lock(impl_->queue_mutex);
  if (event.index() >= impl_->injectable.size() || !impl_->injectable[event.index()]) {
    throw UnknownEvent("unknown event id " + std::to_string(event.index()));
  }
  impl_->queue.emplace_back(event, std::move(value));
}

void Machine::inject_event(std::string_view event, std::optional<Payload> value) {
  EventId id;
  {
    std::lock_guard lock(impl_->queue_mutex);
    auto it = impl_->injectable_names.find(event);
    if (it == impl_->injectable_names.end()) throw UnknownEvent("unknown event '" + std::string(event) + "'");
    id = it->second;
  }
  inject_event(id, std::move(value));
}

InstantReport Machine::react() {
  Impl& m = *impl_;
  if (m.reacting) throw std::logic_error("react called during a reaction");
  m.reacting = true;
  struct Guard {
    bool& flag;
    ~Guard() { flag = false; }
  } guard{m.reacting};

  InstantReport report;
  report.instant = m.instant;
  m.env.begin_instant(m.instant);
  {
    std::vector<std::pair<EventId, std::optional<Payload>>> pending;
    {
      std::lock_guard lock(m.queue_mutex);
      pending.swap(m.queue);
    }
    for (auto& [id, value] : pending) m.env.emit(id, value);
  }

  Runtime rt(m.env);
  auto finish = [&](Impl::Entry& e) {
    e.done = true;
    report.terminated.push_back(e.handle);
  };

  for (;;) {
    const std::uint64_t presences_before = m.env.new_presences_;
    bool any_susp = false;
    for (Impl::Entry& e : m.programs) {
      if (e.done || e.stopped_at == m.instant) continue;
      rt.current = e.handle;
      Status s;
      try {
        s = e.task->activate(rt);
      } catch (const BranchKilled&) {
        finish(e);
        continue;
      }
      if (s == Status::Term) {
        finish(e);
      } else if (s == Status::Stop) {
        e.stopped_at = m.instant;
      } else {
        any_susp = true;
      }
    }
    if (!any_susp) break;
    if (rt.eoi) throw std::logic_error("branch still suspended after end-of-instant resolution");
    if (m.env.new_presences_ == presences_before) {
      m.env.resolve_absent();
      rt.eoi = true;
    }
  }
  m.env.resolve_absent();

  for (const Runtime::Deferred& d : rt.deferred) {
    if (d.slot->killed) continue;
    try {
      Context ctx = rt.context(d.scope, d.program);
      (*d.action)(ctx);
    } catch (...) {
      rt.errors.push_back(RuntimeError{ErrorKind::ActionFailure, d.program, describe_exception()});
      d.slot->killed = true;
    }
  }
  for (Impl::Entry& e : m.programs) {
    if (!e.done && e.slot->killed) finish(e);
  }

  for (std::uint32_t i = 0; i < m.env.slots_.size(); ++i) {
    const Environment::Slot& s = m.env.slots_[i];
    if (s.local || s.presence != Presence::Present) continue;
    report.emitted.emplace(s.name, s.values ? *s.values : ValueList{});
  }
  report.errors = std::move(rt.errors);
  ++m.instant;
  if (m.sink) m.sink(report);
  return report;
}

std::uint64_t Machine::instant_index() const { return impl_->instant; }

std::size_t Machine::program_count() const { return impl_->programs.size(); }

bool Machine::is_alive(ProgramHandle handle) const {
  for (const auto& e : impl_->programs) {
    if (e.handle == handle) return !e.done;
  }
  return false;
}

const Environment& Machine::environment() const { return impl_->env; }

void Machine::set_trace_sink(std::function<void(const InstantReport&)> sink) { impl_->sink = std::move(sink); }

// ---------------------------------------------------------------------------

std::string to_json_line(const InstantReport& report) {
  std::string out = "{\"instant\":" + std::to_string(report.instant) + ",\"emitted\":{";
  bool first = true;
  for (const auto& [name, values] : report.emitted) {
    if (!first) out += ',';
    first = false;
    out += nlohmann::json(name).dump();
    out += ":[";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i != 0) out += ',';
      out += values[i].json().dump();
    }
    out += ']';
  }
  out += "},\"terminated\":[";
  for (std::size_t i = 0; i < report.terminated.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(report.terminated[i].value());
  }
  out += "]}";
  return out;
}

}  // namespace danse::reactive
