#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "danse/reactive/event.hpp"
#include "danse/reactive/payload.hpp"

namespace danse::reactive {

class Context;

using Action = std::function<void(Context&)>;
using Predicate = std::function<bool(Context&)>;
using Producer = std::function<Payload(Context&)>;

/// When an Atom's action runs. Immediate actions run at their place in the
/// schedule. EndOfInstant actions are queued and run once the instant has
/// reached quiescence, against the final environment.
enum class AtomTiming { Immediate, EndOfInstant };

namespace node {
struct Nothing;
struct Atom;
struct Pause;
struct Seq;
struct Par;
struct Loop;
struct Repeat;
struct Generate;
struct Await;
struct WhenPresentElse;
struct Until;
struct LocalEvent;
struct If;
}  // namespace node

/// Immutable combinator tree. Programs are values: sharing a subtree between
/// several parents is fine, each use gets its own runtime state when the tree
/// is added to a machine.
class Program {
 public:
  struct Node;

  /// The empty program.
  Program();

  const Node& node() const { return *node_; }

 private:
  explicit Program(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  template <typename T>
  static Program make(T&& value);

  friend Program nothing();
  friend Program atom(Action, AtomTiming);
  friend Program pause();
  friend Program seq(std::vector<Program>);
  friend Program par(std::vector<Program>);
  friend Program loop(Program);
  friend Program repeat(std::size_t, Program);
  friend Program generate(std::string, Producer);
  friend Program await(std::string);
  friend Program when_present_else(std::string, Program, Program);
  friend Program until(std::string, Program, Program);
  friend Program local_event(std::string, Program);
  friend Program if_else(Predicate, Program, Program);

  std::shared_ptr<const Node> node_;
};

Program nothing();
Program atom(Action action, AtomTiming timing = AtomTiming::Immediate);
/// Ends the current instant for this branch; the branch resumes at the next.
Program pause();
Program seq(std::vector<Program> steps);
Program par(std::vector<Program> branches);
Program loop(Program body);
Program repeat(std::size_t count, Program body);
Program generate(std::string event, Producer producer = nullptr);
Program generate(std::string event, Payload value);
Program await(std::string event);
/// Runs `then_branch` in the instant `event` becomes present. If the event is
/// absent at the end of the instant, `else_branch` starts at the next one.
Program when_present_else(std::string event, Program then_branch, Program else_branch);
/// Weak preemption: when `event` is present in an instant where `body` did not
/// terminate, the body finishes that instant and `handler` runs from the next.
Program until(std::string event, Program body, Program handler = nothing());
/// Declares a fresh event that shadows any outer event named `name` in `body`.
Program local_event(std::string name, Program body);
/// Instantaneous test of host state.
Program if_else(Predicate predicate, Program then_branch, Program else_branch = nothing());

namespace node {
struct Nothing {};
struct Atom {
  Action action;
  AtomTiming timing;
};
struct Pause {};
struct Seq {
  std::vector<Program> steps;
};
struct Par {
  std::vector<Program> branches;
};
struct Loop {
  Program body;
};
struct Repeat {
  std::size_t count;
  Program body;
};
struct Generate {
  std::string event;
  Producer producer;
};
struct Await {
  std::string event;
};
struct WhenPresentElse {
  std::string event;
  Program then_branch;
  Program else_branch;
};
struct Until {
  std::string event;
  Program body;
  Program handler;
};
struct LocalEvent {
  std::string name;
  Program body;
};
struct If {
  Predicate predicate;
  Program then_branch;
  Program else_branch;
};
}  // namespace node

struct Program::Node {
  std::variant<node::Nothing, node::Atom, node::Pause, node::Seq, node::Par, node::Loop,
               node::Repeat, node::Generate, node::Await, node::WhenPresentElse, node::Until,
               node::LocalEvent, node::If>
      value;
};

/// Compact textual rendering, e.g. `seq(await(E), gen(F))`. Used in test
/// failure messages.
std::string describe(const Program& program);

}  // namespace danse::reactive
