#include "danse/reactive/program.hpp"

#include <sstream>
#include <type_traits>

namespace danse::reactive {

Payload::Payload() : value_(std::make_shared<const nlohmann::json>()) {}

Payload::Payload(nlohmann::json value) : value_(std::make_shared<const nlohmann::json>(std::move(value))) {}

template <typename T>
Program Program::make(T&& value) {
  return Program(std::make_shared<const Node>(Node{std::forward<T>(value)}));
}

namespace {
const Program& empty_program() {
  static const Program kEmpty = nothing();
  return kEmpty;
}
}  // namespace

Program::Program() : node_(empty_program().node_) {}

Program nothing() { return Program::make(node::Nothing{}); }

Program atom(Action action, AtomTiming timing) { return Program::make(node::Atom{std::move(action), timing}); }

Program pause() { return Program::make(node::Pause{}); }

Program seq(std::vector<Program> steps) { return Program::make(node::Seq{std::move(steps)}); }

Program par(std::vector<Program> branches) { return Program::make(node::Par{std::move(branches)}); }

Program loop(Program body) { return Program::make(node::Loop{std::move(body)}); }

Program repeat(std::size_t count, Program body) { return Program::make(node::Repeat{count, std::move(body)}); }

Program generate(std::string event, Producer producer) {
  return Program::make(node::Generate{std::move(event), std::move(producer)});
}

Program generate(std::string event, Payload value) {
  return generate(std::move(event), [value = std::move(value)](Context&) { return value; });
}

Program await(std::string event) { return Program::make(node::Await{std::move(event)}); }

Program when_present_else(std::string event, Program then_branch, Program else_branch) {
  return Program::make(node::WhenPresentElse{std::move(event), std::move(then_branch), std::move(else_branch)});
}

Program until(std::string event, Program body, Program handler) {
  return Program::make(node::Until{std::move(event), std::move(body), std::move(handler)});
}

Program local_event(std::string name, Program body) {
  return Program::make(node::LocalEvent{std::move(name), std::move(body)});
}

Program if_else(Predicate predicate, Program then_branch, Program else_branch) {
  return Program::make(node::If{std::move(predicate), std::move(then_branch), std::move(else_branch)});
}

namespace {

void render(std::ostream& out, const Program& program);

void render_list(std::ostream& out, const std::vector<Program>& items) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i != 0) out << ", ";
    render(out, items[i]);
  }
}

void render(std::ostream& out, const Program& program) {
  std::visit(
      [&out](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Nothing>) {
          out << "nothing";
        } else if constexpr (std::is_same_v<T, node::Atom>) {
          out << (n.timing == AtomTiming::Immediate ? "atom" : "atom@eoi");
        } else if constexpr (std::is_same_v<T, node::Pause>) {
          out << "pause";
        } else if constexpr (std::is_same_v<T, node::Seq>) {
          out << "seq(";
          render_list(out, n.steps);
          out << ")";
        } else if constexpr (std::is_same_v<T, node::Par>) {
          out << "par(";
          render_list(out, n.branches);
          out << ")";
        } else if constexpr (std::is_same_v<T, node::Loop>) {
          out << "loop(";
          render(out, n.body);
          out << ")";
        } else if constexpr (std::is_same_v<T, node::Repeat>) {
          out << "repeat(" << n.count << ", ";
          render(out, n.body);
          out << ")";
        } else if constexpr (std::is_same_v<T, node::Generate>) {
          out << "gen(" << n.event << (n.producer ? ", v)" : ")");
        } else if constexpr (std::is_same_v<T, node::Await>) {
          out << "await(" << n.event << ")";
        } else if constexpr (std::is_same_v<T, node::WhenPresentElse>) {
          out << "when(" << n.event << ", ";
          render(out, n.then_branch);
          out << ", ";
          render(out, n.else_branch);
          out << ")";
        } else if constexpr (std::is_same_v<T, node::Until>) {
          out << "until(" << n.event << ", ";
          render(out, n.body);
          out << ", ";
          render(out, n.handler);
          out << ")";
        } else if constexpr (std::is_same_v<T, node::LocalEvent>) {
          out << "local(" << n.name << ", ";
          render(out, n.body);
          out << ")";
        } else if constexpr (std::is_same_v<T, node::If>) {
          out << "if(";
          render(out, n.then_branch);
          out << ", ";
          render(out, n.else_branch);
          out << ")";
        }
      },
      program.node().value);
}

}  // namespace

std::string describe(const Program& program) {
  std::ostringstream out;
  render(out, program);
  return out.str();
}

}  // namespace danse::reactive
