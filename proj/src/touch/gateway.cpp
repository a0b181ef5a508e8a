#include "danse/touch/gateway.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace danse::touch {

namespace {

reactive::Payload contact_payload(const TouchSample& s, std::uint64_t seq) {
  return reactive::Payload(nlohmann::json{{"id", s.pointer_id}, {"x", s.x}, {"y", s.y}, {"t_ms", s.t_ms}, {"seq", seq}});
}

IngestResult reject(const TouchSample& s, ContactSet contacts, std::uint64_t seq, const char* reason) {
  IngestResult r;
  r.contacts = std::move(contacts);
  r.accepted = false;
  r.injections.push_back({events::kTraceAnomaly,
                          reactive::Payload(nlohmann::json{{"id", s.pointer_id},
                                                           {"phase", std::string(to_string(s.phase))},
                                                           {"reason", reason},
                                                           {"t_ms", s.t_ms},
                                                           {"seq", seq}})});
  return r;
}

bool in_unit_square(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

}  // namespace

IngestResult ingest(const TouchSample& s, ContactSet contacts, std::uint64_t seq) {
  if (!in_unit_square(s.x) || !in_unit_square(s.y)) return reject(s, std::move(contacts), seq, "out of range");
  const bool live = contacts.count(s.pointer_id) != 0;
  IngestResult r;
  switch (s.phase) {
    case Phase::Down:
      if (live) return reject(s, std::move(contacts), seq, "down on a live pointer");
      contacts[s.pointer_id] = Contact{{s.x, s.y}, s.t_ms};
      r.injections.push_back({events::kContactDown, contact_payload(s, seq)});
      break;
    case Phase::Move:
      if (!live) return reject(s, std::move(contacts), seq, "move without down");
      contacts[s.pointer_id].position = {s.x, s.y};
      r.injections.push_back({events::kContactMove, contact_payload(s, seq)});
      break;
    case Phase::Up:
    case Phase::Cancel:
      if (!live) return reject(s, std::move(contacts), seq, "lift without down");
      contacts.erase(s.pointer_id);
      r.injections.push_back(
          {s.phase == Phase::Up ? events::kContactUp : events::kContactCancel, contact_payload(s, seq)});
      break;
  }
  r.contacts = std::move(contacts);
  return r;
}

void TouchGateway::declare_events(reactive::Machine& machine) {
  for (const char* name : {events::kContactDown, events::kContactMove, events::kContactUp, events::kContactCancel,
                           events::kTraceAnomaly}) {
    machine.declare_event(name);
  }
}

bool TouchGateway::ingest(const TouchSample& sample, reactive::Machine& machine) {
  IngestResult r = touch::ingest(sample, std::move(contacts_), seq_++);
  contacts_ = std::move(r.contacts);
  if (!r.accepted) ++anomalies_;
  for (Injection& inj : r.injections) machine.inject_event(inj.event, std::move(inj.value));
  return r.accepted;
}

std::vector<ContactMirror::Change> ContactMirror::apply(const reactive::Context& ctx) {
  std::vector<std::tuple<std::uint64_t, Phase, const nlohmann::json*>> pending;
  std::vector<reactive::ValueSnapshot> keep;
  const std::pair<const char*, Phase> kinds[] = {{events::kContactDown, Phase::Down},
                                                 {events::kContactMove, Phase::Move},
                                                 {events::kContactUp, Phase::Up},
                                                 {events::kContactCancel, Phase::Cancel}};
  for (const auto& [name, phase] : kinds) {
    auto id = ctx.environment().find(name);
    if (!id) continue;
    auto values = ctx.read_values(*id);
    if (!values) continue;
    keep.push_back(*values);
    for (const reactive::Payload& p : **values) {
      pending.emplace_back(p.json().at("seq").get<std::uint64_t>(), phase, &p.json());
    }
  }
  std::sort(pending.begin(), pending.end(),
            [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });

  std::vector<Change> changes;
  changes.reserve(pending.size());
  for (const auto& [seq, phase, json] : pending) {
    Change c{phase, json->at("id").get<int>(), {json->at("x").get<double>(), json->at("y").get<double>()},
             json->at("t_ms").get<std::int64_t>()};
    switch (phase) {
      case Phase::Down:
        contacts_[c.pointer_id] = Contact{c.position, c.t_ms};
        break;
      case Phase::Move:
        contacts_[c.pointer_id].position = c.position;
        break;
      case Phase::Up:
      case Phase::Cancel:
        contacts_.erase(c.pointer_id);
        break;
    }
    changes.push_back(c);
  }
  return changes;
}

HoldState sign_hold_status(const ContactSet& contacts, const ZoneLayout& layout) {
  std::vector<std::pair<int, Point>> on_signs;
  for (const auto& [id, contact] : contacts) {
    Zone z = classify(contact.position, layout);
    if (z == Zone::SignLeft || z == Zone::SignRight) on_signs.emplace_back(id, contact.position);
  }
  for (std::size_t i = 0; i < on_signs.size(); ++i) {
    for (std::size_t j = i + 1; j < on_signs.size(); ++j) {
      if (distance(on_signs[i].second, on_signs[j].second) >= layout.min_sign_separation) {
        return HoldState{true, {on_signs[i].first, on_signs[j].first}};
      }
    }
  }
  return HoldState{};
}

std::optional<double> pinch_progress(const ContactSet& contacts, int a, int b, double initial_distance,
                                     double merge_epsilon) {
  if (!(initial_distance > 0)) throw std::invalid_argument("initial_distance must be positive");
  auto ia = contacts.find(a);
  auto ib = contacts.find(b);
  if (ia == contacts.end() || ib == contacts.end()) return std::nullopt;
  double d = distance(ia->second.position, ib->second.position);
  if (d <= merge_epsilon) return 1.0;
  return std::clamp(1.0 - d / initial_distance, 0.0, 1.0);
}

}  // namespace danse::touch
