#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "danse/reactive/machine.hpp"
#include "danse/touch/touch_sample.hpp"
#include "danse/touch/zones.hpp"

namespace danse::touch {

namespace events {
inline constexpr const char* kContactDown = "contactDown";
inline constexpr const char* kContactMove = "contactMove";
inline constexpr const char* kContactUp = "contactUp";
inline constexpr const char* kContactCancel = "contactCancel";
inline constexpr const char* kTraceAnomaly = "traceAnomaly";
inline constexpr const char* kMultiContactWarning = "multiContactWarning";
}  // namespace events

struct Contact {
  Point position;
  std::int64_t down_t_ms = 0;

  friend bool operator==(const Contact&, const Contact&) = default;
};

/// Live contacts by pointer id.
using ContactSet = std::map<int, Contact>;

struct Injection {
  std::string event;
  reactive::Payload value;
};

struct IngestResult {
  ContactSet contacts;
  std::vector<Injection> injections;
  bool accepted = true;
};

/// Applies one sample to `contacts`. Samples that break the per-pointer
/// Down (Move)* (Up|Cancel) sequence or leave the unit square are dropped and
/// reported as a traceAnomaly injection instead. `seq` is stamped on the
/// payload so consumers can restore ordering across events of one instant.
IngestResult ingest(const TouchSample& sample, ContactSet contacts, std::uint64_t seq);

/// Stateful wrapper feeding a machine.
class TouchGateway {
 public:
  /// Declares the gateway's events on `machine`.
  static void declare_events(reactive::Machine& machine);

  /// Ingests `sample` and queues the resulting events for the next reaction.
  bool ingest(const TouchSample& sample, reactive::Machine& machine);

  const ContactSet& contacts() const { return contacts_; }
  std::uint64_t anomalies() const { return anomalies_; }

 private:
  ContactSet contacts_;
  std::uint64_t seq_ = 0;
  std::uint64_t anomalies_ = 0;
};

/// Rebuilds the contact set inside the reactive world from the gateway's
/// events of the current instant.
class ContactMirror {
 public:
  struct Change {
    Phase phase;
    int pointer_id;
    Point position;
    std::int64_t t_ms;
  };

  /// Applies this instant's contact events in ingest order and returns them.
  std::vector<Change> apply(const reactive::Context& ctx);

  const ContactSet& contacts() const { return contacts_; }

 private:
  ContactSet contacts_;
};

struct HoldState {
  bool held = false;
  /// The lexicographically smallest qualifying pair when held.
  std::vector<int> holding_ids;

  friend bool operator==(const HoldState&, const HoldState&) = default;
};

HoldState sign_hold_status(const ContactSet& contacts, const ZoneLayout& layout);

/// Fraction of a pinch completed: 0 at the start distance, 1 once the two
/// contacts are within `merge_epsilon`. nullopt when either contact lifted.
std::optional<double> pinch_progress(const ContactSet& contacts, int a, int b, double initial_distance,
                                     double merge_epsilon = 0.01);

}  // namespace danse::touch
