#pragma once

#include <memory>
#include <vector>

#include <json.hpp>

namespace danse::reactive {

/// Immutable event value. Copies share the same underlying document; the
/// engine never inspects it beyond serializing it into traces.
class Payload {
 public:
  Payload();
  Payload(nlohmann::json value);  // NOLINT(google-explicit-constructor)

  const nlohmann::json& json() const { return *value_; }

  friend bool operator==(const Payload& a, const Payload& b) {
    return a.value_ == b.value_ || *a.value_ == *b.value_;
  }

 private:
  std::shared_ptr<const nlohmann::json> value_;
};

using ValueList = std::vector<Payload>;

/// A per-instant value list handed to readers. Every reader of one event in
/// one instant receives the same pointer.
using ValueSnapshot = std::shared_ptr<const ValueList>;

}  // namespace danse::reactive
