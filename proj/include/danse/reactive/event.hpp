#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace danse::reactive {

/// Interned event identifier, only meaningful for the machine that issued it.
class EventId {
 public:
  constexpr EventId() = default;
  constexpr explicit EventId(std::uint32_t index) : index_(index) {}

  constexpr std::uint32_t index() const { return index_; }

  friend constexpr auto operator<=>(EventId, EventId) = default;

 private:
  std::uint32_t index_ = 0;
};

class ProgramHandle {
 public:
  constexpr ProgramHandle() = default;
  constexpr explicit ProgramHandle(std::uint64_t value) : value_(value) {}

  constexpr std::uint64_t value() const { return value_; }

  friend constexpr auto operator<=>(ProgramHandle, ProgramHandle) = default;

 private:
  std::uint64_t value_ = 0;
};

enum class Presence { Unknown, Present, Absent };

class UnknownEvent : public std::out_of_range {
 public:
  explicit UnknownEvent(const std::string& what) : std::out_of_range(what) {}
};

}  // namespace danse::reactive

template <>
struct std::hash<danse::reactive::EventId> {
  std::size_t operator()(danse::reactive::EventId id) const noexcept { return id.index(); }
};
