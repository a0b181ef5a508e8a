#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "danse/telemetry/stats.hpp"

namespace danse::telemetry {

class SpoolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpoolEntry {
  std::string id;
  int attempts = 0;
  std::int64_t next_due_ms = 0;
  nlohmann::json stats;
};

/// Directory of pending uploads, one `<session-id>.json` per session. Files
/// are written to `<id>.json.tmp`, synced, then renamed into place, so a
/// crash leaves either the old file, the new one, or a stray .tmp that the
/// next open discards.
class SpoolStore {
 public:
  /// Creates the directory if needed. Throws SpoolError when unusable.
  explicit SpoolStore(std::filesystem::path directory);

  const std::filesystem::path& directory() const { return dir_; }

  /// Writes (or replaces) the payload for `stats.session_id`, attempts reset.
  std::string put(const SessionStats& stats);
  void write(const SpoolEntry& entry);

  /// Pending ids, sorted.
  std::vector<std::string> list() const;
  SpoolEntry load(const std::string& id) const;
  void remove(const std::string& id);

 private:
  std::filesystem::path path_for(const std::string& id) const;

  std::filesystem::path dir_;
};

}  // namespace danse::telemetry
