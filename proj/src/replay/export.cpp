#include "danse/replay/export.hpp"

#include "danse/telemetry/spool.hpp"

namespace danse::replay {

nlohmann::json export_spool(const std::filesystem::path& spool_dir) {
  telemetry::SpoolStore store(spool_dir);
  nlohmann::json sessions = nlohmann::json::array();
  for (const std::string& id : store.list()) sessions.push_back(store.load(id).stats);
  return {{"sessions", sessions}};
}

}  // namespace danse::replay
