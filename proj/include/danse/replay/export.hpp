#pragma once

#include <filesystem>

#include <json.hpp>

namespace danse::replay {

/// `{"sessions":[stats...]}` for every spooled payload, ordered by id.
nlohmann::json export_spool(const std::filesystem::path& spool_dir);

}  // namespace danse::replay
