#include "danse/telemetry/spool.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace danse::telemetry {

namespace fs = std::filesystem;

namespace {

constexpr const char* kSuffix = ".json";
constexpr const char* kTmpSuffix = ".json.tmp";

[[noreturn]] void fail(const std::string& what) { throw SpoolError(what + ": " + std::strerror(errno)); }

void write_durably(const fs::path& path, const std::string& bytes) {
  int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) fail("cannot create " + path.string());
  std::size_t done = 0;
  while (done < bytes.size()) {
    ssize_t n = ::write(fd, bytes.data() + done, bytes.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      fail("cannot write " + path.string());
    }
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) {
    ::close(fd);
    fail("cannot sync " + path.string());
  }
  ::close(fd);
}

void sync_directory(const fs::path& dir) {
  int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

bool valid_id(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') return false;
  }
  return true;
}

}  // namespace

SpoolStore::SpoolStore(fs::path directory) : dir_(std::move(directory)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) {
    throw SpoolError("spool directory " + dir_.string() + " unusable: " + (ec ? ec.message() : "not a directory"));
  }
  for (const auto& entry : fs::directory_iterator(dir_)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > std::strlen(kTmpSuffix) && name.ends_with(kTmpSuffix)) fs::remove(entry.path(), ec);
  }
}

fs::path SpoolStore::path_for(const std::string& id) const {
  if (!valid_id(id)) throw SpoolError("invalid session id '" + id + "'");
  return dir_ / (id + kSuffix);
}

void SpoolStore::write(const SpoolEntry& entry) {
  const fs::path target = path_for(entry.id);
  const fs::path tmp = dir_ / (entry.id + kTmpSuffix);
  nlohmann::json doc{{"id", entry.id}, {"attempts", entry.attempts}, {"next_due_ms", entry.next_due_ms},
                     {"stats", entry.stats}};
  write_durably(tmp, doc.dump());
  if (::rename(tmp.c_str(), target.c_str()) != 0) fail("cannot rename " + tmp.string());
  sync_directory(dir_);
}

std::string SpoolStore::put(const SessionStats& stats) {
  write(SpoolEntry{stats.session_id, 0, 0, to_json(stats)});
  return stats.session_id;
}

std::vector<std::string> SpoolStore::list() const {
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.ends_with(kSuffix) && !name.ends_with(kTmpSuffix)) {
      ids.push_back(name.substr(0, name.size() - std::strlen(kSuffix)));
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

SpoolEntry SpoolStore::load(const std::string& id) const {
  std::ifstream in(path_for(id));
  if (!in) throw SpoolError("no spooled payload " + id);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    auto doc = nlohmann::json::parse(buffer.str());
    return SpoolEntry{doc.at("id").get<std::string>(), doc.at("attempts").get<int>(),
                      doc.at("next_due_ms").get<std::int64_t>(), doc.at("stats")};
  } catch (const nlohmann::json::exception& e) {
    throw SpoolError("corrupt spool file " + id + ": " + e.what());
  }
}

void SpoolStore::remove(const std::string& id) {
  std::error_code ec;
  fs::remove(path_for(id), ec);
  if (ec) throw SpoolError("cannot remove " + id + ": " + ec.message());
  sync_directory(dir_);
}

}  // namespace danse::telemetry
