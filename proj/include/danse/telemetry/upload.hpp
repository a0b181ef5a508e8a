#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "danse/telemetry/spool.hpp"
#include "danse/telemetry/stats.hpp"

namespace danse::telemetry {

inline constexpr const char* kCollectEnv = "DANSE_COLLECT_URL";
inline constexpr const char* kSessionsPath = "/v1/sessions";

/// `DANSE_COLLECT_URL` when set and non-empty, else `configured`.
std::string resolve_endpoint(const std::string& configured);

struct RetryPolicy {
  std::int64_t base_ms = 1000;
  double factor = 2.0;
  std::int64_t cap_ms = 5 * 60 * 1000;

  /// Delay after the `attempts`-th failure (attempts >= 1).
  std::int64_t backoff_ms(int attempts) const;
};

struct PostResult {
  int status = 0;  // 0 when no HTTP response arrived
  std::string error;
};

class Transport {
 public:
  virtual ~Transport() = default;
  virtual PostResult post(const std::string& body, const std::string& idempotency_key) = 0;
};

/// POSTs to `{endpoint}/v1/sessions`. Endpoint form: `http://host[:port][/prefix]`.
/// Plain HTTP only.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(std::string endpoint, int timeout_s = 5);
  PostResult post(const std::string& body, const std::string& idempotency_key) override;

 private:
  std::string origin_;
  std::string path_;
  int timeout_s_;
};

struct FlushResult {
  std::string id;
  bool attempted = false;  // false: not yet due
  bool delivered = false;
  int status = 0;
  std::string error;
  int attempts = 0;
  std::int64_t next_due_ms = 0;
};

struct FlushHooks {
  /// Runs after a 2xx and before the payload is deleted. Throwing here
  /// models a crash between acknowledgement and removal.
  std::function<void(const std::string& id)> before_remove;
};

using Clock = std::function<std::int64_t()>;

/// Milliseconds since the epoch, wall clock.
std::int64_t system_clock_ms();

/// One pass over the spool. Network and HTTP failures become results; only
/// spool I/O errors and hook exceptions propagate.
std::vector<FlushResult> flush(SpoolStore& store, Transport& transport, const Clock& clock,
                               const RetryPolicy& policy = {}, const FlushHooks& hooks = {});

/// Background spool-and-flush worker. Completed stats are handed over by
/// value; the worker never sees a machine.
class Uploader {
 public:
  Uploader(std::filesystem::path spool_dir, std::unique_ptr<Transport> transport, Clock clock,
           RetryPolicy policy = {});
  ~Uploader();
  Uploader(const Uploader&) = delete;
  Uploader& operator=(const Uploader&) = delete;

  void submit(SessionStats stats);
  /// Requests a flush pass and waits until every submitted payload has been
  /// spooled and that pass is over.
  std::vector<FlushResult> drain();
  /// Spool failures seen by the worker, in order.
  std::vector<std::string> errors() const;

 private:
  void run();

  SpoolStore store_;
  std::unique_ptr<Transport> transport_;
  Clock clock_;
  RetryPolicy policy_;

  mutable std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  std::deque<SessionStats> queue_;
  std::uint64_t flush_requested_ = 0;
  std::uint64_t flush_completed_ = 0;
  std::vector<FlushResult> last_results_;
  std::vector<std::string> errors_;
  bool stop_ = false;
  std::thread worker_;
};

}  // namespace danse::telemetry
