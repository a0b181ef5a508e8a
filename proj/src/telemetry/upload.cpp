#include "danse/telemetry/upload.hpp"

#include <httplib.h>

#include <chrono>
#include <cmath>
#include <cstdlib>

namespace danse::telemetry {

std::string resolve_endpoint(const std::string& configured) {
  const char* env = std::getenv(kCollectEnv);
  if (env && *env) return env;
  return configured;
}

std::int64_t RetryPolicy::backoff_ms(int attempts) const {
  if (attempts < 1) return 0;
  double delay = static_cast<double>(base_ms) * std::pow(factor, attempts - 1);
  if (!(delay < static_cast<double>(cap_ms))) return cap_ms;
  return static_cast<std::int64_t>(delay);
}

std::int64_t system_clock_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

HttpTransport::HttpTransport(std::string endpoint, int timeout_s) : timeout_s_(timeout_s) {
  auto scheme = endpoint.find("://");
  if (scheme == std::string::npos) throw std::invalid_argument("endpoint needs a scheme: " + endpoint);
  auto slash = endpoint.find('/', scheme + 3);
  origin_ = endpoint.substr(0, slash);
  std::string prefix = slash == std::string::npos ? "" : endpoint.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  path_ = prefix + kSessionsPath;
}

PostResult HttpTransport::post(const std::string& body, const std::string& idempotency_key) {
  try {
    httplib::Client client(origin_);
    client.set_connection_timeout(timeout_s_, 0);
    client.set_read_timeout(timeout_s_, 0);
    client.set_write_timeout(timeout_s_, 0);
    httplib::Headers headers{{"Idempotency-Key", idempotency_key}};
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) return PostResult{0, httplib::to_string(res.error())};
    return PostResult{res->status, res->status / 100 == 2 ? "" : "HTTP " + std::to_string(res->status)};
  } catch (const std::exception& e) {
    return PostResult{0, e.what()};
  }
}

std::vector<FlushResult> flush(SpoolStore& store, Transport& transport, const Clock& clock, const RetryPolicy& policy,
                               const FlushHooks& hooks) {
  std::vector<FlushResult> results;
  for (const std::string& id : store.list()) {
    SpoolEntry entry = store.load(id);
    FlushResult r{id, false, false, 0, "", entry.attempts, entry.next_due_ms};
    const std::int64_t now = clock();
    if (entry.next_due_ms > now) {
      results.push_back(r);
      continue;
    }
    r.attempted = true;
    PostResult post;
    try {
      post = transport.post(entry.stats.dump(), id);
    } catch (const std::exception& e) {
      post = PostResult{0, e.what()};
    }
    r.status = post.status;
    if (post.status / 100 == 2) {
      if (hooks.before_remove) hooks.before_remove(id);
      store.remove(id);
      r.delivered = true;
    } else {
      r.error = post.error.empty() ? "HTTP " + std::to_string(post.status) : post.error;
      entry.attempts += 1;
      entry.next_due_ms = now + policy.backoff_ms(entry.attempts);
      store.write(entry);
      r.attempts = entry.attempts;
      r.next_due_ms = entry.next_due_ms;
    }
    results.push_back(r);
  }
  return results;
}

Uploader::Uploader(std::filesystem::path spool_dir, std::unique_ptr<Transport> transport, Clock clock,
                   RetryPolicy policy)
    : store_(std::move(spool_dir)),
      transport_(std::move(transport)),
      clock_(std::move(clock)),
      policy_(policy),
      worker_([this] { run(); }) {}

Uploader::~Uploader() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  wake_.notify_all();
  worker_.join();
}

void Uploader::submit(SessionStats stats) {
  {
    std::lock_guard lock(mutex_);
    queue_.push_back(std::move(stats));
  }
  wake_.notify_all();
}

std::vector<FlushResult> Uploader::drain() {
  std::unique_lock lock(mutex_);
  const std::uint64_t ticket = ++flush_requested_;
  wake_.notify_all();
  done_.wait(lock, [&] { return flush_completed_ >= ticket; });
  return last_results_;
}

std::vector<std::string> Uploader::errors() const {
  std::lock_guard lock(mutex_);
  return errors_;
}

void Uploader::run() {
  std::unique_lock lock(mutex_);
  for (;;) {
    wake_.wait(lock, [&] { return stop_ || !queue_.empty() || flush_requested_ > flush_completed_; });
    while (!queue_.empty()) {
      SessionStats stats = std::move(queue_.front());
      queue_.pop_front();
      lock.unlock();
      std::string error;
      try {
        store_.put(stats);
      } catch (const std::exception& e) {
        error = e.what();
      }
      lock.lock();
      if (!error.empty()) errors_.push_back(error);
    }
    if (flush_requested_ > flush_completed_) {
      const std::uint64_t target = flush_requested_;
      lock.unlock();
      std::vector<FlushResult> results;
      std::string error;
      try {
        results = flush(store_, *transport_, clock_, policy_);
      } catch (const std::exception& e) {
        error = e.what();
      }
      lock.lock();
      if (!error.empty()) errors_.push_back(error);
      last_results_ = std::move(results);
      flush_completed_ = target;
      done_.notify_all();
    }
    if (stop_ && queue_.empty()) return;
  }
}

}  // namespace danse::telemetry
