#ifndef NADEUM_SERVICE_HPP_
#define NADEUM_SERVICE_HPP_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nadeum/exercises.hpp"
#include "nadeum/kernel.hpp"
#include "nadeum/prover.hpp"

namespace nadeum {

struct ServiceOptions {
  std::string address = "127.0.0.1:8080";          // NADEUM_ADDR
  std::chrono::seconds session_ttl{24 * 60 * 60};   // NADEUM_SESSION_TTL
  std::optional<std::string> journal_dir;           // NADEUM_JOURNAL_DIR
  std::string corpus_dir = default_corpus_dir();
  SearchConfig search;
};

// Reads the NADEUM_* environment variables on top of the defaults. TTL values
// are seconds, optionally suffixed with s, m, h or d.
ServiceOptions options_from_env();
std::chrono::seconds parse_duration(std::string_view text);

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

using QueryParams = std::map<std::string, std::string>;

// Event-sourced proof sessions behind a JSON request/response interface.
// Requests on one session are serialized; distinct sessions run concurrently.
class Service {
 public:
  explicit Service(ServiceOptions options);

  HttpResponse handle(std::string_view method, std::string_view path, const QueryParams& query,
                      std::string_view body);

  // Replays every journal in journal_dir; returns the number of sessions restored.
  std::size_t recover();
  // Drops sessions idle for longer than the TTL; returns how many were dropped.
  std::size_t expire();
  std::size_t session_count() const;

  const ServiceOptions& options() const noexcept { return options_; }

 private:
  using TimePoint = std::chrono::system_clock::time_point;

  struct Session {
    std::string id;
    SessionHistory history;
    std::optional<std::string> exercise;
    TimePoint created;
    TimePoint last_active;
    std::mutex mutex;
  };

  std::shared_ptr<Session> find(const std::string& id);
  std::shared_ptr<Session> create(const Formula& root, std::optional<std::string> exercise);
  void journal(const Session& s, const std::string& line, bool truncate = false) const;
  std::string new_id();

  HttpResponse route(std::string_view method, const std::vector<std::string>& parts,
                     const QueryParams& query, std::string_view body);

  ServiceOptions options_;
  std::vector<Exercise> corpus_;
  mutable std::mutex store_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t id_state_;
};

// Blocks serving HTTP on options().address until the process is stopped.
void serve(Service& service);

}  // namespace nadeum

#endif  // NADEUM_SERVICE_HPP_
