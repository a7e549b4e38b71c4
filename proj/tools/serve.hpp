#pragma once

#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include <json.hpp>

#include "hybridlog/session.hpp"
#include "hybridlog/template_engine.hpp"

namespace httplib {
class Server;
}

namespace hybridlog::serve {

nlohmann::ordered_json query_json(const MergeQuery& q);
nlohmann::ordered_json groups_json(const TemplateEngine& engine);
nlohmann::ordered_json summary_json(const Session& session, bool complete);

/// Rendezvous between the parsing thread, which blocks in ask(), and HTTP
/// handlers. At most one query is pending at a time.
class ServeChannel : public FeedbackChannel {
 public:
  enum class AnswerStatus { Ok, Stale, Malformed };

  Decision ask(const MergeQuery& q) override;

  /// The pending query, if any.
  std::optional<nlohmann::ordered_json> pending() const;
  /// `body` is the raw request payload.
  AnswerStatus answer(std::uint64_t query_id, const std::string& body);

  /// Called by the parsing thread at message boundaries.
  void publish(nlohmann::ordered_json summary, std::optional<nlohmann::ordered_json> groups);
  nlohmann::ordered_json summary() const;
  nlohmann::ordered_json groups() const;

  /// Wakes a blocked ask() with a ChannelError; later asks fail at once.
  void close();

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::optional<MergeQuery> pending_;
  std::optional<Decision> answer_;
  bool closed_ = false;
  std::size_t answered_ = 0;
  nlohmann::ordered_json summary_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json groups_ = nlohmann::ordered_json::array();
};

/// HTTP front end for a ServeChannel.
class QueryServer {
 public:
  explicit QueryServer(ServeChannel& channel);
  ~QueryServer();
  QueryServer(const QueryServer&) = delete;
  QueryServer& operator=(const QueryServer&) = delete;

  /// Binds host:port (port 0 picks a free one). False when the port is busy.
  bool bind(const std::string& host, int port);
  int port() const { return port_; }
  /// Serves on a background thread until stop().
  void start();
  void stop();

 private:
  ServeChannel& channel_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace hybridlog::serve
