#include "serve.hpp"

#include <httplib.h>

#include "hybridlog/errors.hpp"

namespace hybridlog::serve {

using json = nlohmann::ordered_json;

json query_json(const MergeQuery& q) {
  json changed = json::array();
  for (const auto& c : q.changed_positions)
    changed.push_back({{"index", c.index}, {"old_token", c.old_token}, {"new_value", c.new_value}});
  json j;
  j["query_id"] = q.query_id;
  j["group_id"] = q.group_id;
  j["message_id"] = q.message_id;
  j["current_template"] = q.current_template;
  j["incoming_identifier"] = q.incoming_identifier;
  j["template_tokens"] = q.template_tokens;
  j["identifier_tokens"] = q.identifier_tokens;
  j["changed_positions"] = std::move(changed);
  j["similarity"] = q.similarity;
  j["remaining_budget"] = q.remaining_budget ? json(*q.remaining_budget) : json(nullptr);
  return j;
}

json groups_json(const TemplateEngine& engine) {
  json out = json::array();
  for (const auto& g : engine.groups()) {
    json j;
    j["group_id"] = g.group_id;
    j["log_type"] = std::string(to_string(g.log_type));
    j["template"] = render_template(g);
    j["members"] = g.member_ids.size();
    j["created_by"] = std::string(to_string(g.created_by));
    out.push_back(std::move(j));
  }
  return out;
}

json summary_json(const Session& session, bool complete) {
  const auto& e = session.engine();
  const auto& st = session.stats();
  json j;
  j["state"] = complete ? "complete" : "running";
  j["mode"] = e.options().mode == UpdateMode::Guided ? "guided" : "auto";
  j["messages_parsed"] = st.messages;
  j["groups"] = e.groups().size();
  j["queries_answered"] = e.queries_asked();
  auto budget = e.remaining_budget();
  j["remaining_budget"] = budget ? json(*budget) : json(nullptr);
  j["channel_failed"] = e.channel_failed();
  return j;
}

Decision ServeChannel::ask(const MergeQuery& q) {
  std::unique_lock lock(mu_);
  if (closed_) throw ChannelError("query endpoint closed");
  pending_ = q;
  answer_.reset();
  cv_.wait(lock, [&] { return answer_.has_value() || closed_; });
  pending_.reset();
  if (!answer_) throw ChannelError("query endpoint closed");
  Decision d = *answer_;
  answer_.reset();
  return d;
}

std::optional<json> ServeChannel::pending() const {
  std::lock_guard lock(mu_);
  if (!pending_ || answer_) return std::nullopt;
  return query_json(*pending_);
}

ServeChannel::AnswerStatus ServeChannel::answer(std::uint64_t query_id, const std::string& body) {
  std::optional<Decision> d;
  try {
    auto j = json::parse(body);
    if (j.is_object() && j.contains("decision") && j["decision"].is_string())
      d = parse_decision(j["decision"].get<std::string>());
  } catch (const json::exception&) {
  }
  if (!d) return AnswerStatus::Malformed;
  std::lock_guard lock(mu_);
  if (!pending_ || answer_ || pending_->query_id != query_id) return AnswerStatus::Stale;
  answer_ = d;
  ++answered_;
  cv_.notify_all();
  return AnswerStatus::Ok;
}

void ServeChannel::publish(json summary, std::optional<json> groups) {
  std::lock_guard lock(mu_);
  summary_ = std::move(summary);
  if (groups) groups_ = std::move(*groups);
}

json ServeChannel::summary() const {
  std::lock_guard lock(mu_);
  json s = summary_;
  s["pending_query_id"] = pending_ && !answer_ ? json(pending_->query_id) : json(nullptr);
  return s;
}

json ServeChannel::groups() const {
  std::lock_guard lock(mu_);
  return groups_;
}

void ServeChannel::close() {
  std::lock_guard lock(mu_);
  closed_ = true;
  cv_.notify_all();
}

QueryServer::QueryServer(ServeChannel& channel) : channel_(channel), server_(std::make_unique<httplib::Server>()) {
  auto& srv = *server_;
  // SO_REUSEADDR only: the library default adds SO_REUSEPORT, which would let
  // a second server share a busy port silently.
  srv.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  auto send_json = [](httplib::Response& res, const json& j) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(j.dump(), "application/json");
  };
  srv.Get("/api/session", [this, send_json](const httplib::Request&, httplib::Response& res) {
    send_json(res, channel_.summary());
  });
  srv.Get("/api/query/next", [this, send_json](const httplib::Request&, httplib::Response& res) {
    auto q = channel_.pending();
    if (!q) {
      res.status = 204;
      res.set_header("Access-Control-Allow-Origin", "*");
      return;
    }
    send_json(res, *q);
  });
  srv.Post(R"(/api/query/(\d+)/answer)", [this, send_json](const httplib::Request& req, httplib::Response& res) {
    std::uint64_t id = 0;
    try {
      id = std::stoull(req.matches[1].str());
    } catch (const std::exception&) {
      res.status = 400;
      send_json(res, {{"error", "bad query id"}});
      return;
    }
    switch (channel_.answer(id, req.body)) {
      case ServeChannel::AnswerStatus::Ok:
        res.status = 200;
        send_json(res, {{"ok", true}, {"query_id", id}});
        break;
      case ServeChannel::AnswerStatus::Stale:
        res.status = 409;
        send_json(res, {{"error", "query is not pending"}, {"query_id", id}});
        break;
      case ServeChannel::AnswerStatus::Malformed:
        res.status = 400;
        send_json(res, {{"error", "expected {\"decision\":\"ACCEPT\"|\"REJECT\"}"}});
        break;
    }
  });
  srv.Get("/api/groups", [this, send_json](const httplib::Request&, httplib::Response& res) {
    send_json(res, channel_.groups());
  });
}

QueryServer::~QueryServer() { stop(); }

bool QueryServer::bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = server_->bind_to_any_port(host.c_str());
    return port_ > 0;
  }
  if (!server_->bind_to_port(host.c_str(), port)) return false;
  port_ = port;
  return true;
}

void QueryServer::start() {
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void QueryServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace hybridlog::serve
