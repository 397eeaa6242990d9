#pragma once

#include "hoop/session.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace hoop {

struct HttpResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

nlohmann::json to_json(const HitTarget& target);
nlohmann::json to_json(const Transition& transition);
nlohmann::json to_json(const SegmentStats& stats);
nlohmann::json to_json(const Arrangement& arrangement);
nlohmann::json command_to_json(const InteractionCommand& command);

/// Throws Error(Parse) on a malformed command object.
InteractionCommand command_from_json(const nlohmann::json& body);

/// The response body every successful create/command/state request returns.
nlohmann::json snapshot_json(const std::string& session_id, const SessionState& state,
                             const std::optional<Transition>& transition);

/// Owns the live sessions. Requests for different sessions run
/// concurrently; requests for one session are applied in arrival order.
class SessionService {
public:
    using Clock = std::function<std::int64_t()>;

    explicit SessionService(Clock clock = {});

    /// Routes POST /session, POST /session/{id}/command,
    /// GET /session/{id}/state and GET /session/{id}/log.
    HttpResponse handle(std::string_view method, std::string_view path, std::string_view body);

    HttpResponse create(std::string_view body);
    HttpResponse command(const std::string& session_id, std::string_view body);
    HttpResponse state(const std::string& session_id);
    HttpResponse log(const std::string& session_id);

    std::optional<SessionState> find(const std::string& session_id) const;

private:
    struct Entry {
        std::mutex mutex;
        SessionState state;
    };

    std::shared_ptr<Entry> lookup(const std::string& session_id) const;

    Clock clock_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
    std::uint64_t next_id_ = 1;
};

/// HTTP/1.1 front end for a SessionService.
class HttpServer {
public:
    explicit HttpServer(SessionService& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Port 0 picks a free port. Returns the bound port, or -1.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    bool listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace hoop
