#include "hoop/api.hpp"

#include "hoop/error.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdio>

namespace hoop {

using nlohmann::json;

json to_json(const HitTarget& target) {
    switch (target.kind) {
    case HitTarget::Kind::Set: return {{"kind", "set"}, {"index", target.index}};
    case HitTarget::Kind::Zone: return {{"kind", "zone"}, {"index", target.index}};
    case HitTarget::Kind::None: break;
    }
    return {{"kind", "none"}};
}

json to_json(const Transition& transition) {
    auto moves = [](const std::vector<Move>& list) {
        auto out = json::array();
        for (const auto& m : list) out.push_back({{"element", m.element}, {"from", m.from}, {"to", m.to}});
        return out;
    };
    return {{"command", transition.command},
            {"zone_moves", moves(transition.zone_moves)},
            {"set_moves", moves(transition.set_moves)},
            {"animation_duration_ms", transition.animation_duration_ms}};
}

json to_json(const SegmentStats& stats) { return {{"runs_per_set", stats.runs_per_set}, {"total", stats.total}}; }

json to_json(const Arrangement& arrangement) {
    return {{"zone_order", arrangement.zone_order},
            {"set_order", arrangement.set_order},
            {"topology", to_string(arrangement.topology)}};
}

json command_to_json(const InteractionCommand& cmd) {
    return std::visit(
        [](const auto& c) -> json {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, command::Probe>) {
                return {{"type", "probe"}, {"x", c.point.x}, {"y", c.point.y}};
            } else if constexpr (std::is_same_v<T, command::BringToFront>) {
                return {{"type", "bring_to_front"}, {"set", c.set}};
            } else if constexpr (std::is_same_v<T, command::ReorderSet>) {
                return {{"type", "reorder_set"}, {"set", c.set}};
            } else if constexpr (std::is_same_v<T, command::Rotate>) {
                return {{"type", "rotate"}, {"direction", c.direction == Direction::Left ? "left" : "right"}};
            } else {
                return {{"type", "reset"}};
            }
        },
        cmd);
}

namespace {

double number_field(const json& body, const char* key) {
    if (!body.contains(key) || !body[key].is_number()) {
        throw Error(ErrorCode::Parse, std::string("command needs numeric '") + key + "'");
    }
    return body[key].get<double>();
}

std::size_t index_field(const json& body, const char* key) {
    if (!body.contains(key) || !body[key].is_number_integer()) {
        throw Error(ErrorCode::Parse, std::string("command needs integer '") + key + "'");
    }
    if (body[key].is_number_unsigned()) return body[key].get<std::size_t>();
    throw Error(ErrorCode::InvalidIndex, std::string("'") + key + "' must not be negative");
}

} // namespace

InteractionCommand command_from_json(const json& body) {
    if (!body.is_object() || !body.contains("type") || !body["type"].is_string()) {
        throw Error(ErrorCode::Parse, "command object with a string 'type' expected");
    }
    const auto type = body["type"].get<std::string>();
    if (type == "probe") return command::Probe{{number_field(body, "x"), number_field(body, "y")}};
    if (type == "bring_to_front") return command::BringToFront{index_field(body, "set")};
    if (type == "reorder_set") return command::ReorderSet{index_field(body, "set")};
    if (type == "rotate") {
        const auto direction = body.value("direction", std::string{});
        if (direction == "left") return command::Rotate{Direction::Left};
        if (direction == "right") return command::Rotate{Direction::Right};
        throw Error(ErrorCode::Parse, "rotate direction must be 'left' or 'right'");
    }
    if (type == "reset") return command::Reset{};
    throw Error(ErrorCode::Parse, "unknown command type '" + type + "'");
}

json snapshot_json(const std::string& session_id, const SessionState& state, const std::optional<Transition>& transition) {
    json highlight = {{"target", to_json(state.highlight.target)}};
    highlight["emphasis"] =
        state.highlight.target.kind == HitTarget::Kind::None ? json(nullptr) : json(to_string(state.highlight.emphasis));
    return {{"session_id", session_id},
            {"kind", to_string(state.diagram_kind)},
            {"svg", render_current(state)},
            {"highlight", std::move(highlight)},
            {"transition", transition ? to_json(*transition) : json(nullptr)},
            {"segment_stats", to_json(current_stats(state))},
            {"arrangement", to_json(state.current_arrangement)}};
}

namespace {

HttpResponse error_response(int status, std::string_view code, const std::string& message,
                            const std::string& session_id = {}) {
    json body = {{"error", {{"code", code}, {"message", message}}}};
    if (!session_id.empty()) body["session_id"] = session_id;
    return {status, body.dump()};
}

HttpResponse from_error(const Error& e, const std::string& session_id = {}) {
    switch (e.code()) {
    case ErrorCode::InvalidIndex: return error_response(400, "invalid-index", e.what(), session_id);
    case ErrorCode::Parse:
    case ErrorCode::EmptyTable:
    case ErrorCode::DuplicateItem: return error_response(400, "malformed", e.what(), session_id);
    case ErrorCode::Validation:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::PaletteExhausted: return error_response(422, "invalid-system", e.what(), session_id);
    case ErrorCode::ThresholdExceeded: return error_response(422, "threshold-exceeded", e.what(), session_id);
    case ErrorCode::Io: break;
    }
    return error_response(500, "internal", e.what(), session_id);
}

json parse_body(std::string_view body) {
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, std::string("request body is not JSON: ") + e.what());
    }
}

} // namespace

SessionService::SessionService(Clock clock) : clock_(std::move(clock)) {
    if (!clock_) {
        const auto start = std::chrono::steady_clock::now();
        clock_ = [start] {
            return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                .count();
        };
    }
}

std::shared_ptr<SessionService::Entry> SessionService::lookup(const std::string& session_id) const {
    std::lock_guard lock(mutex_);
    const auto it = sessions_.find(session_id);
    return it == sessions_.end() ? nullptr : it->second;
}

std::optional<SessionState> SessionService::find(const std::string& session_id) const {
    const auto entry = lookup(session_id);
    if (!entry) return std::nullopt;
    std::lock_guard lock(entry->mutex);
    return entry->state;
}

HttpResponse SessionService::create(std::string_view body) {
    try {
        const auto doc = parse_body(body);
        if (!doc.is_object() || !doc.contains("system")) throw Error(ErrorCode::Parse, "create needs a 'system'");
        const auto system = parse_zones_json(doc["system"].dump());
        const auto kind = parse_diagram_kind(doc.value("kind", std::string("hoop")));
        SessionOptions options;
        options.optimizer = parse_optimizer_mode(doc.value("optimizer", std::string("auto")));
        if (doc.contains("seed")) {
            if (!doc["seed"].is_number_unsigned()) throw Error(ErrorCode::Parse, "'seed' must be a non-negative integer");
            options.seed = doc["seed"].get<std::uint64_t>();
        }
        if (doc.contains("canvas")) {
            if (!doc["canvas"].is_number()) throw Error(ErrorCode::Parse, "'canvas' must be a number");
            options.style.canvas_size = doc["canvas"].get<double>();
        }
        auto entry = std::make_shared<Entry>();
        entry->state = create_session(system, kind, options);

        std::string id;
        {
            std::lock_guard lock(mutex_);
            char buf[32];
            std::snprintf(buf, sizeof buf, "s%06llx", static_cast<unsigned long long>(next_id_++));
            id = buf;
            sessions_.emplace(id, entry);
        }
        std::lock_guard lock(entry->mutex);
        return {201, snapshot_json(id, entry->state, std::nullopt).dump()};
    } catch (const Error& e) {
        return from_error(e);
    } catch (const json::exception& e) {
        return error_response(400, "malformed", e.what());
    }
}

HttpResponse SessionService::command(const std::string& session_id, std::string_view body) {
    const auto entry = lookup(session_id);
    if (!entry) return error_response(404, "unknown-session", "no session '" + session_id + "'", session_id);
    try {
        const auto doc = parse_body(body);
        if (!doc.is_object() || !doc.contains("command")) throw Error(ErrorCode::Parse, "body needs a 'command'");
        if (doc.contains("session_id") && doc["session_id"] != session_id) {
            throw Error(ErrorCode::Parse, "session_id in body does not match the path");
        }
        const auto cmd = command_from_json(doc["command"]);
        std::lock_guard lock(entry->mutex);
        auto result = apply(entry->state, cmd, clock_());
        entry->state = std::move(result.state);
        return {200, snapshot_json(session_id, entry->state, result.transition).dump()};
    } catch (const Error& e) {
        return from_error(e, session_id);
    } catch (const json::exception& e) {
        return error_response(400, "malformed", e.what(), session_id);
    }
}

HttpResponse SessionService::state(const std::string& session_id) {
    const auto entry = lookup(session_id);
    if (!entry) return error_response(404, "unknown-session", "no session '" + session_id + "'", session_id);
    std::lock_guard lock(entry->mutex);
    return {200, snapshot_json(session_id, entry->state, std::nullopt).dump()};
}

HttpResponse SessionService::log(const std::string& session_id) {
    const auto entry = lookup(session_id);
    if (!entry) return error_response(404, "unknown-session", "no session '" + session_id + "'", session_id);
    std::lock_guard lock(entry->mutex);
    return {200, json{{"session_id", session_id}, {"log", export_log(entry->state)}}.dump()};
}

HttpResponse SessionService::handle(std::string_view method, std::string_view path, std::string_view body) {
    constexpr std::string_view prefix = "/session";
    if (path.substr(0, prefix.size()) != prefix) return error_response(404, "not-found", "no such endpoint");
    auto rest = path.substr(prefix.size());
    if (rest.empty() || rest == "/") {
        if (method != "POST") return error_response(405, "method-not-allowed", "use POST /session");
        return create(body);
    }
    if (rest.front() != '/') return error_response(404, "not-found", "no such endpoint");
    rest.remove_prefix(1);
    const auto slash = rest.find('/');
    if (slash == std::string_view::npos) return error_response(404, "not-found", "no such endpoint");
    const std::string id(rest.substr(0, slash));
    const auto action = rest.substr(slash + 1);
    if (action == "command") {
        if (method != "POST") return error_response(405, "method-not-allowed", "use POST", id);
        return command(id, body);
    }
    if (action == "state" || action == "log") {
        if (method != "GET") return error_response(405, "method-not-allowed", "use GET", id);
        return action == "state" ? state(id) : log(id);
    }
    return error_response(404, "not-found", "no such endpoint", id);
}

struct HttpServer::Impl {
    explicit Impl(SessionService& s) : service(s) {}

    SessionService& service;
    httplib::Server server;
};

HttpServer::HttpServer(SessionService& service) : impl_(std::make_unique<Impl>(service)) {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
        const auto reply = impl_->service.handle(req.method, req.path, req.body);
        res.status = reply.status;
        res.set_content(reply.body, reply.content_type);
    };
    impl_->server.Get(".*", handler);
    impl_->server.Post(".*", handler);
    impl_->server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    impl_->server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                       {"Access-Control-Allow-Headers", "Content-Type"},
                                       {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

} // namespace hoop
