#include "avc/review/service.hpp"

#include "avc/assurance/export.hpp"
#include "avc/rationale/interchange.hpp"

#include <httplib.h>

#include <mutex>

namespace avc::review {

namespace {

ApiResponse error(int status, const std::string& msg) { return {status, Json{{"error", msg}}}; }

}  // namespace

ReviewState::ReviewState(rationale::Rationale r, pipeline::AnalysisResult analysis, Session session)
    : r_(std::move(r)),
      analysis_(std::move(analysis)),
      items_(assurance::extract_checklist(r_, analysis_.evidence, analysis_.verdicts)),
      session_(std::move(session)) {
    for (const auto& j : session_.log()) {
        bool known = false;
        for (const auto& item : items_) known = known || item.id == j.item_id;
        if (!known) throw SessionError(session_.path() + ": judgment for unknown item '" + j.item_id + "'");
    }
}

ApiResponse ReviewState::rationale() const { return {200, rationale::to_json(r_)}; }

ApiResponse ReviewState::checklist() const { return {200, assurance::checklist_json(items_)}; }

assurance::StatusReport ReviewState::report() const {
    std::shared_lock lock(mu_);
    return assurance::propagate(r_, analysis_.evidence, analysis_.verdicts, session_.log());
}

assurance::JudgmentLog ReviewState::log() const {
    std::shared_lock lock(mu_);
    return session_.log();
}

ApiResponse ReviewState::status_locked() const {
    return {200, assurance::to_json(assurance::propagate(r_, analysis_.evidence, analysis_.verdicts, session_.log()))};
}

ApiResponse ReviewState::status() const {
    std::shared_lock lock(mu_);
    return status_locked();
}

ApiResponse ReviewState::evidence(const std::string& claim_id) const {
    if (!r_.claims.contains(claim_id)) return error(404, "unknown claim '" + claim_id + "'");
    auto it = analysis_.evidence.find(claim_id);
    if (it == analysis_.evidence.end()) return error(404, "no evidence recorded for claim '" + claim_id + "'");
    return {200, analyzers::to_json(it->second)};
}

ApiResponse ReviewState::post_judgment(const Json& body) {
    assurance::Judgment j;
    try {
        Json b = body;
        // `item` is accepted as a shorthand for `itemId`.
        if (b.is_object() && !b.contains("itemId") && b.contains("item")) b["itemId"] = b["item"];
        j = assurance::judgment_from_json(b);
    } catch (const std::exception& e) {
        return error(400, e.what());
    }
    j.timestamp = 0;
    bool known = false;
    for (const auto& item : items_) known = known || item.id == j.item_id;
    if (!known) return error(404, "no checklist item '" + j.item_id + "'");

    std::unique_lock lock(mu_);
    const auto current = assurance::current_judgments(session_.log());
    auto it = current.find(j.item_id);
    // Repeating the standing judgment changes nothing, so nothing is logged.
    if (it == current.end() || it->second.verdict != j.verdict || it->second.note != j.note) {
        try {
            session_.append(std::move(j));
        } catch (const std::exception& e) {
            return error(500, e.what());
        }
    }
    return status_locked();
}

ApiResponse ReviewState::whatif(const Json& body) const {
    if (!body.is_object() || !body.contains("overlay") || !body["overlay"].is_array())
        return error(400, "body must be an object with an 'overlay' array");
    assurance::JudgmentLog overlay;
    try {
        for (const auto& o : body["overlay"]) overlay.push_back(assurance::judgment_from_json(o));
    } catch (const std::exception& e) {
        return error(400, e.what());
    }
    std::shared_lock lock(mu_);
    const assurance::AssuranceState base{&r_, analysis_.evidence, analysis_.verdicts, session_.log()};
    try {
        const assurance::WhatIf w = assurance::whatif(base, overlay);
        return {200, {{"status", assurance::to_json(w.report)["status"]}, {"delta", w.delta}}};
    } catch (const std::invalid_argument& e) {
        return error(400, e.what());
    }
}

namespace {

void reply(httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
}

Json parse_body(const httplib::Request& req, bool& ok) {
    Json body = Json::parse(req.body, nullptr, false);
    ok = !body.is_discarded();
    return body;
}

}  // namespace

ReviewService::ReviewService(std::shared_ptr<ReviewState> state, const ServeOptions& opts)
    : state_(std::move(state)), server_(std::make_unique<httplib::Server>()) {
    auto& s = *server_;
    // The library default adds SO_REUSEPORT, which would let a second
    // service share the port silently.
    s.set_socket_options([](socket_t sock) {
        int yes = 1;
        ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    s.set_pre_routing_handler([](const httplib::Request& req, httplib::Response& res) {
        if (req.has_header(kApiHeader) && req.get_header_value(kApiHeader) != kApiVersion) {
            res.set_header(kApiHeader, kApiVersion);
            reply(res, error(400, std::string("unsupported API version; this service speaks ") + kApiHeader + ": " +
                                      kApiVersion));
            return httplib::Server::HandlerResponse::Handled;
        }
        return httplib::Server::HandlerResponse::Unhandled;
    });
    s.set_post_routing_handler(
        [](const httplib::Request&, httplib::Response& res) { res.set_header(kApiHeader, kApiVersion); });
    s.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        res.set_header(kApiHeader, kApiVersion);
        reply(res, error(500, what));
    });

    auto st = state_;
    s.Get("/api/rationale", [st](const httplib::Request&, httplib::Response& res) { reply(res, st->rationale()); });
    s.Get("/api/checklist", [st](const httplib::Request&, httplib::Response& res) { reply(res, st->checklist()); });
    s.Get("/api/status", [st](const httplib::Request&, httplib::Response& res) { reply(res, st->status()); });
    s.Get(R"(/api/evidence/([^/]+))", [st](const httplib::Request& req, httplib::Response& res) {
        reply(res, st->evidence(req.matches[1]));
    });
    s.Post("/api/judgments", [st](const httplib::Request& req, httplib::Response& res) {
        bool ok = false;
        Json body = parse_body(req, ok);
        reply(res, ok ? st->post_judgment(body) : error(400, "request body is not JSON"));
    });
    s.Post("/api/whatif", [st](const httplib::Request& req, httplib::Response& res) {
        bool ok = false;
        Json body = parse_body(req, ok);
        reply(res, ok ? st->whatif(body) : error(400, "request body is not JSON"));
    });
    if (opts.static_dir && !s.set_mount_point("/", *opts.static_dir))
        throw std::runtime_error("static directory '" + *opts.static_dir + "' does not exist");

    if (opts.port == 0) {
        port_ = s.bind_to_any_port(opts.host);
        if (port_ < 0) throw std::runtime_error("could not bind to " + opts.host);
    } else {
        if (!s.bind_to_port(opts.host, opts.port))
            throw std::runtime_error("port " + std::to_string(opts.port) + " on " + opts.host + " is already in use");
        port_ = opts.port;
    }
}

ReviewService::~ReviewService() { stop(); }

void ReviewService::start() {
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
}

void ReviewService::run() { server_->listen_after_bind(); }

void ReviewService::stop() {
    server_->stop();
    if (thread_.joinable()) thread_.join();
}

}  // namespace avc::review
