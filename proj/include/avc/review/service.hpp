#pragma once

#include "avc/pipeline/analysis.hpp"
#include "avc/review/session.hpp"

#include <memory>
#include <optional>
#include <shared_mutex>
#include <thread>

namespace httplib {
class Server;
}

namespace avc::review {

using Json = nlohmann::ordered_json;

inline constexpr const char* kApiHeader = "X-AVC-API";
inline constexpr const char* kApiVersion = "1";
inline constexpr int kDefaultPort = 7341;

struct ApiResponse {
    int status = 200;
    Json body;
};

// Request handling without the transport. Reads take a shared lock; judgment
// appends are serialized and answered from the state after the write.
class ReviewState {
public:
    ReviewState(rationale::Rationale r, pipeline::AnalysisResult analysis, Session session);

    ApiResponse rationale() const;
    ApiResponse checklist() const;
    ApiResponse status() const;
    ApiResponse evidence(const std::string& claim_id) const;
    ApiResponse post_judgment(const Json& body);
    ApiResponse whatif(const Json& body) const;

    assurance::StatusReport report() const;
    assurance::JudgmentLog log() const;

private:
    ApiResponse status_locked() const;

    const rationale::Rationale r_;
    const pipeline::AnalysisResult analysis_;
    const std::vector<assurance::ChecklistItem> items_;
    mutable std::shared_mutex mu_;
    Session session_;
};

struct ServeOptions {
    std::string host = "127.0.0.1";
    int port = kDefaultPort;  // 0 picks a free port
    std::optional<std::string> static_dir{};
};

class ReviewService {
public:
    // Binds immediately; throws std::runtime_error when the port is taken.
    ReviewService(std::shared_ptr<ReviewState> state, const ServeOptions& opts);
    ~ReviewService();
    ReviewService(const ReviewService&) = delete;
    ReviewService& operator=(const ReviewService&) = delete;

    int port() const { return port_; }
    void start();  // listens on a background thread
    void run();    // listens on the calling thread
    void stop();

private:
    std::shared_ptr<ReviewState> state_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    int port_ = 0;
};

}  // namespace avc::review
