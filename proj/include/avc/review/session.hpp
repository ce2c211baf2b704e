#pragma once

#include "avc/assurance/assurance.hpp"

#include <stdexcept>
#include <string>

namespace avc::review {

inline constexpr const char* kSessionFormat = "avc-session v1";

class SessionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// `<name>.session.jsonl`: a header line binding the session to content
// hashes, then one judgment per line.
class Session {
public:
    // Loads an existing file or creates it. Throws SessionError when the
    // stored hashes differ or the log is malformed. A torn final line (no
    // trailing newline) is dropped.
    static Session open(const std::string& path, const std::string& rationale_hash, const std::string& program_hash);

    // Writes and fsyncs one line. The timestamp is bumped when needed to
    // keep the log strictly increasing; the stored judgment is returned.
    assurance::Judgment append(assurance::Judgment j);

    const assurance::JudgmentLog& log() const { return log_; }
    const std::string& path() const { return path_; }
    std::int64_t created() const { return created_; }
    std::int64_t updated() const { return log_.empty() ? created_ : log_.back().timestamp; }

private:
    std::string path_;
    std::int64_t created_ = 0;
    assurance::JudgmentLog log_;
};

std::string default_session_path(const std::string& rationale_path);

std::int64_t now_ms();

}  // namespace avc::review
