#include "avc/review/session.hpp"

#include "avc/assurance/export.hpp"
#include "avc/util/text.hpp"

#include <chrono>
#include <fcntl.h>
#include <filesystem>
#include <sstream>
#include <unistd.h>

namespace avc::review {

namespace fs = std::filesystem;
using assurance::Json;

std::int64_t now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::string default_session_path(const std::string& rationale_path) {
    fs::path p(rationale_path);
    return (p.parent_path() / (p.stem().string() + ".session.jsonl")).string();
}

namespace {

void append_line(const std::string& path, const std::string& line) {
    const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd < 0) throw SessionError("cannot open session file '" + path + "' for writing");
    const std::string data = line + "\n";
    std::size_t done = 0;
    while (done < data.size()) {
        const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
        if (n < 0) {
            ::close(fd);
            throw SessionError("write to session file '" + path + "' failed");
        }
        done += static_cast<std::size_t>(n);
    }
    const bool synced = ::fsync(fd) == 0;
    ::close(fd);
    if (!synced) throw SessionError("fsync of session file '" + path + "' failed");
}

std::string field(const Json& j, const char* key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) throw SessionError(path + ": header lacks '" + key + "'");
    return it->get<std::string>();
}

}  // namespace

Session Session::open(const std::string& path, const std::string& rationale_hash, const std::string& program_hash) {
    Session s;
    s.path_ = path;
    if (!fs::exists(path) || fs::file_size(path) == 0) {
        s.created_ = now_ms();
        Json header = {{"format", kSessionFormat},
                       {"rationaleHash", rationale_hash},
                       {"programHash", program_hash},
                       {"created", s.created_}};
        append_line(path, header.dump());
        return s;
    }

    std::string text = read_file(path);
    if (text.back() != '\n') {
        const auto cut = text.rfind('\n');
        text.resize(cut == std::string::npos ? 0 : cut + 1);
        fs::resize_file(path, text.size());
        if (text.empty()) return open(path, rationale_hash, program_hash);
    }
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    Json header;
    try {
        header = Json::parse(lines.at(0));
    } catch (const std::exception&) {
        throw SessionError(path + ": first line is not a session header");
    }
    if (!header.is_object() || header.value("format", "") != kSessionFormat)
        throw SessionError(path + ": not an " + std::string(kSessionFormat) + " file");
    const std::string rh = field(header, "rationaleHash", path);
    const std::string ph = field(header, "programHash", path);
    if (rh != rationale_hash)
        throw SessionError(path + ": session belongs to rationale " + rh.substr(0, 12) + "…, current rationale is " +
                           rationale_hash.substr(0, 12) + "…; refusing to load");
    if (ph != program_hash)
        throw SessionError(path + ": session belongs to program " + ph.substr(0, 12) + "…, current program is " +
                           program_hash.substr(0, 12) + "…; refusing to load");
    s.created_ = header.value("created", std::int64_t{0});

    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].find_first_not_of(" \r") == std::string::npos) continue;
        assurance::Judgment j;
        try {
            j = assurance::judgment_from_json(Json::parse(lines[i]));
        } catch (const std::exception& e) {
            throw SessionError(path + ":" + std::to_string(i + 1) + ": " + e.what());
        }
        if (!s.log_.empty() && j.timestamp <= s.log_.back().timestamp)
            throw SessionError(path + ":" + std::to_string(i + 1) + ": timestamps must strictly increase");
        s.log_.push_back(std::move(j));
    }
    return s;
}

assurance::Judgment Session::append(assurance::Judgment j) {
    j.timestamp = std::max({j.timestamp, now_ms(), updated() + 1});
    append_line(path_, assurance::to_json(j).dump());
    log_.push_back(j);
    return j;
}

}  // namespace avc::review
