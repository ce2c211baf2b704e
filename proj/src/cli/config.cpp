#include "avc/cli/config.hpp"

#include "avc/util/text.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <sstream>

namespace avc::cli {

namespace {

std::string strip(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

bool bare_key(std::string_view k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
    return true;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("avc.toml:" + std::to_string(line) + ": " + msg);
}

// Parses a value starting at `v`; returns it and the unparsed rest.
std::pair<TomlValue, std::string> value(const std::string& v, int line) {
    if (v.empty()) fail(line, "missing value");
    if (v[0] == '"') {
        std::string out;
        std::size_t i = 1;
        for (; i < v.size() && v[i] != '"'; ++i) {
            if (v[i] != '\\') {
                out += v[i];
                continue;
            }
            if (++i >= v.size()) fail(line, "unterminated string");
            switch (v[i]) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                default: fail(line, std::string("unsupported escape \\") + v[i]);
            }
        }
        if (i >= v.size()) fail(line, "unterminated string");
        return {out, v.substr(i + 1)};
    }
    const auto end = v.find_first_of(" \t#");
    const std::string tok = v.substr(0, end);
    const std::string rest = end == std::string::npos ? "" : v.substr(end);
    if (tok == "true") return {true, rest};
    if (tok == "false") return {false, rest};
    std::string digits;
    for (char c : tok)
        if (c != '_') digits += c;
    std::int64_t i = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), i);
    if (ec == std::errc() && p == digits.data() + digits.size()) return {i, rest};
    double d = 0;
    auto [p2, ec2] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
    if (ec2 == std::errc() && p2 == digits.data() + digits.size()) return {d, rest};
    fail(line, "unsupported value '" + tok + "'");
}

}  // namespace

TomlTable parse_toml(std::string_view text) {
    TomlTable out;
    std::string section;
    std::istringstream in{std::string(text)};
    int n = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++n;
        const std::string line = strip(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line[0] == '[') {
            const auto close = line.find(']');
            if (close == std::string::npos) fail(n, "unterminated section header");
            section = strip(std::string_view(line).substr(1, close - 1));
            if (!bare_key(section)) fail(n, "unsupported section name '" + section + "'");
            const std::string tail = strip(std::string_view(line).substr(close + 1));
            if (!tail.empty() && tail[0] != '#') fail(n, "unexpected text after section header");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(n, "expected key = value");
        const std::string key = strip(std::string_view(line).substr(0, eq));
        if (!bare_key(key)) fail(n, "unsupported key '" + key + "'");
        auto [v, rest] = value(strip(std::string_view(line).substr(eq + 1)), n);
        rest = strip(rest);
        if (!rest.empty() && rest[0] != '#') fail(n, "unexpected text after value");
        const std::string full = section.empty() ? key : section + "." + key;
        if (out.contains(full)) fail(n, "duplicate key '" + full + "'");
        out.emplace(full, std::move(v));
    }
    return out;
}

namespace {

template <typename T>
std::optional<T> get(const TomlTable& t, const std::string& key) {
    auto it = t.find(key);
    if (it == t.end()) return std::nullopt;
    if constexpr (std::is_same_v<T, double>) {
        if (auto* i = std::get_if<std::int64_t>(&it->second)) return static_cast<double>(*i);
    }
    if (auto* v = std::get_if<T>(&it->second)) return *v;
    throw ConfigError("avc.toml: '" + key + "' has the wrong type");
}

int get_int(const TomlTable& t, const std::string& key, int fallback, int lo, int hi) {
    auto v = get<std::int64_t>(t, key);
    if (!v) return fallback;
    if (*v < lo || *v > hi)
        throw ConfigError("avc.toml: '" + key + "' must be between " + std::to_string(lo) + " and " + std::to_string(hi));
    return static_cast<int>(*v);
}

}  // namespace

RunConfig load_config(const std::optional<std::string>& path) {
    RunConfig cfg;
    if (!path || !std::filesystem::exists(*path)) return cfg;
    const TomlTable t = parse_toml(read_file(*path));
    static const char* known[] = {"solver.command",     "solver.timeout_seconds", "solver.enabled",
                                  "review.port",        "agent.endpoint",         "agent.model",
                                  "agent.token_env",    "agent.max_repairs",      "agent.temperature",
                                  "agent.timeout_seconds", "agent.response_pointer"};
    for (const auto& [k, _] : t)
        if (std::find(std::begin(known), std::end(known), k) == std::end(known))
            throw ConfigError("avc.toml: unknown key '" + k + "'");

    if (auto cmd = get<std::string>(t, "solver.command")) {
        cfg.solver.command = *cmd;
        cfg.solver.enabled = !cmd->empty();
    }
    if (auto en = get<bool>(t, "solver.enabled")) cfg.solver.enabled = *en && !cfg.solver.command.empty();
    if (auto v = get<double>(t, "solver.timeout_seconds")) {
        if (*v <= 0) throw ConfigError("avc.toml: 'solver.timeout_seconds' must be positive");
        cfg.solver.timeout_seconds = *v;
    }
    cfg.port = get_int(t, "review.port", cfg.port, 0, 65535);
    if (auto v = get<std::string>(t, "agent.endpoint")) cfg.agent.endpoint = *v;
    if (auto v = get<std::string>(t, "agent.model")) cfg.agent.model = *v;
    if (auto v = get<std::string>(t, "agent.token_env")) cfg.agent.token_env = *v;
    if (auto v = get<std::string>(t, "agent.response_pointer")) cfg.agent.response_pointer = *v;
    cfg.agent.max_repairs = get_int(t, "agent.max_repairs", cfg.agent.max_repairs, 0, 100);
    cfg.agent.timeout_seconds = get_int(t, "agent.timeout_seconds", cfg.agent.timeout_seconds, 1, 86400);
    if (auto v = get<double>(t, "agent.temperature")) cfg.agent.temperature = *v;
    return cfg;
}

void apply_environment(RunConfig& cfg) {
    if (const char* s = std::getenv("AVC_SOLVER")) {
        cfg.solver.command = s;
        cfg.solver.enabled = !cfg.solver.command.empty();
    }
}

}  // namespace avc::cli
