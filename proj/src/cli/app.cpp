#include "avc/cli/app.hpp"

#include "avc/agent/agent.hpp"
#include "avc/assurance/export.hpp"
#include "avc/checker/smt.hpp"
#include "avc/cli/config.hpp"
#include "avc/review/service.hpp"
#include "avc/sl/parse.hpp"
#include "avc/util/hash.hpp"
#include "avc/util/text.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace avc::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kFailure = 2;

constexpr const char* kCacheVersion = "avc-cache v1";

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string load(const std::string& path) {
    if (!fs::is_regular_file(path)) throw IoError("cannot read '" + path + "': no such file");
    return read_file(path);
}

struct Inputs {
    std::string rationale_path;
    std::string rationale_text;
    rationale::Rationale r;
    std::string program_path;
    sl::SubjectProgram prog;
};

Inputs load_inputs(const std::string& rpath, const std::string& ppath) {
    Inputs in;
    in.rationale_path = rpath;
    in.rationale_text = load(rpath);
    in.r = rationale::parse_rationale(in.rationale_text);
    in.program_path = ppath;
    in.prog = sl::parse_program(load(ppath));
    return in;
}

struct SolverFlags {
    std::optional<std::string> command;
    bool disabled = false;
    std::optional<double> timeout;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
    cmd->add_option("--solver", f.command, "Solver command; {file} is replaced by the script path, "
                                           "otherwise the script is piped to standard input");
    cmd->add_flag("--no-solver", f.disabled, "Skip Tier 2");
    cmd->add_option("--solver-timeout", f.timeout, "Seconds per solver run")->check(CLI::PositiveNumber);
}

checker::SolverConfig solver_config(RunConfig cfg, const SolverFlags& f) {
    if (f.command) {
        cfg.solver.command = *f.command;
        cfg.solver.enabled = !f.command->empty();
    }
    if (f.timeout) cfg.solver.timeout_seconds = *f.timeout;
    if (f.disabled) cfg.solver.enabled = false;
    return cfg.solver;
}

std::optional<fs::path> cache_dir(const std::optional<std::string>& flag, bool disabled) {
    if (disabled) return std::nullopt;
    if (flag) return fs::path(*flag);
    if (const char* d = std::getenv("AVC_CACHE_DIR"); d && *d) return fs::path(d);
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "avc";
    if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "avc";
    return std::nullopt;
}

std::string cache_key(const Inputs& in, const pipeline::AnalysisOptions& opts) {
    std::string material = std::string(kCacheVersion) + "\n" + sha256_hex(in.rationale_text) + "\n" +
                           in.prog.source_hash + "\n";
    if (opts.solver.enabled)
        material += opts.solver.command + "\n" + std::to_string(opts.solver.timeout_seconds) + "\n";
    else
        material += "no-solver\n";
    material += std::to_string(opts.limits.max_atoms) + "/" + std::to_string(opts.limits.max_decisions) + "\n";
    return sha256_hex(material);
}

pipeline::AnalysisResult analyze(const Inputs& in, const pipeline::AnalysisOptions& opts,
                                 const std::optional<fs::path>& cache, std::ostream& err) {
    analyzers::check_subject(in.r, in.prog);
    std::optional<fs::path> file;
    if (cache) {
        file = *cache / (cache_key(in, opts) + ".json");
        std::error_code ec;
        if (fs::exists(*file, ec)) {
            try {
                auto cached = pipeline::result_from_json(pipeline::Json::parse(read_file(file->string())));
                if (cached.program_hash == in.prog.source_hash) return cached;
            } catch (const std::exception&) {
                err << "warning: ignoring unreadable cache entry " << file->string() << "\n";
            }
        }
    }
    auto result = pipeline::analyze_parallel(in.r, in.prog, opts);
    if (file) {
        // Results are cached only when no solver run failed to finish.
        bool transient = false;
        for (const auto& [_, v] : result.verdicts)
            transient = transient || v.diagnostic.find("timed out") != std::string::npos;
        std::error_code ec;
        fs::create_directories(file->parent_path(), ec);
        if (!transient && !ec) {
            try {
                write_file(file->string(), pipeline::result_to_json(result).dump() + "\n");
            } catch (const std::exception&) {
                err << "warning: could not write cache entry " << file->string() << "\n";
            }
        }
    }
    return result;
}

bool has_findings(const pipeline::AnalysisResult& a) {
    for (const auto& [_, v] : a.verdicts)
        if (v.status == checker::VerdictStatus::MachineInvalid) return true;
    for (const auto& [_, e] : a.evidence)
        if (e.status == analyzers::EvidenceStatus::Refuted) return true;
    return false;
}

// Blocks until SIGINT or SIGTERM.
void wait_for_signal() {
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    int sig = 0;
    sigwait(&set, &sig);
}

void block_signals() {
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Checks adequacy rationales for generated programs.", "avc"};
    app.require_subcommand(1);
    std::optional<std::string> config_path;
    app.add_option("--config", config_path, "Configuration file (default: ./avc.toml when present)");

    std::string format = "text";

    std::string rationale_path, program_path;
    SolverFlags solver_flags;
    std::optional<std::string> cache_flag;
    bool no_cache = false;
    bool serial = false;

    auto* check = app.add_subcommand("check", "Validate a rationale file");
    check->add_option("rationale", rationale_path, "Rationale file")->required();

    auto* analyze_cmd = app.add_subcommand("analyze", "Check every inference and run hinted verifiers");
    auto* checklist_cmd = app.add_subcommand("checklist", "Print the review checklist");
    for (auto* cmd : {analyze_cmd, checklist_cmd}) {
        cmd->add_option("rationale", rationale_path, "Rationale file")->required();
        cmd->add_option("program", program_path, "Subject program")->required();
        add_solver_flags(cmd, solver_flags);
        cmd->add_option("--cache-dir", cache_flag, "Result cache directory");
        cmd->add_flag("--no-cache", no_cache, "Neither read nor write cached results");
    }
    analyze_cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json", "markdown"}))
        ->capture_default_str();
    analyze_cmd->add_flag("--serial", serial, "Run the checks one at a time");
    std::string checklist_format = "markdown";
    checklist_cmd->add_option("--format", checklist_format, "Output format; text is the same as markdown")
        ->check(CLI::IsMember({"text", "json", "markdown"}))
        ->capture_default_str();

    auto* review_cmd = app.add_subcommand("review", "Serve the review API for one rationale");
    std::optional<int> port;
    std::optional<std::string> session_path, static_dir;
    std::string host = "127.0.0.1";
    review_cmd->add_option("rationale", rationale_path, "Rationale file")->required();
    review_cmd->add_option("program", program_path, "Subject program")->required();
    add_solver_flags(review_cmd, solver_flags);
    review_cmd->add_option("--port", port, "Port (default 7341)")->check(CLI::Range(0, 65535));
    review_cmd->add_option("--host", host, "Interface to bind")->capture_default_str();
    review_cmd->add_option("--session", session_path, "Session log (default <rationale>.session.jsonl)");
    review_cmd->add_option("--static", static_dir, "Directory of UI assets to serve at /");
    review_cmd->add_option("--cache-dir", cache_flag, "Result cache directory");
    review_cmd->add_flag("--no-cache", no_cache, "Neither read nor write cached results");

    auto* smt_cmd = app.add_subcommand("smt", "Write the Tier-2 script of every inference");
    std::string smt_out;
    smt_cmd->add_option("rationale", rationale_path, "Rationale file")->required();
    smt_cmd->add_option("--out", smt_out, "Output directory")->required();

    auto* agent_cmd = app.add_subcommand("agent", "Generate rationales with a language model");
    agent_cmd->require_subcommand(1);
    auto* generate = agent_cmd->add_subcommand("generate", "Ask the model for a rationale");
    std::string spec_path, out_path;
    std::optional<std::string> endpoint, model, token_env, transcript_path, grammar_path;
    std::optional<int> max_repairs;
    generate->add_option("--spec", spec_path, "Specification text")->required();
    generate->add_option("--program", program_path, "Subject program")->required();
    generate->add_option("--out", out_path, "Where to write the rationale")->required();
    generate->add_option("--endpoint", endpoint, "Chat-completion URL");
    generate->add_option("--model", model, "Model name");
    generate->add_option("--token-env", token_env, "Environment variable holding the bearer token");
    generate->add_option("--max-repairs", max_repairs, "Repair rounds after the first reply")
        ->check(CLI::NonNegativeNumber);
    generate->add_option("--transcript", transcript_path, "Write every exchange as JSON");
    generate->add_option("--grammar", grammar_path, "Grammar notes to embed instead of the built-in summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kFailure;
    }

    try {
        std::optional<std::string> cfg_file = config_path;
        if (!cfg_file && fs::exists("avc.toml")) cfg_file = "avc.toml";
        if (config_path && !fs::exists(*config_path)) throw IoError("cannot read '" + *config_path + "'");
        RunConfig cfg = load_config(cfg_file);
        apply_environment(cfg);

        if (*check) {
            const auto text = load(rationale_path);
            const auto r = rationale::parse_rationale_syntax(text);
            const Diagnostics d = rationale::validate_structure(r);
            if (!d.empty()) {
                err << format_diagnostics(d);
                return kFindings;
            }
            out << rationale_path << ": ok (" << r.claims.size() << " claims, " << r.decompositions.size()
                << " decompositions)\n";
            return kOk;
        }

        if (*smt_cmd) {
            const auto r = rationale::parse_rationale(load(rationale_path));
            fs::create_directories(smt_out);
            for (const auto& parent : pipeline::decomposition_order(r)) {
                std::vector<logic::Formula> premises;
                for (const auto& c : r.decomposition_of(parent)->children)
                    premises.push_back(rationale::statement_formula(r.claim(c)));
                const fs::path file = fs::path(smt_out) / (parent + ".smt2");
                write_file(file.string(),
                           checker::emit_smt(r.signature, premises, rationale::statement_formula(r.claim(parent))));
                out << file.string() << "\n";
            }
            return kOk;
        }

        if (*generate) {
            agent::AgentConfig acfg = cfg.agent;
            if (endpoint) acfg.endpoint = *endpoint;
            if (model) acfg.model = *model;
            if (token_env) acfg.token_env = *token_env;
            if (max_repairs) acfg.max_repairs = *max_repairs;
            const std::string prompt =
                agent::render_prompt(load(spec_path), load(program_path),
                                     grammar_path ? load(*grammar_path) : agent::default_grammar_notes());
            if (prompt.find("Warning: the specification is empty") != std::string::npos)
                err << "warning: the specification is empty\n";
            const auto result = agent::generate_with_repair(acfg, prompt);
            if (transcript_path) write_file(*transcript_path, agent::transcript_json(result).dump(2) + "\n");
            if (!result.ok()) {
                for (const auto& d : result.diagnostics()) err << d << "\n";
                const bool transport = !result.transcript.empty() && result.transcript.back().reply.empty();
                err << (transport ? "generation failed: could not reach the model\n"
                                  : "generation failed after " + std::to_string(result.transcript.size()) +
                                        " exchanges\n");
                return transport ? kFailure : kFindings;
            }
            write_file(out_path, rationale::print_rationale(*result.rationale));
            out << "wrote " << out_path << " after " << result.transcript.size() << " exchange"
                << (result.transcript.size() == 1 ? "" : "s") << "\n";
            return kOk;
        }

        const Inputs in = load_inputs(rationale_path, program_path);
        pipeline::AnalysisOptions opts;
        opts.solver = solver_config(cfg, solver_flags);
        const auto cache = cache_dir(cache_flag, no_cache);

        if (*analyze_cmd) {
            pipeline::AnalysisResult a;
            if (serial) {
                analyzers::check_subject(in.r, in.prog);
                a = pipeline::analyze_serial(in.r, in.prog, opts);
            } else {
                a = analyze(in, opts, cache, err);
            }
            if (format == "json")
                out << pipeline::report_json(in.r, a).dump(2) << "\n";
            else if (format == "markdown")
                out << pipeline::report_markdown(in.r, a);
            else
                out << pipeline::report_text(in.r, a);
            return has_findings(a) ? kFindings : kOk;
        }

        if (*checklist_cmd) {
            const auto a = analyze(in, opts, cache, err);
            const auto items = assurance::extract_checklist(in.r, a.evidence, a.verdicts);
            if (checklist_format == "json")
                out << assurance::checklist_json(items).dump(2) << "\n";
            else
                out << assurance::checklist_markdown(in.r, items);
            return kOk;
        }

        if (*review_cmd) {
            block_signals();
            const auto a = analyze(in, opts, cache, err);
            const std::string spath = session_path ? *session_path : review::default_session_path(rationale_path);
            auto state = std::make_shared<review::ReviewState>(
                in.r, a, review::Session::open(spath, sha256_hex(in.rationale_text), in.prog.source_hash));
            review::ServeOptions sopts;
            sopts.host = host;
            sopts.port = port ? *port : cfg.port;
            sopts.static_dir = static_dir;
            review::ReviewService svc(state, sopts);
            svc.start();
            out << "reviewing " << in.r.name << " at http://" << host << ":" << svc.port() << "/api (session "
                << spath << ")" << std::endl;
            wait_for_signal();
            svc.stop();
            return kOk;
        }
    } catch (const rationale::ValidationError& e) {
        err << e.what();
        return kFindings;
    } catch (const analyzers::StaleSubjectError& e) {
        err << "stale subject: " << e.what() << "\n";
        return kFindings;
    } catch (const review::SessionError& e) {
        err << "session: " << e.what() << "\n";
        return kFindings;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kFailure;
    } catch (const ConfigError& e) {
        err << "config: " << e.what() << "\n";
        return kFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}

}  // namespace avc::cli
