#include "avc/cli/app.hpp"
#include "avc/checker/solver.hpp"
#include "avc/cli/config.hpp"
#include "avc/assurance/export.hpp"
#include "avc/util/hash.hpp"
#include "support/corpus.hpp"

#include <doctest.h>
#include <httplib.h>

#include <filesystem>
#include <sstream>
#include <thread>

using namespace avc;
namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run avc_run(std::vector<std::string> args) {
    args.insert(args.begin(), "avc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "avc-cli-tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string solver_flag() { return testing::solver_path() + " -in"; }

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto at = text.find(from);
    REQUIRE(at != std::string::npos);
    return text.replace(at, from.size(), to);
}

const char* kToyProgram = R"(#!sl v1

const LOW = 1.0
const MID = 3.0

def f(x):
    return {"level": "low"}
)";

const char* kToyRationale = R"(#!rationale v1
rationale toy
fn low : Real
fn mid : Real
claim R "root" { formal: mid == 3 * low; }
claim A "constants" {
  formal: mid == 3 * low;
  verify: const-relation(low=LOW, mid=MID);
}
decompose R -> [A]
root R
)";

}  // namespace

TEST_CASE("check") {
    CHECK(avc_run({"check", testing::kCorpusRationale}).code == 0);

    const fs::path dir = scratch("check");
    const std::string bad = replace(read_file(testing::kCorpusRationale), "decompose C2 -> [C4, C5, C6, C7]",
                                    "decompose C2 -> [C4, C5, C6, C7, C12]");
    write_file((dir / "dup.rationale").string(), bad);
    Run dup = avc_run({"check", (dir / "dup.rationale").string()});
    CHECK(dup.code == 1);
    CHECK(dup.err.find("duplicate-child") != std::string::npos);

    CHECK(avc_run({"check", (dir / "missing.rationale").string()}).code == 2);
    write_file((dir / "syntax.rationale").string(), "#!rationale v1\nrationale x\nclaim A {\n");
    Run syn = avc_run({"check", (dir / "syntax.rationale").string()});
    CHECK(syn.code == 2);
    CHECK(syn.err.find("line") != std::string::npos);

    CHECK(avc_run({}).code == 2);
    CHECK(avc_run({"frobnicate"}).code == 2);
    CHECK(avc_run({"--help"}).code == 0);
}

TEST_CASE("analyze the corpus") {
    const fs::path dir = scratch("analyze");
    const std::string cache = (dir / "cache").string();
    if (!testing::solver_path().empty()) {
        Run r = avc_run({"analyze", testing::kCorpusRationale, testing::kCorpusProgram, "--format", "json",
                         "--solver", solver_flag(), "--cache-dir", cache});
        CHECK(r.code == 0);
        const Json j = Json::parse(r.out);
        std::map<std::string, std::string> inf;
        for (const auto& i : j["inferences"]) inf[i["parent"]] = i["status"];
        CHECK(inf == std::map<std::string, std::string>{{"C_R", "Unknown"},
                                                        {"C0", "MachineValid"},
                                                        {"C2", "Unknown"},
                                                        {"C7", "Unknown"},
                                                        {"C3", "MachineValid"}});
        CHECK(j["checklistSize"] == 8);
    }
    Run r = avc_run({"analyze", testing::kCorpusRationale, testing::kCorpusProgram, "--format", "json",
                     "--no-solver", "--cache-dir", cache});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    int valid = 0;
    for (const auto& i : j["inferences"]) {
        if (i["status"] == "MachineValid") ++valid;
        if (i["parent"] == "C3") CHECK(i["status"] == "Unknown");
    }
    CHECK(valid == 1);
    std::set<std::string> verified;
    for (const auto& c : j["conjectures"])
        if (c["status"] == "Verified") verified.insert(c["claim"]);
    CHECK(verified == std::set<std::string>{"C1", "C6", "C8", "C11"});

    // The cached run gives the same report.
    CHECK(!fs::is_empty(cache));
    Run again = avc_run({"analyze", testing::kCorpusRationale, testing::kCorpusProgram, "--format", "json",
                         "--no-solver", "--cache-dir", cache});
    CHECK(again.out == r.out);
    Run serial = avc_run({"analyze", testing::kCorpusRationale, testing::kCorpusProgram, "--format", "json",
                          "--no-solver", "--serial", "--no-cache"});
    CHECK(serial.out == r.out);

    Run text = avc_run({"analyze", testing::kCorpusRationale, testing::kCorpusProgram, "--no-solver", "--no-cache"});
    CHECK(text.code == 0);
    CHECK(text.out.find("C11 string-inventory: Verified") != std::string::npos);
    Run md = avc_run({"analyze", testing::kCorpusRationale, testing::kCorpusProgram, "--no-solver", "--no-cache",
                      "--format", "markdown"});
    CHECK(md.out.rfind("#", 0) == 0);
    CHECK(avc_run({"analyze", testing::kCorpusRationale, testing::kCorpusProgram, "--format", "yaml"}).code == 2);
}

TEST_CASE("analyze edge cases") {
    const fs::path dir = scratch("edge");
    write_file((dir / "root.rationale").string(), "#!rationale v1\nrationale lone\nclaim R \"r\" { informal: \"fine\"; }\nroot R\n");
    write_file((dir / "toy.sl").string(), kToyProgram);
    Run lone = avc_run({"analyze", (dir / "root.rationale").string(), (dir / "toy.sl").string(), "--format", "json",
                        "--no-cache"});
    CHECK(lone.code == 0);
    const Json j = Json::parse(lone.out);
    CHECK(j["inferences"].empty());
    CHECK(j["conjectures"].size() == 1);
    CHECK(j["conjectures"][0]["status"] == "none");

    // A pinned subject hash that no longer matches.
    std::string pinned = read_file(testing::kCorpusRationale);
    const std::string hash = sha256_hex(read_file(testing::kCorpusProgram));
    write_file((dir / "aml.rationale").string(), replace(pinned, hash, std::string(64, 'f')));
    Run stale = avc_run({"analyze", (dir / "aml.rationale").string(), testing::kCorpusProgram, "--no-cache"});
    CHECK(stale.code == 1);
    CHECK(stale.err.find("stale subject") != std::string::npos);
    CHECK(avc_run({"checklist", (dir / "aml.rationale").string(), testing::kCorpusProgram, "--no-cache"}).code == 1);

    write_file((dir / "bad.sl").string(), "#!sl v1\ndef f(:\n");
    CHECK(avc_run({"analyze", testing::kCorpusRationale, (dir / "bad.sl").string(), "--no-cache"}).code == 2);

    // A refuted conjecture is a finding.
    write_file((dir / "toy.rationale").string(), replace(kToyRationale, "verify: const-relation(low=LOW, mid=MID)",
                                                         "verify: const-relation(low=MID, mid=LOW)"));
    CHECK(avc_run({"analyze", (dir / "toy.rationale").string(), (dir / "toy.sl").string(), "--no-cache"}).code == 1);
}

TEST_CASE("checklist") {
    const fs::path dir = scratch("checklist");
    const std::vector<std::string> solver =
        testing::solver_path().empty() ? std::vector<std::string>{"--no-solver"}
                                       : std::vector<std::string>{"--solver", solver_flag()};
    const std::size_t n = testing::solver_path().empty() ? 9 : 8;
    auto args = [&](std::vector<std::string> a) {
        a.insert(a.end(), solver.begin(), solver.end());
        a.push_back("--no-cache");
        return a;
    };
    Run md = avc_run(args({"checklist", testing::kCorpusRationale, testing::kCorpusProgram}));
    CHECK(md.code == 0);
    CHECK(md.out.find(std::to_string(n) + " items to review.") != std::string::npos);
    std::size_t sections = 0;
    for (std::size_t at = md.out.find("\n## "); at != std::string::npos; at = md.out.find("\n## ", at + 1)) ++sections;
    CHECK(sections == n);
    CHECK(md.out.find("Verdict: pending") != std::string::npos);

    Run js = avc_run(args({"checklist", testing::kCorpusRationale, testing::kCorpusProgram, "--format", "json"}));
    CHECK(js.code == 0);
    CHECK(Json::parse(js.out).size() == n);

    write_file((dir / "toy.rationale").string(), kToyRationale);
    write_file((dir / "toy.sl").string(), kToyProgram);
    Run empty = avc_run({"checklist", (dir / "toy.rationale").string(), (dir / "toy.sl").string(), "--no-cache"});
    CHECK(empty.code == 0);
    CHECK(empty.out.find(assurance::kEmptyChecklistBanner) != std::string::npos);
    CHECK(std::string(assurance::kEmptyChecklistBanner) == "Checklist empty — root established pending no items.");
}

TEST_CASE("smt scripts") {
    const fs::path dir = scratch("smt");
    Run r = avc_run({"smt", testing::kCorpusRationale, "--out", (dir / "out").string()});
    CHECK(r.code == 0);
    std::set<std::string> files;
    for (const auto& e : fs::directory_iterator(dir / "out")) files.insert(e.path().filename().string());
    CHECK(files == std::set<std::string>{"C_R.smt2", "C0.smt2", "C2.smt2", "C3.smt2", "C7.smt2"});
    if (!testing::solver_path().empty()) {
        checker::SolverConfig cfg = testing::solver_config();
        const auto run = checker::run_solver(cfg, read_file((dir / "out" / "C3.smt2").string()));
        REQUIRE(run.answer);
        CHECK(*run.answer == "unsat");
    }
}

TEST_CASE("configuration") {
    auto t = cli::parse_toml(R"(# comment
top = 1
[solver]
command = "z3 -in -T:\"5\""   # trailing
timeout_seconds = 2.5
enabled = true
[review]
port = 8_000
)");
    CHECK(std::get<std::int64_t>(t.at("top")) == 1);
    CHECK(std::get<std::string>(t.at("solver.command")) == "z3 -in -T:\"5\"");
    CHECK(std::get<double>(t.at("solver.timeout_seconds")) == 2.5);
    CHECK(std::get<bool>(t.at("solver.enabled")));
    CHECK(std::get<std::int64_t>(t.at("review.port")) == 8000);
    CHECK_THROWS_AS(cli::parse_toml("a = 1\na = 2\n"), cli::ConfigError);
    CHECK_THROWS_AS(cli::parse_toml("[oops\n"), cli::ConfigError);
    CHECK_THROWS_AS(cli::parse_toml("a = [1, 2]\n"), cli::ConfigError);
    CHECK_THROWS_AS(cli::parse_toml("a = \"open\n"), cli::ConfigError);
    CHECK_THROWS_AS(cli::parse_toml("a = 1 b\n"), cli::ConfigError);

    const fs::path dir = scratch("config");
    const std::string path = (dir / "avc.toml").string();
    write_file(path, "[solver]\ncommand = \"mysolver\"\ntimeout_seconds = 9\n[review]\nport = 9001\n"
                     "[agent]\nmodel = \"m\"\nmax_repairs = 1\ntemperature = 0\n");
    cli::RunConfig cfg = cli::load_config(path);
    CHECK(cfg.solver.enabled);
    CHECK(cfg.solver.command == "mysolver");
    CHECK(cfg.solver.timeout_seconds == 9.0);
    CHECK(cfg.port == 9001);
    CHECK(cfg.agent.model == "m");
    CHECK(cfg.agent.max_repairs == 1);
    CHECK(cfg.agent.temperature == 0.0);

    ::setenv("AVC_SOLVER", "othersolver -in", 1);
    cli::apply_environment(cfg);
    CHECK(cfg.solver.command == "othersolver -in");
    ::setenv("AVC_SOLVER", "", 1);
    cli::apply_environment(cfg);
    CHECK_FALSE(cfg.solver.enabled);
    ::unsetenv("AVC_SOLVER");

    CHECK_FALSE(cli::load_config(std::nullopt).solver.enabled);
    CHECK(cli::load_config(std::nullopt).port == 7341);
    write_file(path, "[solver]\ncomand = \"typo\"\n");
    CHECK_THROWS_AS(cli::load_config(path), cli::ConfigError);
    write_file(path, "[review]\nport = \"high\"\n");
    CHECK_THROWS_AS(cli::load_config(path), cli::ConfigError);
    CHECK(avc_run({"--config", path, "check", testing::kCorpusRationale}).code == 2);
    CHECK(avc_run({"--config", (dir / "absent.toml").string(), "check", testing::kCorpusRationale}).code == 2);

    // A solver that cannot start leaves Tier 2 undecided rather than failing.
    write_file(path, "[solver]\ncommand = \"/nonexistent/solver -in\"\ntimeout_seconds = 2\n");
    Run r = avc_run({"--config", path, "analyze", testing::kCorpusRationale, testing::kCorpusProgram, "--format",
                     "json", "--no-cache"});
    CHECK(r.code == 0);
    for (const auto& i : Json::parse(r.out)["inferences"])
        if (i["parent"] == "C3") CHECK(i["tier"] == 2);
}

TEST_CASE("review errors") {
    const fs::path dir = scratch("review");
    const std::string session = (dir / "s.session.jsonl").string();
    write_file(session, R"({"format": "avc-session v1", "rationaleHash": "00", "programHash": "11", "created": 1})"
                        "\n");
    Run mismatch = avc_run({"review", testing::kCorpusRationale, testing::kCorpusProgram, "--no-solver", "--no-cache",
                            "--session", session, "--port", "0"});
    CHECK(mismatch.code == 1);
    CHECK(mismatch.err.find("refusing to load") != std::string::npos);

    httplib::Server holder;
    const int port = holder.bind_to_any_port("127.0.0.1");
    fs::remove(session);
    Run busy = avc_run({"review", testing::kCorpusRationale, testing::kCorpusProgram, "--no-solver", "--no-cache",
                        "--session", session, "--port", std::to_string(port)});
    CHECK(busy.code == 2);
    CHECK(busy.err.find("in use") != std::string::npos);
}

TEST_CASE("agent generate") {
    const fs::path dir = scratch("agent");
    httplib::Server mock;
    const std::string corpus = read_file(testing::kCorpusRationale);
    int calls = 0;
    mock.Post("/chat", [&](const httplib::Request&, httplib::Response& res) {
        ++calls;
        const Json body = {{"choices", {{{"message", {{"content", "```\n" + corpus + "```"}}}}}}};
        res.set_content(body.dump(), "application/json");
    });
    const int port = mock.bind_to_any_port("127.0.0.1");
    std::thread t([&] { mock.listen_after_bind(); });
    mock.wait_until_ready();

    const std::string url = "http://127.0.0.1:" + std::to_string(port) + "/chat";
    const std::string out = (dir / "gen.rationale").string();
    const std::string transcript = (dir / "transcript.json").string();
    Run r = avc_run({"agent", "generate", "--spec", "corpus/aml.spec.md", "--program", testing::kCorpusProgram, "--out",
                     out, "--endpoint", url, "--transcript", transcript});
    CHECK(r.code == 0);
    CHECK(calls == 1);
    CHECK(rationale::parse_rationale(read_file(out)) == testing::corpus());
    CHECK(Json::parse(read_file(transcript)).size() == 1);
    // Generated rationales go through the same checks as hand-written ones.
    CHECK(avc_run({"check", out}).code == 0);

    mock.stop();
    t.join();
    Run down = avc_run({"agent", "generate", "--spec", "corpus/aml.spec.md", "--program", testing::kCorpusProgram,
                        "--out", (dir / "none.rationale").string(), "--endpoint", url});
    CHECK(down.code == 2);
    CHECK_FALSE(fs::exists(dir / "none.rationale"));
    CHECK(avc_run({"agent", "generate", "--spec", "nope.md", "--program", testing::kCorpusProgram, "--out", out,
                   "--endpoint", url})
              .code == 2);
}
