#include "avc/review/service.hpp"
#include "avc/sl/parse.hpp"
#include "avc/util/hash.hpp"
#include "support/corpus.hpp"

#include <doctest.h>
#include <httplib.h>

#include <filesystem>
#include <fstream>

using namespace avc;
using namespace avc::review;
namespace fs = std::filesystem;

namespace {

struct Fixture {
    rationale::Rationale r = testing::corpus();
    std::string rationale_hash = sha256_hex(read_file(testing::kCorpusRationale));
    pipeline::AnalysisResult analysis;
    std::string session_path;
    std::size_t expected_items = 9;

    explicit Fixture(const std::string& name) {
        pipeline::AnalysisOptions opts;
        if (!testing::solver_path().empty()) {
            opts.solver = testing::solver_config();
            expected_items = 8;
        }
        analysis = pipeline::analyze_serial(r, sl::parse_program(read_file(testing::kCorpusProgram)), opts);
        const fs::path dir = fs::temp_directory_path() / "avc-review-tests";
        fs::create_directories(dir);
        session_path = (dir / (name + ".session.jsonl")).string();
        fs::remove(session_path);
    }

    std::shared_ptr<ReviewState> state() const {
        return std::make_shared<ReviewState>(r, analysis, Session::open(session_path, rationale_hash, analysis.program_hash));
    }
};

Json get_json(httplib::Client& c, const std::string& path, int expect = 200) {
    auto res = c.Get(path, {{kApiHeader, kApiVersion}});
    REQUIRE(res);
    CHECK(res->status == expect);
    CHECK(res->get_header_value(kApiHeader) == kApiVersion);
    return Json::parse(res->body);
}

std::pair<int, std::string> post(httplib::Client& c, const std::string& path, const Json& body) {
    auto res = c.Post(path, {{kApiHeader, kApiVersion}}, body.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->get_header_value(kApiHeader) == kApiVersion);
    return {res->status, res->body};
}

}  // namespace

TEST_CASE("HTTP endpoints on the corpus") {
    Fixture f("http");
    ReviewService svc(f.state(), {.port = 0});
    svc.start();
    httplib::Client c("127.0.0.1", svc.port());

    const Json checklist = get_json(c, "/api/checklist");
    REQUIRE(checklist.size() == f.expected_items);
    CHECK(checklist[0]["id"] == "inference:C_R");
    CHECK(checklist.back()["id"] == "C12");

    const Json rat = get_json(c, "/api/rationale");
    CHECK(rat["claims"].size() == 14);
    CHECK(rat["root"] == "C_R");

    const Json before = get_json(c, "/api/status");
    CHECK(before["status"]["C_R"] == "Open");
    CHECK(before["warnings"].empty());

    auto [code, body] = post(c, "/api/judgments", {{"item", "C12"}, {"verdict", "doubted"}});
    CHECK(code == 200);
    CHECK(Json::parse(body)["status"]["C_R"] == "Blocked");
    const Json after = get_json(c, "/api/status");
    CHECK(after["status"]["C_R"] == "Blocked");
    CHECK(after["status"]["C3"] == "Blocked");
    CHECK(after["status"]["C1"] == "Established");

    auto [wcode, wbody] = post(c, "/api/whatif", {{"overlay", Json::array()}});
    CHECK(wcode == 200);
    CHECK(Json::parse(wbody)["delta"] == Json::array());
    auto [wcode2, wbody2] = post(c, "/api/whatif", {{"overlay", {{{"itemId", "C12"}, {"verdict", "accepted"}}}}});
    CHECK(wcode2 == 200);
    CHECK(Json::parse(wbody2)["delta"] == Json{"C0", "C12", "C3", "C_R"});
    // What-if leaves the stored state alone.
    CHECK(get_json(c, "/api/status") == after);

    const Json ev = get_json(c, "/api/evidence/C11");
    CHECK(ev["status"] == "Verified");
    CHECK(ev["verifier"] == "string-inventory");
    get_json(c, "/api/evidence/C4", 404);
    get_json(c, "/api/evidence/nope", 404);

    CHECK(post(c, "/api/judgments", {{"itemId", "C1"}, {"verdict", "accepted"}}).first == 404);
    CHECK(post(c, "/api/judgments", {{"itemId", "C12"}, {"verdict", "maybe"}}).first == 400);
    CHECK(post(c, "/api/whatif", {{"overlay", {{{"itemId", "C1"}, {"verdict", "doubted"}}}}}).first == 400);
    auto bad = c.Post("/api/judgments", "{not json", "application/json");
    REQUIRE(bad);
    CHECK(bad->status == 400);
    auto wrong = c.Get("/api/status", {{kApiHeader, "2"}});
    REQUIRE(wrong);
    CHECK(wrong->status == 400);
    svc.stop();
}

TEST_CASE("judgments persist and replay") {
    Fixture f("replay");
    assurance::StatusReport live;
    {
        auto st = f.state();
        for (const auto& item : assurance::extract_checklist(f.r, f.analysis.evidence, f.analysis.verdicts))
            CHECK(st->post_judgment({{"itemId", item.id}, {"verdict", "accepted"}, {"note", "ok"}}).status == 200);
        CHECK(st->report().status.at("C_R") == assurance::Status::Established);
        st->post_judgment({{"itemId", "C9"}, {"verdict", "doubted"}, {"note", "weights unclear"}});
        live = st->report();
        CHECK(live.status.at("C_R") == assurance::Status::Blocked);
    }
    auto replayed = f.state();
    CHECK(replayed->report() == live);
    const auto log = replayed->log();
    CHECK(log.size() == f.expected_items + 1);
    for (std::size_t i = 1; i < log.size(); ++i) CHECK(log[i].timestamp > log[i - 1].timestamp);
    CHECK(log.back().note == "weights unclear");
}

TEST_CASE("repeated judgments are idempotent") {
    Fixture f("idem");
    auto st = f.state();
    const Json j = {{"itemId", "C5"}, {"verdict", "doubted"}, {"note", "tiering"}};
    const ApiResponse first = st->post_judgment(j);
    const ApiResponse second = st->post_judgment(j);
    CHECK(first.status == 200);
    CHECK(first.body.dump() == second.body.dump());
    CHECK(st->log().size() == 1);
    st->post_judgment({{"itemId", "C5"}, {"verdict", "accepted"}});
    CHECK(st->log().size() == 2);
}

TEST_CASE("sessions are bound to content hashes") {
    Fixture f("hash");
    f.state()->post_judgment({{"itemId", "C4"}, {"verdict", "accepted"}});
    CHECK_THROWS_WITH_AS(Session::open(f.session_path, std::string(64, '1'), f.analysis.program_hash),
                         doctest::Contains("refusing to load"), SessionError);
    CHECK_THROWS_AS(Session::open(f.session_path, f.rationale_hash, std::string(64, '2')), SessionError);
    CHECK(Session::open(f.session_path, f.rationale_hash, f.analysis.program_hash).log().size() == 1);
}

TEST_CASE("malformed session files") {
    Fixture f("torn");
    f.state()->post_judgment({{"itemId", "C4"}, {"verdict", "accepted"}});
    {
        std::ofstream out(f.session_path, std::ios::app);
        out << R"({"itemId": "C5", "verd)";
    }
    // A torn last line is dropped and the file is repaired.
    auto s = Session::open(f.session_path, f.rationale_hash, f.analysis.program_hash);
    CHECK(s.log().size() == 1);
    CHECK(read_file(f.session_path).back() == '\n');

    {
        std::ofstream out(f.session_path, std::ios::app);
        out << R"({"itemId": "C5", "verdict": "accepted", "note": "", "timestamp": 1})" << "\n";
    }
    CHECK_THROWS_WITH_AS(Session::open(f.session_path, f.rationale_hash, f.analysis.program_hash),
                         doctest::Contains("strictly increase"), SessionError);

    write_file(f.session_path, "hello\n");
    CHECK_THROWS_AS(Session::open(f.session_path, f.rationale_hash, f.analysis.program_hash), SessionError);
    CHECK(default_session_path("corpus/aml.rationale") == "corpus/aml.session.jsonl");
}

TEST_CASE("port already in use") {
    Fixture f("port");
    ReviewService a(f.state(), {.port = 0});
    CHECK_THROWS_WITH_AS(ReviewService(f.state(), {.port = a.port()}), doctest::Contains("in use"), std::runtime_error);
}

TEST_CASE("concurrent readers and writers") {
    Fixture f("concurrent");
    auto st = f.state();
    ReviewService svc(st, {.port = 0});
    svc.start();
    const auto items = assurance::extract_checklist(f.r, f.analysis.evidence, f.analysis.verdicts);
    std::vector<std::thread> threads;
    std::atomic<int> failures{0};
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] {
            httplib::Client c("127.0.0.1", svc.port());
            for (int k = 0; k < 10; ++k) {
                const auto& item = items[static_cast<std::size_t>(t * 10 + k) % items.size()];
                const Json body = {{"itemId", item.id}, {"verdict", (k % 2) ? "accepted" : "doubted"}};
                auto r1 = c.Post("/api/judgments", body.dump(), "application/json");
                auto r2 = c.Get("/api/status");
                if (!r1 || r1->status != 200 || !r2 || r2->status != 200) ++failures;
            }
        });
    }
    for (auto& t : threads) t.join();
    svc.stop();
    CHECK(failures == 0);
    const auto log = st->log();
    for (std::size_t i = 1; i < log.size(); ++i) CHECK(log[i].timestamp > log[i - 1].timestamp);
    CHECK(f.state()->report() == st->report());
}
