#include "avc/agent/agent.hpp"

#include <httplib.h>

#include <cstdlib>

namespace avc::agent {

const std::string& default_grammar_notes() {
    static const std::string notes = R"(#!rationale v1
rationale <name>

sort <Name>                       declare an uninterpreted sort (Int, Real, Str, Bool are built in)
fn <name> : <Sort>, ... -> <Sort> declare a function; `fn c : Real` declares a constant
pred <Name> : <Sort>, ...         declare a predicate

claim <Id> "<title>" {
  formal: <formula>;              or   informal: "<text>";
  verify: <verifier>(key=value, ...);   leaves only, optional
  note: "<text>";                 optional
}
decompose <Parent> -> [<Child>, ...]
subject "<program path>" sha256:<64 hex digits>   optional
root <Id>

Formulas: true, false, P(t, ...), t1 == t2, t1 < t2, t1 <= t2,
t in {"a", "b"}, informal "text", !f, f && g, f || g, f -> g, f <-> g,
forall x:S. f, exists x:S. f.
Terms: variables, constants, applications f(t, ...), numbers, "strings",
t + t, t - t, t * t.

Verifier hints:
  output-shape(fn=<function>, <field>=Real|Num|Str|ListStr|{"a", "b"}, ...)
  string-inventory(fn=<function>, sink=<list variable>)
  threshold-ladder(fn=<function>, score=<variable>, order=["low", ..., "high"])
  const-relation(<name>=<PROGRAM_CONSTANT>, ...)   the claim formula relates the names
)";
    return notes;
}

std::string render_prompt(const std::string& spec_text, const std::string& program_source,
                          const std::string& grammar_notes) {
    std::string out;
    out += "You are given a specification and a program written against it. Explain why the program is "
           "adequate for the specification by writing a rationale: a tree of claims whose root states "
           "that the program meets the specification.\n\n";
    out += "Rules:\n";
    out += "1. Each decomposition must be an inference: the children together should imply the parent.\n";
    out += "2. Formalize what can be formalized; use informal statements or uninterpreted predicates for "
           "the rest.\n";
    out += "3. Every leaf must be a conjecture sufficiently precise to enable direct verification, either "
           "by a static check on the program or by a short review by a person.\n";
    out += "4. Attach a verifier hint to a leaf when one of the hints below can check it.\n";
    out += "5. Reply with the rationale only, in a single ``` block, starting with the `#!rationale v1` "
           "header.\n\n";

    out += "## Specification\n\n";
    if (spec_text.find_first_not_of(" \t\r\n") == std::string::npos) {
        out += "(no specification text was provided)\n\n";
        out += "Warning: the specification is empty. Base the root claim on the evident intent of the "
               "program and mark that intent as an informal claim to be confirmed.\n\n";
    } else {
        out += spec_text;
        if (spec_text.back() != '\n') out += "\n";
        out += "\n";
    }
    out += "## Program\n\n```\n" + program_source;
    if (!program_source.empty() && program_source.back() != '\n') out += "\n";
    out += "```\n\n";
    out += "## Rationale language\n\n```\n" + grammar_notes;
    if (!grammar_notes.empty() && grammar_notes.back() != '\n') out += "\n";
    out += "```\n";
    return out;
}

std::string extract_rationale_text(const std::string& reply) {
    const auto open = reply.find("```");
    if (open == std::string::npos) return reply;
    const auto body = reply.find('\n', open);
    if (body == std::string::npos) return reply;
    const auto close = reply.find("```", body);
    return reply.substr(body + 1, close == std::string::npos ? std::string::npos : close - body - 1);
}

Transport http_transport(const AgentConfig& cfg) {
    const auto scheme_end = cfg.endpoint.find("://");
    if (scheme_end == std::string::npos) throw AgentError("endpoint '" + cfg.endpoint + "' has no scheme");
    if (cfg.endpoint.substr(0, scheme_end) != "http")
        throw AgentError("only http:// endpoints are supported; put a local proxy in front of TLS providers");
    const auto path_at = cfg.endpoint.find('/', scheme_end + 3);
    const std::string base = cfg.endpoint.substr(0, path_at);
    const std::string path = path_at == std::string::npos ? "/" : cfg.endpoint.substr(path_at);
    std::string token;
    if (const char* t = std::getenv(cfg.token_env.c_str())) token = t;
    const int timeout = cfg.timeout_seconds;

    return [base, path, token, timeout](const Json& request) {
        httplib::Client client(base);
        client.set_connection_timeout(timeout);
        client.set_read_timeout(timeout);
        client.set_write_timeout(timeout);
        httplib::Headers headers;
        if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);
        auto res = client.Post(path, headers, request.dump(), "application/json");
        if (!res) throw AgentError("request to " + base + path + " failed: " + httplib::to_string(res.error()));
        if (res->status != 200)
            throw AgentError("endpoint answered HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
        return res->body;
    };
}

namespace {

Json request_body(const AgentConfig& cfg, const Json& messages) {
    Json body = {{"model", cfg.model}, {"messages", messages}};
    if (cfg.temperature) body["temperature"] = *cfg.temperature;
    return body;
}

std::string reply_text(const AgentConfig& cfg, const std::string& response) {
    const Json j = Json::parse(response, nullptr, false);
    if (j.is_discarded()) throw AgentError("response is not JSON");
    const Json::json_pointer ptr(cfg.response_pointer);
    if (!j.contains(ptr) || !j.at(ptr).is_string())
        throw AgentError("response has no string at " + cfg.response_pointer);
    return j.at(ptr).get<std::string>();
}

}  // namespace

std::vector<std::string> GenerateResult::diagnostics() const {
    std::vector<std::string> out;
    for (const auto& e : transcript) out.insert(out.end(), e.diagnostics.begin(), e.diagnostics.end());
    return out;
}

GenerateResult generate_with_repair(const AgentConfig& cfg, const std::string& prompt, const Transport& send) {
    if (cfg.max_repairs < 0) throw std::invalid_argument("max repair rounds must be at least 0");
    GenerateResult result;
    Json messages = Json::array({{{"role", "user"}, {"content", prompt}}});
    for (int round = 0; round <= cfg.max_repairs; ++round) {
        Exchange ex;
        ex.request = request_body(cfg, messages);
        try {
            ex.response = send(ex.request);
            ex.reply = reply_text(cfg, ex.response);
        } catch (const AgentError& e) {
            ex.diagnostics.push_back(e.what());
            result.transcript.push_back(std::move(ex));
            return result;
        }
        try {
            result.rationale = rationale::parse_rationale(extract_rationale_text(ex.reply));
            result.transcript.push_back(std::move(ex));
            return result;
        } catch (const rationale::ValidationError& e) {
            for (const auto& d : e.diagnostics()) ex.diagnostics.push_back(d.code + ": " + d.message);
        } catch (const ParseError& e) {
            ex.diagnostics.push_back(e.what());
        }
        std::string repair = "The rationale you returned was rejected:\n";
        for (const auto& d : ex.diagnostics) repair += "- " + d + "\n";
        repair += "Return the complete corrected rationale in a single ``` block.";
        messages.push_back({{"role", "assistant"}, {"content", ex.reply}});
        messages.push_back({{"role", "user"}, {"content", repair}});
        result.transcript.push_back(std::move(ex));
    }
    return result;
}

GenerateResult generate_with_repair(const AgentConfig& cfg, const std::string& prompt) {
    return generate_with_repair(cfg, prompt, http_transport(cfg));
}

Json transcript_json(const GenerateResult& result) {
    Json out = Json::array();
    for (const auto& e : result.transcript)
        out.push_back({{"request", e.request}, {"response", e.response}, {"diagnostics", e.diagnostics}});
    return out;
}

}  // namespace avc::agent
