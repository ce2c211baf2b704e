#pragma once

#include "avc/rationale/rationale.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace avc::agent {

using Json = nlohmann::ordered_json;

struct AgentConfig {
    std::string endpoint = "http://127.0.0.1:8080/v1/chat/completions";
    std::string model = "default";
    std::string token_env = "AVC_AGENT_TOKEN";  // bearer token, sent when set
    int max_repairs = 3;
    std::optional<double> temperature;
    int timeout_seconds = 120;
    // JSON pointer to the reply text in the provider's response.
    std::string response_pointer = "/choices/0/message/content";
};

class AgentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Grammar summary embedded when no other grammar text is supplied.
const std::string& default_grammar_notes();

std::string render_prompt(const std::string& spec_text, const std::string& program_source,
                          const std::string& grammar_notes = default_grammar_notes());

// Sends one request body and returns the raw response body. Throws
// AgentError on transport failure.
using Transport = std::function<std::string(const Json& request)>;

Transport http_transport(const AgentConfig& cfg);

struct Exchange {
    Json request;
    std::string response;  // raw body, empty when the call failed
    std::string reply;     // extracted text
    std::vector<std::string> diagnostics;
};

struct GenerateResult {
    std::optional<rationale::Rationale> rationale;
    std::vector<Exchange> transcript;

    bool ok() const { return rationale.has_value(); }
    // Every diagnostic from every exchange, in order.
    std::vector<std::string> diagnostics() const;
};

// Text between the first ``` fence pair when there is one, else the reply.
std::string extract_rationale_text(const std::string& reply);

GenerateResult generate_with_repair(const AgentConfig& cfg, const std::string& prompt, const Transport& send);
GenerateResult generate_with_repair(const AgentConfig& cfg, const std::string& prompt);

Json transcript_json(const GenerateResult& result);

}  // namespace avc::agent
