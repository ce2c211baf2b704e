#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace avc {

struct SourcePos {
    int line = 1;
    int column = 1;
};

// Syntax, sort and name-resolution failures raised by the parsers.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, SourcePos pos)
        : std::runtime_error("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) +
                             ": " + message),
          message_(std::move(message)),
          pos_(pos) {}

    const std::string& bare_message() const { return message_; }
    SourcePos pos() const { return pos_; }

private:
    std::string message_;
    SourcePos pos_;
};

struct Diagnostic {
    std::string code;  // short machine-readable tag, e.g. "free-variable"
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

std::string format_diagnostics(const Diagnostics& diags);

}  // namespace avc
