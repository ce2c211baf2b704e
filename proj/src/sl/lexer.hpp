#pragma once

#include "avc/sl/ast.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace avc::sl::detail {

enum class Tok { Name, Keyword, Number, String, Op, Newline, Indent, Dedent, End };

struct Token {
    Tok kind;
    std::string text;  // string tokens hold the unescaped contents
    Loc loc;
};

bool is_keyword(std::string_view word);

// Indentation-sensitive tokenizer. Newlines inside brackets are ignored.
std::vector<Token> tokenize(std::string_view text);

}  // namespace avc::sl::detail
