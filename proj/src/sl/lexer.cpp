#include "lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace avc::sl::detail {

namespace {

constexpr std::array<std::string_view, 16> kKeywords{"def", "return", "if",    "elif",  "else",   "for",
                                                     "in",  "and",    "or",    "not",   "True",   "False",
                                                     "let", "const",  "extern", "lambda"};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        header();
        bool line_start = true;
        while (i_ < src_.size()) {
            if (line_start && depth_ == 0) {
                line_start = false;
                if (!indentation()) {
                    line_start = true;
                    continue;
                }
            }
            const char c = src_[i_];
            if (c == '\n') {
                if (depth_ == 0) {
                    newline();
                    line_start = true;
                }
                advance();
            } else if (c == ' ' || c == '\r') {
                advance();
            } else if (c == '\t') {
                if (depth_ == 0) fail("tab characters are not allowed");
                advance();
            } else if (c == '#') {
                while (i_ < src_.size() && src_[i_] != '\n') advance();
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                word();
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                number();
            } else if (c == '"') {
                string();
            } else {
                op();
            }
        }
        if (depth_ > 0) fail("unclosed bracket at end of input");
        newline();
        while (indents_.size() > 1) {
            indents_.pop_back();
            push(Tok::Dedent, "");
        }
        push(Tok::End, "");
        return std::move(out_);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, {line_, col_}); }

    void advance() {
        if (src_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    void push(Tok kind, std::string text, Loc loc) { out_.push_back({kind, std::move(text), loc}); }
    void push(Tok kind, std::string text) { push(kind, std::move(text), Loc{line_, col_}); }

    void header() {
        if (src_.substr(0, 2) != "#!") return;
        std::string_view line = src_.substr(0, src_.find('\n'));
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
        if (line != kSlHeaderText) fail("unsupported header '" + std::string(line) + "', expected '#!sl v1'");
    }
    static constexpr std::string_view kSlHeaderText = "#!sl v1";

    // Handles leading spaces; false when the line is blank or a comment.
    bool indentation() {
        int width = 0;
        while (i_ < src_.size() && (src_[i_] == ' ' || src_[i_] == '\t')) {
            if (src_[i_] == '\t') fail("tab characters are not allowed in indentation");
            ++width;
            advance();
        }
        if (i_ >= src_.size()) return false;
        if (src_[i_] == '\n' || src_[i_] == '#' || src_[i_] == '\r') {
            while (i_ < src_.size() && src_[i_] != '\n') advance();
            if (i_ < src_.size()) advance();
            return false;
        }
        if (width > indents_.back()) {
            indents_.push_back(width);
            push(Tok::Indent, "");
        } else {
            while (width < indents_.back()) {
                indents_.pop_back();
                push(Tok::Dedent, "");
            }
            if (width != indents_.back()) fail("indentation does not match any outer block");
        }
        return true;
    }

    void newline() {
        if (!out_.empty() && out_.back().kind != Tok::Newline && out_.back().kind != Tok::Indent &&
            out_.back().kind != Tok::Dedent)
            push(Tok::Newline, "");
    }

    void word() {
        const Loc at{line_, col_};
        const std::size_t b = i_;
        while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) advance();
        std::string w(src_.substr(b, i_ - b));
        const Tok kind = is_keyword(w) ? Tok::Keyword : Tok::Name;
        push(kind, std::move(w), at);
    }

    void number() {
        const Loc at{line_, col_};
        const std::size_t b = i_;
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
        if (i_ + 1 < src_.size() && src_[i_] == '.' && std::isdigit(static_cast<unsigned char>(src_[i_ + 1]))) {
            advance();
            while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
        }
        if (i_ < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
            fail("malformed number");
        push(Tok::Number, std::string(src_.substr(b, i_ - b)), at);
    }

    void string() {
        const Loc at{line_, col_};
        advance();
        std::string out;
        while (true) {
            if (i_ >= src_.size() || src_[i_] == '\n') throw ParseError("unterminated string literal", at.pos());
            const char c = src_[i_];
            if (c == '"') break;
            if (c == '\\') {
                advance();
                if (i_ >= src_.size()) throw ParseError("unterminated string literal", at.pos());
                switch (src_[i_]) {
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    default: fail(std::string("unknown escape '\\") + src_[i_] + "'");
                }
                advance();
                continue;
            }
            out += c;
            advance();
        }
        advance();
        push(Tok::String, std::move(out), at);
    }

    void op() {
        static constexpr std::array<std::string_view, 6> two{"+=", "-=", "==", "!=", "<=", ">="};
        const Loc at{line_, col_};
        for (auto t : two) {
            if (src_.substr(i_, 2) == t) {
                advance();
                advance();
                push(Tok::Op, std::string(t), at);
                return;
            }
        }
        const char c = src_[i_];
        if (std::string_view("+-*()[]{},:.=<>").find(c) == std::string_view::npos)
            fail(std::string("unexpected character '") + c + "'");
        if (c == '(' || c == '[' || c == '{') ++depth_;
        if (c == ')' || c == ']' || c == '}') {
            if (depth_ == 0) fail(std::string("unmatched '") + c + "'");
            --depth_;
        }
        advance();
        push(Tok::Op, std::string(1, c), at);
    }

    std::string_view src_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
    int depth_ = 0;
    std::vector<int> indents_{0};
    std::vector<Token> out_;
};

}  // namespace

bool is_keyword(std::string_view word) {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace avc::sl::detail
