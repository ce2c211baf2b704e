#include "avc/logic/parse.hpp"

#include "avc/logic/well_formed.hpp"
#include "avc/util/text.hpp"

#include <cctype>
#include <optional>

namespace avc::logic {

namespace {

enum class Tok {
    Ident,
    Number,
    String,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Dot,
    Bang,
    AndAnd,
    OrOr,
    Arrow,
    DArrow,
    EqEq,
    Le,
    Lt,
    Plus,
    Minus,
    Star,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            SourcePos pos{line_, col_};
            if (i_ >= src_.size()) {
                out.push_back({Tok::End, "", pos});
                return out;
            }
            char c = src_[i_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = i_;
                while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
                    advance();
                out.push_back({Tok::Ident, std::string(src_.substr(start, i_ - start)), pos});
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = i_;
                while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
                if (i_ + 1 < src_.size() && src_[i_] == '.' && std::isdigit(static_cast<unsigned char>(src_[i_ + 1]))) {
                    advance();
                    while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
                }
                out.push_back({Tok::Number, std::string(src_.substr(start, i_ - start)), pos});
            } else if (c == '"') {
                out.push_back({Tok::String, lex_string(pos), pos});
            } else {
                out.push_back(lex_punct(pos));
            }
        }
    }

private:
    void advance() {
        if (src_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    void skip_space() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) advance();
    }

    std::string lex_string(SourcePos pos) {
        advance();
        std::string out;
        while (i_ < src_.size() && src_[i_] != '"') {
            if (src_[i_] == '\n') throw ParseError("unterminated string literal", pos);
            if (src_[i_] == '\\') {
                advance();
                if (i_ >= src_.size() || (src_[i_] != '"' && src_[i_] != '\\'))
                    throw ParseError("invalid escape in string literal", SourcePos{line_, col_});
            }
            out.push_back(src_[i_]);
            advance();
        }
        if (i_ >= src_.size()) throw ParseError("unterminated string literal", pos);
        advance();
        return out;
    }

    Token lex_punct(SourcePos pos) {
        auto starts = [&](std::string_view s) { return src_.substr(i_, s.size()) == s; };
        static const std::pair<std::string_view, Tok> table[] = {
            {"<->", Tok::DArrow}, {"->", Tok::Arrow}, {"&&", Tok::AndAnd}, {"||", Tok::OrOr}, {"==", Tok::EqEq},
            {"<=", Tok::Le},      {"<", Tok::Lt},     {"(", Tok::LParen},  {")", Tok::RParen}, {"{", Tok::LBrace},
            {"}", Tok::RBrace},   {",", Tok::Comma},  {":", Tok::Colon},   {".", Tok::Dot},    {"!", Tok::Bang},
            {"+", Tok::Plus},     {"-", Tok::Minus},  {"*", Tok::Star},
        };
        for (const auto& [text, kind] : table) {
            if (starts(text)) {
                for (std::size_t k = 0; k < text.size(); ++k) advance();
                return {kind, std::string(text), pos};
            }
        }
        throw ParseError(std::string("unexpected character '") + src_[i_] + "'", pos);
    }

    std::string_view src_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

bool is_keyword(const std::string& s) {
    return s == "forall" || s == "exists" || s == "true" || s == "false" || s == "in" || s == "informal";
}

class Parser {
public:
    Parser(std::vector<Token> toks, const Signature& sig) : toks_(std::move(toks)), sig_(sig) {}

    Formula parse_top() {
        Formula f = parse_iff();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k) fail(std::string("expected ") + what + (peek().kind == Tok::End ? " at end of input" : ", found '" + peek().text + "'"));
        return next();
    }
    bool at_keyword(const char* kw) const { return peek().kind == Tok::Ident && peek().text == kw; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }
    [[noreturn]] static void fail_at(const std::string& msg, SourcePos pos) { throw ParseError(msg, pos); }

    Formula parse_iff() {
        Formula lhs = parse_implies();
        while (accept(Tok::DArrow)) lhs = make::iff(std::move(lhs), parse_implies());
        return lhs;
    }

    Formula parse_implies() {
        Formula lhs = parse_or();
        if (accept(Tok::Arrow)) return make::implies(std::move(lhs), parse_implies());
        return lhs;
    }

    Formula parse_or() {
        std::vector<Formula> items{parse_and()};
        while (accept(Tok::OrOr)) items.push_back(parse_and());
        return items.size() == 1 ? std::move(items.front()) : make::disj(std::move(items));
    }

    Formula parse_and() {
        std::vector<Formula> items{parse_unary()};
        while (accept(Tok::AndAnd)) items.push_back(parse_unary());
        return items.size() == 1 ? std::move(items.front()) : make::conj(std::move(items));
    }

    Formula parse_unary() {
        if (accept(Tok::Bang)) return make::negate(parse_unary());
        if (at_keyword("forall") || at_keyword("exists")) return parse_quantifier();
        return parse_primary();
    }

    Sort parse_sort() {
        const Token& t = expect(Tok::Ident, "sort name");
        Sort s = Sort::from_name(t.text);
        if (s.kind == Sort::Kind::Named && !sig_.sorts.contains(s.name)) fail_at("undeclared sort '" + t.text + "'", t.pos);
        return s;
    }

    Formula parse_quantifier() {
        const bool universal = next().text == "forall";
        const Token& v = expect(Tok::Ident, "bound variable");
        if (is_keyword(v.text)) fail_at("keyword '" + v.text + "' cannot name a variable", v.pos);
        expect(Tok::Colon, "':'");
        Sort s = parse_sort();
        expect(Tok::Dot, "'.'");
        scope_.emplace_back(v.text, s);
        Formula body = parse_iff();
        scope_.pop_back();
        return universal ? make::forall(v.text, s, std::move(body)) : make::exists(v.text, s, std::move(body));
    }

    // Index of the token closing the group opened at pos_.
    std::size_t matching_paren() const {
        int depth = 0;
        for (std::size_t k = pos_; k < toks_.size(); ++k) {
            if (toks_[k].kind == Tok::LParen) ++depth;
            if (toks_[k].kind == Tok::RParen && --depth == 0) return k;
            if (toks_[k].kind == Tok::End) break;
        }
        return toks_.size() - 1;
    }

    static bool continues_term(Tok k) {
        return k == Tok::EqEq || k == Tok::Le || k == Tok::Lt || k == Tok::Plus || k == Tok::Minus || k == Tok::Star;
    }

    const Sort* lookup_var(const std::string& name) const {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (it->first == name) return &it->second;
        return nullptr;
    }

    Formula parse_primary() {
        const Token& t = peek();
        if (at_keyword("true")) {
            next();
            return make::truth();
        }
        if (at_keyword("false")) {
            next();
            return make::falsity();
        }
        if (at_keyword("informal")) {
            next();
            const Token& s = expect(Tok::String, "string after 'informal'");
            std::string text = normalize_space(s.text);
            if (text.empty()) fail_at("informal atom text is empty", s.pos);
            return make::informal(text);
        }
        if (t.kind == Tok::LParen) {
            std::size_t close = matching_paren();
            const Tok after = toks_[std::min(close + 1, toks_.size() - 1)].kind;
            const bool term_group = continues_term(after) ||
                                    (toks_[std::min(close + 1, toks_.size() - 1)].kind == Tok::Ident &&
                                     toks_[std::min(close + 1, toks_.size() - 1)].text == "in");
            if (!term_group) {
                next();
                Formula inner = parse_iff();
                expect(Tok::RParen, "')'");
                return inner;
            }
        }
        if (t.kind == Tok::Ident && !is_keyword(t.text) && !lookup_var(t.text) && sig_.predicates.contains(t.text))
            return parse_predicate();
        return parse_relation();
    }

    Formula parse_predicate() {
        const Token& name = next();
        std::vector<Term> args;
        if (accept(Tok::LParen)) {
            if (!accept(Tok::RParen)) {
                do args.push_back(parse_term());
                while (accept(Tok::Comma));
                expect(Tok::RParen, "')'");
            }
        }
        Formula f = make::pred(name.text, std::move(args));
        check(f, name.pos);
        return f;
    }

    Formula parse_relation() {
        const SourcePos start = peek().pos;
        Term lhs = parse_term();
        std::optional<Formula> f;
        if (accept(Tok::EqEq)) {
            f = make::eq(std::move(lhs), parse_term());
        } else if (accept(Tok::Le)) {
            f = make::le(std::move(lhs), parse_term());
        } else if (accept(Tok::Lt)) {
            f = make::lt(std::move(lhs), parse_term());
        } else if (at_keyword("in")) {
            next();
            expect(Tok::LBrace, "'{'");
            std::vector<std::string> lits;
            do lits.push_back(expect(Tok::String, "string literal").text);
            while (accept(Tok::Comma));
            expect(Tok::RBrace, "'}'");
            f = make::member(std::move(lhs), std::move(lits));
        } else {
            fail("expected '==', '<=', '<' or 'in' after term");
        }
        check(*f, start);
        return std::move(*f);
    }

    void check(const Formula& atom, SourcePos pos) const {
        // Close the atom over the current scope so only local sort errors surface.
        Formula closed = atom;
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) closed = make::forall(it->first, it->second, closed);
        Diagnostics d = well_formed(sig_, closed);
        if (!d.empty()) fail_at(d.front().message, pos);
    }

    Term parse_term() {
        Term lhs = parse_product();
        for (;;) {
            if (accept(Tok::Plus)) {
                lhs = make::app("+", {std::move(lhs), parse_product()});
            } else if (accept(Tok::Minus)) {
                lhs = make::app("-", {std::move(lhs), parse_product()});
            } else {
                return lhs;
            }
        }
    }

    Term parse_product() {
        Term lhs = parse_term_unary();
        while (accept(Tok::Star)) lhs = make::app("*", {std::move(lhs), parse_term_unary()});
        return lhs;
    }

    Term parse_term_unary() {
        if (peek().kind == Tok::Minus) {
            if (peek(1).kind != Tok::Number) fail("unary minus applies only to numeric literals");
            next();
            return make::num(-*parse_decimal(next().text));
        }
        return parse_term_primary();
    }

    Term parse_term_primary() {
        const Token& t = peek();
        if (t.kind == Tok::Number) {
            next();
            return make::num(*parse_decimal(t.text));
        }
        if (t.kind == Tok::String) {
            next();
            return make::str(t.text);
        }
        if (accept(Tok::LParen)) {
            Term inner = parse_term();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (t.kind != Tok::Ident || is_keyword(t.text)) fail("expected a term");
        next();
        if (const Sort* s = lookup_var(t.text)) {
            if (peek().kind == Tok::LParen) fail_at("variable '" + t.text + "' cannot be applied", t.pos);
            return make::var(t.text, *s);
        }
        auto fn = sig_.functions.find(t.text);
        if (fn == sig_.functions.end()) {
            if (sig_.predicates.contains(t.text)) fail_at("predicate '" + t.text + "' used as a term", t.pos);
            fail_at("undeclared symbol '" + t.text + "'", t.pos);
        }
        std::vector<Term> args;
        if (accept(Tok::LParen)) {
            if (!accept(Tok::RParen)) {
                do args.push_back(parse_term());
                while (accept(Tok::Comma));
                expect(Tok::RParen, "')'");
            }
        }
        if (args.size() != fn->second.args.size())
            fail_at("function '" + t.text + "' expects " + std::to_string(fn->second.args.size()) + " argument(s), got " +
                        std::to_string(args.size()),
                    t.pos);
        return make::app(t.text, std::move(args));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Signature& sig_;
    std::vector<std::pair<std::string, Sort>> scope_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) {
    Parser p(Lexer(text).run(), sig);
    return p.parse_top();
}

}  // namespace avc::logic
