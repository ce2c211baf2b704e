#include "avc/logic/parse.hpp"
#include "avc/logic/print.hpp"
#include "avc/logic/well_formed.hpp"
#include "avc/rationale/rationale.hpp"
#include "avc/util/text.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace avc::rationale {

namespace {

constexpr std::string_view kHeader = "#!rationale v1";

struct PendingFormula {
    std::string claim;
    std::string text;
    SourcePos pos;
};

class Scanner {
public:
    explicit Scanner(std::string_view src) : src_(src) {}

    SourcePos pos() const { return {line_, col_}; }
    bool done() {
        skip();
        return i_ >= src_.size();
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos()); }

    void header() {
        if (src_.substr(0, 2) != "#!") return;
        std::size_t end = src_.find('\n');
        std::string_view line = src_.substr(0, end);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
        if (line != kHeader) fail("unsupported header '" + std::string(line) + "', expected '" + std::string(kHeader) + "'");
        while (i_ < src_.size() && src_[i_] != '\n') advance();
    }

    // Identifier-like word; verifier names and values may also use '-' and '.'.
    std::string word(bool extended = false) {
        skip();
        const SourcePos start = pos();
        std::size_t b = i_;
        auto ok = [&](char c, bool first) {
            auto u = static_cast<unsigned char>(c);
            if (std::isalpha(u) || c == '_') return true;
            if (std::isdigit(u)) return !first || extended;
            return extended && !first && (c == '-' || c == '.' || c == '+');
        };
        while (i_ < src_.size() && ok(src_[i_], i_ == b)) advance();
        if (b == i_) throw ParseError("expected a name", start);
        return std::string(src_.substr(b, i_ - b));
    }

    std::string ident(const char* what) {
        skip();
        const SourcePos start = pos();
        std::string w;
        try {
            w = word();
        } catch (const ParseError&) {
            throw ParseError(std::string("expected ") + what, start);
        }
        return w;
    }

    bool peek_char(char c) {
        skip();
        return i_ < src_.size() && src_[i_] == c;
    }

    bool accept(std::string_view s) {
        skip();
        if (src_.substr(i_, s.size()) != s) return false;
        for (std::size_t k = 0; k < s.size(); ++k) advance();
        return true;
    }

    void expect(std::string_view s) {
        if (!accept(s)) fail("expected '" + std::string(s) + "'");
    }

    std::string string_lit() {
        skip();
        if (i_ >= src_.size() || src_[i_] != '"') fail("expected a string literal");
        const SourcePos start = pos();
        advance();
        std::string out;
        while (i_ < src_.size() && src_[i_] != '"') {
            if (src_[i_] == '\n') throw ParseError("unterminated string literal", start);
            if (src_[i_] == '\\') {
                advance();
                if (i_ >= src_.size() || (src_[i_] != '"' && src_[i_] != '\\')) fail("invalid escape in string literal");
            }
            out.push_back(src_[i_]);
            advance();
        }
        if (i_ >= src_.size()) throw ParseError("unterminated string literal", start);
        advance();
        return out;
    }

    // Raw formula text up to a ';' or an unmatched '}' outside strings.
    std::pair<std::string, SourcePos> formula_text() {
        skip();
        const SourcePos start = pos();
        std::size_t b = i_;
        int depth = 0;
        while (i_ < src_.size()) {
            char c = src_[i_];
            if (c == '"') {
                advance();
                while (i_ < src_.size() && src_[i_] != '"' && src_[i_] != '\n') {
                    if (src_[i_] == '\\' && i_ + 1 < src_.size()) advance();
                    advance();
                }
                if (i_ < src_.size() && src_[i_] == '"') advance();
                continue;
            }
            if (c == '{' || c == '(') ++depth;
            if (c == ')') --depth;
            if (c == '}') {
                if (depth == 0) break;
                --depth;
            }
            if (c == ';' && depth == 0) break;
            advance();
        }
        std::string text(src_.substr(b, i_ - b));
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
        if (text.empty()) throw ParseError("empty formula", start);
        return {text, start};
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

    void skip() {
        while (i_ < src_.size()) {
            if (std::isspace(static_cast<unsigned char>(src_[i_]))) {
                advance();
            } else if (src_[i_] == '#') {
                while (i_ < src_.size() && src_[i_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

std::vector<logic::Sort> sort_list(Scanner& s, const char* what) {
    std::vector<logic::Sort> out;
    do out.push_back(logic::Sort::from_name(s.ident(what)));
    while (s.accept(","));
    return out;
}

HintValue hint_value(Scanner& s) {
    if (s.peek_char('"')) return HintValue::string(s.string_lit());
    for (auto [open, close, kind] : {std::tuple{"{", "}", HintValue::Kind::Set}, std::tuple{"[", "]", HintValue::Kind::List}}) {
        if (!s.accept(open)) continue;
        HintValue v{kind, {}};
        if (!s.accept(close)) {
            do v.items.push_back(s.string_lit());
            while (s.accept(","));
            s.expect(close);
        }
        return v;
    }
    return HintValue::word(s.word(true));
}

VerifyHint verify_hint(Scanner& s) {
    VerifyHint h;
    h.verifier = s.word(true);
    s.expect("(");
    if (!s.accept(")")) {
        do {
            const SourcePos at = s.pos();
            std::string key = s.ident("configuration key");
            if (h.find(key)) throw ParseError("duplicate configuration key '" + key + "'", at);
            s.expect("=");
            h.config.emplace_back(std::move(key), hint_value(s));
        } while (s.accept(","));
        s.expect(")");
    }
    return h;
}

void parse_claim(Scanner& s, Rationale& r, std::vector<PendingFormula>& pending) {
    const SourcePos at = s.pos();
    Claim c;
    c.id = s.ident("claim id");
    if (r.claims.contains(c.id)) throw ParseError("duplicate claim id '" + c.id + "'", at);
    c.title = s.string_lit();
    s.expect("{");
    bool have_statement = false;
    while (!s.accept("}")) {
        const SourcePos field_at = s.pos();
        std::string field = s.ident("claim field");
        s.expect(":");
        if (field == "formal" || field == "informal") {
            if (have_statement) throw ParseError("claim '" + c.id + "' has more than one statement", field_at);
            have_statement = true;
            if (field == "formal") {
                auto [text, pos] = s.formula_text();
                pending.push_back({c.id, std::move(text), pos});
                c.statement = logic::make::truth();
            } else {
                std::string text = normalize_space(s.string_lit());
                if (text.empty()) throw ParseError("informal statement is empty", field_at);
                c.statement = InformalText{std::move(text)};
            }
        } else if (field == "verify") {
            if (c.verify) throw ParseError("claim '" + c.id + "' has more than one verify hint", field_at);
            c.verify = verify_hint(s);
        } else if (field == "note") {
            c.note = s.string_lit();
        } else {
            throw ParseError("unknown claim field '" + field + "'", field_at);
        }
        if (!s.accept(";")) {
            s.expect("}");
            break;
        }
    }
    if (!have_statement) throw ParseError("claim '" + c.id + "' has no formal or informal statement", at);
    r.claims.emplace(c.id, std::move(c));
}

SourcePos shift(SourcePos base, SourcePos rel) {
    if (rel.line == 1) return {base.line, base.column + rel.column - 1};
    return {base.line + rel.line - 1, rel.column};
}

}  // namespace

Rationale parse_rationale_syntax(std::string_view text) {
    Scanner s(text);
    s.header();
    Rationale r;
    std::vector<PendingFormula> pending;
    bool have_name = false, have_root = false;

    while (!s.done()) {
        const SourcePos at = s.pos();
        const std::string kw = s.ident("a declaration");
        if (kw == "rationale") {
            if (have_name) throw ParseError("duplicate 'rationale' line", at);
            r.name = s.ident("rationale name");
            have_name = true;
        } else if (kw == "sort") {
            const SourcePos name_at = s.pos();
            std::string name = s.ident("sort name");
            if (!r.signature.sorts.insert(name).second) throw ParseError("duplicate sort '" + name + "'", name_at);
        } else if (kw == "fn" || kw == "pred") {
            const SourcePos name_at = s.pos();
            std::string name = s.ident("symbol name");
            if (r.signature.declares(name)) throw ParseError("duplicate symbol '" + name + "'", name_at);
            if (kw == "fn") {
                s.expect(":");
                std::vector<logic::Sort> sorts = sort_list(s, "sort");
                logic::FunctionDecl decl;
                if (s.accept("->")) {
                    decl.args = std::move(sorts);
                    decl.result = logic::Sort::from_name(s.ident("result sort"));
                } else if (sorts.size() == 1) {
                    decl.result = sorts.front();
                } else {
                    s.fail("expected '->' in function declaration");
                }
                r.signature.functions.emplace(name, std::move(decl));
            } else {
                logic::PredicateDecl decl;
                if (s.accept(":")) decl.args = sort_list(s, "sort");
                r.signature.predicates.emplace(name, std::move(decl));
            }
        } else if (kw == "claim") {
            parse_claim(s, r, pending);
        } else if (kw == "decompose") {
            Decomposition d;
            d.parent = s.ident("parent claim id");
            s.expect("->");
            s.expect("[");
            if (!s.accept("]")) {
                do d.children.push_back(s.ident("child claim id"));
                while (s.accept(","));
                s.expect("]");
            }
            r.decompositions.push_back(std::move(d));
        } else if (kw == "root") {
            if (have_root) throw ParseError("duplicate 'root' line", at);
            r.root = s.ident("root claim id");
            have_root = true;
        } else if (kw == "subject") {
            if (r.subject) throw ParseError("duplicate 'subject' line", at);
            SubjectRef ref;
            ref.path = s.string_lit();
            s.expect("sha256:");
            const SourcePos hex_at = s.pos();
            ref.sha256 = s.word(true);
            if (ref.sha256.size() != 64 ||
                !std::all_of(ref.sha256.begin(), ref.sha256.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); }))
                throw ParseError("subject hash must be 64 hex digits", hex_at);
            std::transform(ref.sha256.begin(), ref.sha256.end(), ref.sha256.begin(),
                           [](char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); });
            r.subject = std::move(ref);
        } else {
            throw ParseError("unknown declaration '" + kw + "'", at);
        }
    }
    if (!have_name) throw ParseError("missing 'rationale <name>' line", s.pos());
    if (!have_root) throw ParseError("missing 'root <id>' line", s.pos());

    for (const auto& p : pending) {
        try {
            r.claims.at(p.claim).statement = logic::parse_formula(p.text, r.signature);
        } catch (const ParseError& e) {
            throw ParseError("claim '" + p.claim + "': " + e.bare_message(), shift(p.pos, e.pos()));
        }
    }
    for (const auto& [id, c] : r.claims)
        if (const auto* f = std::get_if<logic::Formula>(&c.statement))
            for (auto& lit : logic::string_literals(*f)) r.signature.string_literals.insert(lit);

    std::stable_sort(r.decompositions.begin(), r.decompositions.end(),
                     [](const Decomposition& a, const Decomposition& b) { return a.parent < b.parent; });
    return r;
}

namespace {

std::string print_sorts(const std::vector<logic::Sort>& sorts) {
    std::string out;
    for (std::size_t i = 0; i < sorts.size(); ++i) out += (i ? ", " : "") + sorts[i].to_string();
    return out;
}

std::string print_hint_value(const HintValue& v) {
    switch (v.kind) {
        case HintValue::Kind::Word: return v.scalar();
        case HintValue::Kind::String: return quote(v.scalar());
        case HintValue::Kind::Set:
        case HintValue::Kind::List: {
            std::string out = v.kind == HintValue::Kind::Set ? "{" : "[";
            for (std::size_t i = 0; i < v.items.size(); ++i) out += (i ? ", " : "") + quote(v.items[i]);
            return out + (v.kind == HintValue::Kind::Set ? "}" : "]");
        }
    }
    return {};
}

}  // namespace

std::string print_rationale(const Rationale& r) {
    std::string out = std::string(kHeader) + "\nrationale " + r.name + "\n";

    if (!r.signature.sorts.empty() || !r.signature.functions.empty() || !r.signature.predicates.empty()) out += "\n";
    for (const auto& s : r.signature.sorts) out += "sort " + s + "\n";
    for (const auto& [name, decl] : r.signature.functions) {
        out += "fn " + name + " : ";
        if (!decl.args.empty()) out += print_sorts(decl.args) + " -> ";
        out += decl.result.to_string() + "\n";
    }
    for (const auto& [name, decl] : r.signature.predicates) {
        out += "pred " + name;
        if (!decl.args.empty()) out += " : " + print_sorts(decl.args);
        out += "\n";
    }

    std::vector<std::string> order = r.preorder();
    std::set<std::string> listed(order.begin(), order.end());
    for (const auto& [id, c] : r.claims)
        if (!listed.contains(id)) order.push_back(id);

    for (const auto& id : order) {
        const Claim& c = r.claims.at(id);
        out += "\nclaim " + c.id + " " + quote(c.title) + " {\n";
        if (const auto* f = std::get_if<logic::Formula>(&c.statement))
            out += "  formal: " + logic::print(*f) + ";\n";
        else
            out += "  informal: " + quote(std::get<InformalText>(c.statement).text) + ";\n";
        if (c.verify) {
            out += "  verify: " + c.verify->verifier + "(";
            for (std::size_t i = 0; i < c.verify->config.size(); ++i)
                out += (i ? ", " : "") + c.verify->config[i].first + "=" + print_hint_value(c.verify->config[i].second);
            out += ");\n";
        }
        if (!c.note.empty()) out += "  note: " + quote(c.note) + ";\n";
        out += "}\n";
    }

    if (!r.decompositions.empty()) out += "\n";
    for (const auto& d : r.decompositions) {
        out += "decompose " + d.parent + " -> [";
        for (std::size_t i = 0; i < d.children.size(); ++i) out += (i ? ", " : "") + d.children[i];
        out += "]\n";
    }
    out += "\nroot " + r.root + "\n";
    if (r.subject) out += "subject " + quote(r.subject->path) + " sha256:" + r.subject->sha256 + "\n";
    return out;
}

}  // namespace avc::rationale
