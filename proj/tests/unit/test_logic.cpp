#include "avc/logic/atomize.hpp"
#include "avc/logic/normalize.hpp"
#include "avc/logic/parse.hpp"
#include "avc/logic/print.hpp"
#include "avc/logic/well_formed.hpp"
#include "support/aml_signature.hpp"
#include "support/formula_gen.hpp"

#include <doctest.h>

using namespace avc;
using namespace avc::logic;

namespace {

Signature small_sig() {
    Signature sig;
    sig.sorts = {"A"};
    sig.functions["c"] = {{}, Sort::named("A")};
    sig.predicates["P"] = {{Sort::named("A")}};
    sig.predicates["Q"] = {{Sort::named("A")}};
    sig.predicates["Acc"] = {{Sort::str()}};
    sig.predicates["p"] = {{}};
    sig.predicates["q"] = {{}};
    return sig;
}

}  // namespace

TEST_CASE("parse_formula builds the expected constructors") {
    const Signature sig = testing::aml_signature();
    const Formula c1 = parse_formula("forall x:A. R1(f(x))", sig);
    const Formula expected = make::forall(
        "x", Sort::named("A"), make::pred("R1", {make::app("f", {make::var("x", Sort::named("A"))})}));
    CHECK(c1 == expected);

    CHECK(parse_formula("true", sig) == make::truth());

    Signature s2 = small_sig();
    const Formula m = parse_formula(R"(forall s:Str. s in {"a","b"} -> !Acc(s))", s2);
    const Term sv = make::var("s", Sort::str());
    CHECK(m == make::forall("s", Sort::str(),
                            make::implies(make::member(sv, {"a", "b"}), make::negate(make::pred("Acc", {sv})))));
}

TEST_CASE("parse_formula precedence and grouping") {
    const Signature sig = small_sig();
    // && binds tighter than ||, which binds tighter than ->, then <->.
    const Formula f = parse_formula("p && q || !p -> q <-> p", sig);
    const Formula p = make::pred("p"), q = make::pred("q");
    CHECK(f == make::iff(make::implies(make::disj({make::conj({p, q}), make::negate(p)}), q), p));
    // -> is right associative.
    CHECK(parse_formula("p -> q -> p", sig) == make::implies(p, make::implies(q, p)));
    // A quantifier body extends as far right as possible.
    const Formula g = parse_formula("p && forall x:A. P(x) || Q(x)", sig);
    const Term x = make::var("x", Sort::named("A"));
    CHECK(g == make::conj({p, make::forall("x", Sort::named("A"), make::disj({make::pred("P", {x}), make::pred("Q", {x})}))}));
}

TEST_CASE("parse_formula arithmetic terms and parenthesized term groups") {
    const Signature sig = testing::aml_signature();
    const Formula f = parse_formula("(mid) == 3 * low && high == 2 * mid", sig);
    REQUIRE(f.is<And>());
    CHECK(print(f) == "mid == 3 * low && high == 2 * mid");
    const Formula g = parse_formula("(low + mid) * 2 <= high - -1.5", sig);
    CHECK(print(g) == "(low + mid) * 2 <= high - -1.5");
}

TEST_CASE("parse_formula reports located errors") {
    const Signature sig = testing::aml_signature();
    SUBCASE("syntax") {
        try {
            parse_formula("forall x:A.\n  R1(f(x) &&", sig);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.pos().line == 2);
            CHECK(e.pos().column == 11);
        }
    }
    SUBCASE("undeclared symbol") {
        try {
            parse_formula("forall x:A. R9(f(x))", sig);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("undeclared symbol 'R9'") != std::string::npos);
            CHECK(e.pos().column == 13);
        }
    }
    SUBCASE("sort error names the symbol") {
        try {
            parse_formula("R1(3)", sig);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("'R1'") != std::string::npos);
        }
    }
    CHECK_THROWS_AS(parse_formula("forall x:Nope. true", sig), ParseError);
    CHECK_THROWS_AS(parse_formula("x == x", sig), ParseError);
    CHECK_THROWS_AS(parse_formula("decision(f(c)) in {}", sig), ParseError);
    CHECK_THROWS_AS(parse_formula("\"a\" == \"b", sig), ParseError);
}

TEST_CASE("well_formed diagnostics") {
    const Signature sig = testing::aml_signature();
    CHECK(well_formed(sig, parse_formula(testing::kC1, sig)).empty());

    const Formula bad_sort = make::pred("R1", {make::num(3)});
    auto d = well_formed(sig, bad_sort);
    REQUIRE(d.size() == 1);
    CHECK(d[0].code == "sort-mismatch");

    const Formula open = make::pred("R1", {make::app("f", {make::var("x", Sort::named("A"))})});
    d = well_formed(sig, open);
    REQUIRE(d.size() == 1);
    CHECK(d[0].code == "free-variable");

    const Formula dup = make::forall("s", Sort::str(), make::member(make::var("s", Sort::str()), {"a", "a"}));
    d = well_formed(sig, dup);
    REQUIRE(d.size() == 1);
    CHECK(d[0].code == "duplicate-literal");

    CHECK(well_formed(sig, Formula{InformalAtom{"  spaced  "}}).front().code == "informal-text");
    CHECK(well_formed(sig, make::pred("Nope")).front().code == "undeclared-symbol");
}

TEST_CASE("normalize examples") {
    const Signature sig = small_sig();
    const Formula f = parse_formula("forall x:A. P(x) && Q(x)", sig);
    const Formula expected = normalize(make::conj({parse_formula("forall x:A. P(x)", sig), parse_formula("forall y:A. Q(y)", sig)}));
    CHECK(normalize(f) == expected);
    REQUIRE(normalize(f).is<And>());
    CHECK(normalize(f).as<And>().items.size() == 2);

    CHECK(normalize(parse_formula("!!p", sig)) == make::pred("p"));

    const Signature aml = testing::aml_signature();
    const Formula c0 = normalize(parse_formula(testing::kC0, aml));
    const Formula c123 = normalize(make::conj({parse_formula(testing::kC1, aml), parse_formula(testing::kC2, aml),
                                               parse_formula(testing::kC3, aml)}));
    CHECK(c0 == c123);
}

TEST_CASE("normalize renames bound variables canonically") {
    const Signature sig = small_sig();
    const Formula n = normalize(parse_formula("exists y:A. forall x:A. P(x) || P(y)", sig));
    CHECK(print(n).rfind("exists _v0:A. forall _v1:A. ", 0) == 0);
    CHECK(n == normalize(parse_formula("exists b:A. forall a:A. P(b) || P(a)", sig)));
}

TEST_CASE("atomize examples") {
    const Signature sig = small_sig();
    std::vector<Formula> fs{normalize(parse_formula("(forall x:A. P(x)) && q", sig)),
                            normalize(parse_formula("forall y:A. P(y)", sig))};
    Atomization a = atomize(fs);
    REQUIRE(a.atoms.size() == 2);
    REQUIRE(a.skeletons[0].node.index() == 3);  // PAnd
    const auto& conj = std::get<PAnd>(a.skeletons[0].node);
    REQUIRE(conj.items.size() == 2);
    CHECK(std::find(conj.items.begin(), conj.items.end(), a.skeletons[1]) != conj.items.end());

    const Signature aml = testing::aml_signature();
    std::vector<Formula> c0{normalize(parse_formula(testing::kC0, aml)), normalize(parse_formula(testing::kC1, aml)),
                            normalize(parse_formula(testing::kC2, aml)), normalize(parse_formula(testing::kC3, aml))};
    Atomization b = atomize(c0);
    CHECK(b.atoms.size() == 3);
    CHECK(print(b.skeletons[0]) == "a1 && a2 && a3");
    std::set<std::string> premises{print(b.skeletons[1]), print(b.skeletons[2]), print(b.skeletons[3])};
    CHECK(premises == std::set<std::string>{"a1", "a2", "a3"});

    std::vector<Formula> one{make::informal("weights appropriate")};
    Atomization c = atomize(one);
    CHECK(c.atoms.size() == 1);
    CHECK(print(c.skeletons[0]) == "a1");
}

TEST_CASE("property: print/parse round-trip on generated formulas") {
    const Signature sig = testing::gen_signature();
    testing::FormulaGen gen(1234);
    for (int i = 0; i < 2000; ++i) {
        const Formula f = gen.formula(5);
        REQUIRE(well_formed(sig, f).empty());
        const std::string text = print(f);
        INFO(text);
        CHECK(parse_formula(text, sig) == f);
    }
}

TEST_CASE("property: normalize is idempotent and preserves well-formedness") {
    const Signature sig = testing::gen_signature();
    testing::FormulaGen gen(99);
    for (int i = 0; i < 2000; ++i) {
        const Formula f = gen.formula(5);
        const Formula n = normalize(f);
        INFO(print(f));
        CHECK(normalize(n) == n);
        CHECK(well_formed(sig, n).empty());
        CHECK(parse_formula(print(n), sig) == n);
    }
}

TEST_CASE("property: atoms coincide exactly for alpha-variants") {
    const Signature sig = testing::gen_signature();
    testing::FormulaGen gen(7);
    testing::AlphaRenamer alpha(8);
    for (int i = 0; i < 1000; ++i) {
        const Formula f = gen.formula(4);
        const Formula g = gen.formula(4);
        std::vector<Formula> fs{normalize(f), normalize(alpha(f)), normalize(g)};
        Atomization a = atomize(fs);
        INFO(print(f));
        CHECK(a.skeletons[0] == a.skeletons[1]);
        CHECK((a.skeletons[0] == a.skeletons[2]) == (fs[0] == fs[2]));
    }
}
