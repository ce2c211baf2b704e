#pragma once

// Analyzer soundness against the interpreter: whenever a verifier says
// Verified, sampled runs of the program must respect the claim.

#include "avc/analyzers/verifiers.hpp"
#include "avc/sl/interp.hpp"
#include "avc/sl/parse.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace avc::testing {

using sl::Value;

inline Rational witness_score(const std::string& text) {
    if (auto d = parse_decimal(text)) return *d;
    return Rational(text);  // p/q form
}

struct SoundnessStats {
    int verified = 0;
    int refuted = 0;
    int unknown = 0;
    int samples = 0;
    int violations = 0;
    int bad_witnesses = 0;  // Refuted without a genuine counterexample
};

// Random program appending to `reasons` under data-dependent branches.
inline std::string inventory_program(std::mt19937& rng, std::vector<std::string>& pool) {
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    std::string src = "def g(x, flags):\n    reasons = []\n";
    std::function<void(int, int)> block = [&](int depth, int indent) {
        const std::string pad(indent, ' ');
        const int n = 1 + pick(3);
        for (int i = 0; i < n; ++i) {
            switch (depth > 0 ? pick(6) : pick(3)) {
                case 0:
                case 1: src += pad + "reasons.append(\"" + pool[pick(static_cast<int>(pool.size()))] + "\")\n"; break;
                case 2:
                    if (pick(6) == 0)
                        src += pad + "reasons.append(x.get(\"name\"))\n";
                    else
                        src += pad + "n = len(reasons)\n";
                    break;
                case 3:
                case 4:
                    src += pad + "if flags.get(\"f" + std::to_string(pick(4)) + "\"):\n";
                    block(depth - 1, indent + 4);
                    if (pick(2)) {
                        src += pad + "else:\n";
                        block(depth - 1, indent + 4);
                    }
                    break;
                default:
                    src += pad + "for t in x.get(\"items\"):\n";
                    block(depth - 1, indent + 4);
                    break;
            }
        }
    };
    block(3, 4);
    if (pick(8) == 0) src += "    if flags.get(\"f0\"):\n        return {\"reasons\": [\"" + pool[0] + "\", x.get(\"name\")]}\n";
    src += "    return {\"reasons\": reasons}\n";
    return src;
}

inline Value inventory_input(std::mt19937& rng) {
    auto coin = [&] { return std::uniform_int_distribution<int>(0, 1)(rng) == 1; };
    std::vector<Value> items;
    for (int i = std::uniform_int_distribution<int>(0, 3)(rng); i > 0; --i) items.push_back(Value::num(i));
    return Value::record({{"name", Value::str(coin() ? "nm" : "alpha")}, {"items", Value::list(items)}});
}

inline Value inventory_flags(std::mt19937& rng) {
    std::vector<std::pair<std::string, Value>> f;
    for (int i = 0; i < 4; ++i) f.emplace_back("f" + std::to_string(i), Value::boolean(rng() % 2 == 0));
    return Value::record(f);
}

inline SoundnessStats inventory_soundness(unsigned seed, int programs) {
    using namespace analyzers;
    std::mt19937 rng(seed);
    std::vector<std::string> pool{"alpha", "beta", "gamma", "delta", "eps"};
    SoundnessStats st;
    for (int p = 0; p < programs; ++p) {
        auto prog = sl::parse_program(inventory_program(rng, pool));
        std::set<std::string> claimed;
        for (const auto& s : pool)
            if (rng() % 4 != 0) claimed.insert(s);
        Evidence e = verify_string_inventory(prog, "g", "reasons", claimed);
        if (e.status == EvidenceStatus::Refuted) {
            ++st.refuted;
            if (claimed.contains(e.details["witness"].get<std::string>())) ++st.bad_witnesses;
            continue;
        }
        if (e.status == EvidenceStatus::Unknown) {
            ++st.unknown;
            continue;
        }
        ++st.verified;
        for (int k = 0; k < 10; ++k) {
            Value out = sl::interpret(prog, "g", {inventory_input(rng), inventory_flags(rng)}, {});
            ++st.samples;
            for (const auto& s : out.as_record().find("reasons")->as_list().items)
                if (!s.is_str() || !claimed.contains(s.as_str())) ++st.violations;
        }
    }
    return st;
}

inline SoundnessStats ladder_soundness(unsigned seed, int programs) {
    using namespace analyzers;
    std::mt19937 rng(seed);
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    const std::vector<std::string> order{"ok", "review", "flag"};
    SoundnessStats st;
    for (int p = 0; p < programs; ++p) {
        std::string src = "const T0 = " + std::to_string(pick(10)) + ".5\n\ndef h(score):\n";
        const int arms = 1 + pick(3);
        static const char* ops[] = {">=", ">", "<", "<="};
        for (int a = 0; a < arms; ++a) {
            const int op = pick(5) == 0 ? pick(4) : pick(2);
            const std::string t = pick(4) == 0 ? "T0" : std::to_string(pick(12)) + "." + std::to_string(pick(10));
            src += std::string(a == 0 ? "    if" : "    elif") + " score " + ops[op] + " " + t + ":\n";
            src += "        decision = \"" + order[pick(3)] + "\"\n";
        }
        src += "    else:\n        decision = \"" + order[pick(3)] + "\"\n    return decision\n";
        auto prog = sl::parse_program(src);
        auto rank = [&](const Value& d) {
            return static_cast<int>(std::find(order.begin(), order.end(), d.as_str()) - order.begin());
        };
        Evidence e = verify_threshold_ladder(prog, "h", "score", order);
        if (e.status == EvidenceStatus::Refuted) {
            ++st.refuted;
            // The witness pair must replay to a rank inversion.
            const auto& w = e.details["witness"];
            const Rational lo = witness_score(w[0]["score"].get<std::string>());
            const Rational hi = witness_score(w[1]["score"].get<std::string>());
            if (!(lo < hi) || rank(sl::interpret(prog, "h", {Value::num(lo)}, {})) <=
                                  rank(sl::interpret(prog, "h", {Value::num(hi)}, {})))
                ++st.bad_witnesses;
            continue;
        }
        if (e.status == EvidenceStatus::Unknown) {
            ++st.unknown;
            continue;
        }
        ++st.verified;
        std::vector<Rational> grid;
        for (int k = 0; k < 40; ++k) grid.push_back(Rational(pick(2800) - 200, 200));
        std::sort(grid.begin(), grid.end());
        int prev = -1;
        for (const auto& s : grid) {
            ++st.samples;
            const int r = rank(sl::interpret(prog, "h", {Value::num(s)}, {}));
            if (r < prev) ++st.violations;
            prev = r;
        }
    }
    return st;
}

}  // namespace avc::testing
