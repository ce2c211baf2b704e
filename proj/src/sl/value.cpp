#include "avc/sl/value.hpp"

#include "avc/util/text.hpp"

#include <algorithm>
#include <stdexcept>

namespace avc::sl {

const Value* RecordValue::find(const std::string& name) const {
    auto it = std::lower_bound(fields.begin(), fields.end(), name,
                               [](const auto& f, const std::string& n) { return f.first < n; });
    return it != fields.end() && it->first == name ? &it->second : nullptr;
}

bool SetValue::contains(const Value& v) const { return std::binary_search(items.begin(), items.end(), v); }

Value Value::record(std::vector<std::pair<std::string, Value>> fields) {
    std::stable_sort(fields.begin(), fields.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    // A repeated key keeps its last value.
    std::vector<std::pair<std::string, Value>> out;
    for (auto& f : fields) {
        if (!out.empty() && out.back().first == f.first)
            out.back().second = std::move(f.second);
        else
            out.push_back(std::move(f));
    }
    return {RecordValue{std::move(out)}};
}

Value Value::set(std::vector<Value> items) {
    for (const auto& v : items)
        if (!v.is_hashable()) throw std::invalid_argument(std::string("set items must be numbers, strings or booleans, got ") + v.kind_name());
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    return {SetValue{std::move(items)}};
}

const char* Value::kind_name() const {
    switch (data.index()) {
        case 0: return "number";
        case 1: return "string";
        case 2: return "bool";
        case 3: return "list";
        case 4: return "record";
        default: return "set";
    }
}

namespace {

std::strong_ordering compare_lists(const std::vector<Value>& a, const std::vector<Value>& b) {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::strong_ordering operator<=>(const Value& a, const Value& b) {
    if (a.data.index() != b.data.index()) return a.data.index() <=> b.data.index();
    switch (a.data.index()) {
        case 0: {
            const auto& x = a.as_num();
            const auto& y = b.as_num();
            return x < y ? std::strong_ordering::less : y < x ? std::strong_ordering::greater : std::strong_ordering::equal;
        }
        case 1: return a.as_str() <=> b.as_str();
        case 2: return a.as_bool() <=> b.as_bool();
        case 3: return compare_lists(a.as_list().items, b.as_list().items);
        case 4: {
            const auto& x = a.as_record().fields;
            const auto& y = b.as_record().fields;
            return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end(),
                                                          [](const auto& p, const auto& q) {
                                                              if (auto c = p.first <=> q.first; c != 0) return c;
                                                              return p.second <=> q.second;
                                                          });
        }
        default: return compare_lists(a.as_set().items, b.as_set().items);
    }
}

bool operator==(const Value& a, const Value& b) { return (a <=> b) == 0; }

std::string to_string(const Value& v) {
    auto join = [](const std::vector<Value>& items) {
        std::string out;
        for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + to_string(items[i]);
        return out;
    };
    switch (v.data.index()) {
        case 0: return to_decimal_string(v.as_num());
        case 1: return quote(v.as_str());
        case 2: return v.as_bool() ? "True" : "False";
        case 3: return "[" + join(v.as_list().items) + "]";
        case 4: {
            std::string out = "{";
            const auto& f = v.as_record().fields;
            for (std::size_t i = 0; i < f.size(); ++i) out += (i ? ", " : "") + quote(f[i].first) + ": " + to_string(f[i].second);
            return out + "}";
        }
        default: return "set([" + join(v.as_set().items) + "])";
    }
}

}  // namespace avc::sl
