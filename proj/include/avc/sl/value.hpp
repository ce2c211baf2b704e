#pragma once

#include "avc/util/rational.hpp"

#include <compare>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace avc::sl {

struct Value;

struct ListValue {
    std::vector<Value> items;
};

// Fields kept sorted by name.
struct RecordValue {
    std::vector<std::pair<std::string, Value>> fields;

    const Value* find(const std::string& name) const;
};

// Items kept sorted and unique; only Num, Str and Bool are allowed.
struct SetValue {
    std::vector<Value> items;

    bool contains(const Value& v) const;
};

struct Value {
    std::variant<Rational, std::string, bool, ListValue, RecordValue, SetValue> data;

    static Value num(Rational r) { return {std::move(r)}; }
    static Value str(std::string s) { return {std::move(s)}; }
    static Value boolean(bool b) { return {b}; }
    static Value list(std::vector<Value> items) { return {ListValue{std::move(items)}}; }
    static Value record(std::vector<std::pair<std::string, Value>> fields);
    static Value set(std::vector<Value> items);  // throws on unhashable items

    bool is_num() const { return std::holds_alternative<Rational>(data); }
    bool is_str() const { return std::holds_alternative<std::string>(data); }
    bool is_bool() const { return std::holds_alternative<bool>(data); }
    bool is_list() const { return std::holds_alternative<ListValue>(data); }
    bool is_record() const { return std::holds_alternative<RecordValue>(data); }
    bool is_set() const { return std::holds_alternative<SetValue>(data); }
    bool is_hashable() const { return is_num() || is_str() || is_bool(); }

    const Rational& as_num() const { return std::get<Rational>(data); }
    const std::string& as_str() const { return std::get<std::string>(data); }
    bool as_bool() const { return std::get<bool>(data); }
    const ListValue& as_list() const { return std::get<ListValue>(data); }
    const RecordValue& as_record() const { return std::get<RecordValue>(data); }
    const SetValue& as_set() const { return std::get<SetValue>(data); }

    const char* kind_name() const;
};

std::strong_ordering operator<=>(const Value& a, const Value& b);
bool operator==(const Value& a, const Value& b);

// Readable rendering in SL literal syntax, e.g. {"decision": "ok", "score": 0}.
std::string to_string(const Value& v);

}  // namespace avc::sl
