#pragma once

// Validates a JSON document against the subset of JSON Schema used by the
// files in schemas/: type, required, properties, additionalProperties (false
// only), items, minItems, minimum, exclusiveMinimum, enum, const.

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ksharp::schema {

using json = nlohmann::json;

inline bool type_matches(const json& v, const std::string& type)
{
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "boolean") return v.is_boolean();
    if (type == "integer") return v.is_number_integer() || (v.is_number_float() && v.get<double>() == static_cast<double>(static_cast<long long>(v.get<double>())));
    if (type == "number") return v.is_number();
    if (type == "null") return v.is_null();
    return false;
}

inline void check(const json& v, const json& s, const std::string& where, std::vector<std::string>& errors)
{
    const auto fail = [&](const std::string& what) { errors.push_back(where + ": " + what); };
    if (s.contains("type") && !type_matches(v, s["type"].get<std::string>())) {
        fail("expected " + s["type"].get<std::string>());
        return;
    }
    if (s.contains("const") && v != s["const"]) fail("const mismatch");
    if (s.contains("enum")) {
        bool found = false;
        for (const auto& e : s["enum"]) found = found || e == v;
        if (!found) fail("not in enum");
    }
    if (v.is_number()) {
        const double x = v.get<double>();
        if (s.contains("minimum") && x < s["minimum"].get<double>()) fail("below minimum");
        if (s.contains("exclusiveMinimum") && x <= s["exclusiveMinimum"].get<double>()) fail("not above exclusiveMinimum");
    }
    if (v.is_object()) {
        if (s.contains("required")) {
            for (const auto& key : s["required"]) {
                if (!v.contains(key.get<std::string>())) fail("missing " + key.get<std::string>());
            }
        }
        const json props = s.value("properties", json::object());
        const bool closed = s.contains("additionalProperties") && s["additionalProperties"] == false;
        for (const auto& [key, item] : v.items()) {
            if (props.contains(key)) check(item, props[key], where + "." + key, errors);
            else if (closed) fail("unexpected key " + key);
        }
    }
    if (v.is_array()) {
        if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) fail("too few items");
        if (s.contains("items")) {
            for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s["items"], where + "[" + std::to_string(i) + "]", errors);
        }
    }
}

/// Empty when the document conforms.
inline std::vector<std::string> validate(const json& doc, const json& schema)
{
    std::vector<std::string> errors;
    check(doc, schema, "$", errors);
    return errors;
}

inline json load(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return json::parse(ss.str());
}

} // namespace ksharp::schema
