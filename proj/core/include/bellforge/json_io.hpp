#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "bellforge/behavior.hpp"
#include "bellforge/rational.hpp"
#include "bellforge/vertices.hpp"

namespace bellforge {

/// 17 significant digits: round-trips any double exactly.
inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string kind_name(VertexKind k) {
    switch (k) {
        case VertexKind::Input: return "input";
        case VertexKind::Conditional: return "conditional";
        case VertexKind::Joint: return "joint";
    }
    throw std::invalid_argument("kind_name: bad kind");
}

inline VertexKind kind_from_name(const std::string& s) {
    if (s == "input") return VertexKind::Input;
    if (s == "conditional") return VertexKind::Conditional;
    if (s == "joint") return VertexKind::Joint;
    throw std::invalid_argument("kind_from_name: unknown kind '" + s + "'");
}

inline nlohmann::json scalar_to_json(double x) { return format_double(x); }

inline nlohmann::json scalar_to_json(const Rat& x) {
    std::int64_t num = 0, den = 0;
    if (x.fits_int64(num, den)) return nlohmann::json{{"den", den}, {"num", num}};
    return x.str();  // "p/q" fallback for oversized components
}

template <class T>
T scalar_from_json(const nlohmann::json& j);

template <>
inline double scalar_from_json<double>(const nlohmann::json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        if (auto r = Rat::try_parse(j.get<std::string>())) return r->to_double();
        throw std::invalid_argument("scalar_from_json: unparsable value '" +
                                    j.get<std::string>() + "'");
    }
    if (j.is_object() && j.contains("num") && j.contains("den")) {
        const double den = j.at("den").get<double>();
        if (den == 0.0) throw std::invalid_argument("scalar_from_json: zero denominator");
        return j.at("num").get<double>() / den;
    }
    throw std::invalid_argument("scalar_from_json: unsupported value type");
}

template <>
inline Rat scalar_from_json<Rat>(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        if (auto r = Rat::try_parse(j.get<std::string>())) return *r;
        throw std::invalid_argument("scalar_from_json: unparsable rational '" +
                                    j.get<std::string>() + "'");
    }
    if (j.is_object() && j.contains("num") && j.contains("den")) {
        const long den = static_cast<long>(j.at("den").get<std::int64_t>());
        if (den == 0) throw std::invalid_argument("scalar_from_json: zero denominator");
        return Rat(static_cast<long>(j.at("num").get<std::int64_t>()), den);
    }
    throw std::invalid_argument("scalar_from_json: rational policy needs an exact value");
}

inline nlohmann::json scenario_to_json(const BellScenario& sc) {
    return {{"nA", sc.nA}, {"nB", sc.nB}, {"nX", sc.nX}, {"nY", sc.nY}};
}

inline BellScenario scenario_from_json(const nlohmann::json& j) {
    BellScenario sc;
    sc.nA = j.at("nA").get<int>();
    sc.nB = j.at("nB").get<int>();
    sc.nX = j.at("nX").get<int>();
    sc.nY = j.at("nY").get<int>();
    sc.validate();
    return sc;
}

/// Behavior document: {"scenario": {...}, "kind": "...", "values": [...]}
/// with the fixed (x, y, a, b) row-major value order.
template <class T>
struct BehaviorDoc {
    BellScenario scenario;
    VertexKind kind = VertexKind::Conditional;
    std::vector<T> values;
};

template <class T>
nlohmann::json behavior_to_json(const BellScenario& sc, VertexKind kind,
                                const std::vector<T>& values) {
    nlohmann::json vals = nlohmann::json::array();
    for (const T& v : values) vals.push_back(scalar_to_json(v));
    return {{"kind", kind_name(kind)},
            {"scenario", scenario_to_json(sc)},
            {"values", vals}};
}

template <class T>
BehaviorDoc<T> behavior_from_json(const nlohmann::json& j) {
    BehaviorDoc<T> doc;
    doc.scenario = scenario_from_json(j.at("scenario"));
    doc.kind = kind_from_name(j.at("kind").get<std::string>());
    for (const auto& v : j.at("values")) doc.values.push_back(scalar_from_json<T>(v));
    const int expected = doc.kind == VertexKind::Input ? doc.scenario.input_cells()
                                                       : doc.scenario.table_size();
    if (static_cast<int>(doc.values.size()) != expected)
        throw std::invalid_argument("behavior_from_json: wrong value count");
    return doc;
}

template <class T>
nlohmann::json vertex_set_to_json(const VertexSet<T>& V) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : V.vertices)
        arr.push_back(behavior_to_json(V.scenario, V.kind, v));
    return arr;
}

}  // namespace bellforge
