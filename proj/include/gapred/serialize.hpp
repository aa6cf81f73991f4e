#pragma once

// Canonical JSON documents for every instance type.
//
// Each document carries "kind" and "version": 1. Object keys come out sorted
// (nlohmann::json stores objects in std::map), list order is preserved, and
// rationals are written as [numerator, denominator] pairs. Reading
// normalizes non-reduced rationals and records a note for each one.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gapred/error.hpp"
#include "gapred/instances.hpp"
#include "gapred/rational.hpp"

namespace gapred {

using Json = nlohmann::json;

using Instance = std::variant<SetSystem, ColoredSetSystem, WeightedSetSystem, ValuedTwoCsp, WeightedTwoCsp,
                              MetricInstance, MaxCoverInstance>;

inline constexpr int kDocumentVersion = 1;

inline const char* kind_name(const SetSystem&) { return "set_system"; }
inline const char* kind_name(const ColoredSetSystem&) { return "colored_set_system"; }
inline const char* kind_name(const WeightedSetSystem&) { return "weighted_set_system"; }
inline const char* kind_name(const ValuedTwoCsp&) { return "vcsp"; }
inline const char* kind_name(const WeightedTwoCsp&) { return "csp"; }
inline const char* kind_name(const MetricInstance&) { return "metric"; }
inline const char* kind_name(const MaxCoverInstance&) { return "maxcover"; }

namespace detail {

inline Json header(const char* kind) { return Json{{"kind", kind}, {"version", kDocumentVersion}}; }

inline Json variables_json(const std::vector<Variable>& vars) {
    Json out = Json::array();
    for (const auto& v : vars) out.push_back({{"alphabet_size", v.alphabet_size}, {"name", v.name}});
    return out;
}

}  // namespace detail

inline Json rational_json(const Rational& r) { return Json::array({r.num(), r.den()}); }

inline Json to_json(const SetSystem& ss) {
    Json j = detail::header(kind_name(ss));
    j["universe_size"] = ss.universe_size;
    j["sets"] = ss.sets;
    return j;
}

inline Json to_json(const ColoredSetSystem& cs) {
    Json j = detail::header(kind_name(cs));
    j["base"] = {{"universe_size", cs.base.universe_size}, {"sets", cs.base.sets}};
    j["color_of"] = cs.color_of;
    j["k"] = cs.k;
    return j;
}

inline Json to_json(const WeightedSetSystem& ws) {
    Json j = detail::header(kind_name(ws));
    j["base"] = std::visit([](const auto& b) { return to_json(b); }, ws.base);
    j["base"].erase("version");
    j["element_weight"] = ws.element_weight;
    return j;
}

inline Json to_json(const ValuedTwoCsp& csp) {
    Json j = detail::header(kind_name(csp));
    j["variables"] = detail::variables_json(csp.variables);
    Json edges = Json::array();
    for (const auto& e : csp.edges) {
        Json table = Json::array();
        for (const auto& row : e.table) {
            Json r = Json::array();
            for (const auto& x : row) r.push_back(rational_json(x));
            table.push_back(std::move(r));
        }
        edges.push_back({{"u", e.u}, {"v", e.v}, {"value_table", std::move(table)}});
    }
    j["edges"] = std::move(edges);
    return j;
}

inline Json to_json(const WeightedTwoCsp& csp) {
    Json j = detail::header(kind_name(csp));
    j["variables"] = detail::variables_json(csp.variables);
    Json edges = Json::array();
    for (const auto& e : csp.edges) {
        Json allowed = Json::array();
        for (auto [a, b] : e.allowed) allowed.push_back({a, b});
        edges.push_back({{"u", e.u}, {"v", e.v}, {"weight", e.weight}, {"allowed", std::move(allowed)}});
    }
    j["edges"] = std::move(edges);
    return j;
}

inline Json to_json(const MetricInstance& m) {
    Json j = detail::header(kind_name(m));
    j["n"] = m.n;
    j["dist"] = m.dist;
    j["clients"] = m.clients;
    j["facilities"] = m.facilities;
    return j;
}

inline Json to_json(const MaxCoverInstance& inst) {
    Json j = detail::header(kind_name(inst));
    j["left_groups"] = inst.left_groups;
    j["right_groups"] = inst.right_groups;
    Json edges = Json::array();
    for (auto [l, r] : inst.edges) edges.push_back({l, r});
    j["edges"] = std::move(edges);
    return j;
}

inline Json to_json(const Instance& x) {
    return std::visit([](const auto& v) { return to_json(v); }, x);
}

/// Canonical text: two-space indentation, sorted keys, trailing newline.
inline std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

template <class T>
std::string serialize(const T& x) {
    return dump_canonical(to_json(x));
}

/// Deserialized instance plus human-readable notes (rational normalization).
struct Parsed {
    Instance instance;
    std::vector<std::string> notes;
};

namespace detail {

/// Schema-checked access to a JSON tree; errors carry the JSON pointer.
class Reader {
public:
    explicit Reader(std::vector<std::string>& notes) : notes_(notes) {}

    const Json& field(const Json& obj, const std::string& path, const char* key) {
        if (!obj.is_object()) fail("expected object", path);
        auto it = obj.find(key);
        if (it == obj.end()) fail(std::string("missing field '") + key + "'", path);
        return *it;
    }

    std::int64_t integer(const Json& j, const std::string& path) {
        if (!j.is_number_integer()) fail("expected integer", path);
        if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
            fail("integer out of range", path);
        }
        return j.get<std::int64_t>();
    }

    int int32(const Json& j, const std::string& path) {
        std::int64_t v = integer(j, path);
        if (v < INT32_MIN || v > INT32_MAX) fail("integer out of range", path);
        return static_cast<int>(v);
    }

    const Json& array(const Json& j, const std::string& path) {
        if (!j.is_array()) fail("expected array", path);
        return j;
    }

    std::vector<int> int_list(const Json& j, const std::string& path) {
        std::vector<int> out;
        const Json& a = array(j, path);
        for (std::size_t i = 0; i < a.size(); ++i) out.push_back(int32(a[i], path + "/" + std::to_string(i)));
        return out;
    }

    std::vector<std::vector<int>> int_lists(const Json& j, const std::string& path) {
        std::vector<std::vector<int>> out;
        const Json& a = array(j, path);
        for (std::size_t i = 0; i < a.size(); ++i) out.push_back(int_list(a[i], path + "/" + std::to_string(i)));
        return out;
    }

    std::pair<int, int> int_pair(const Json& j, const std::string& path) {
        const Json& a = array(j, path);
        if (a.size() != 2) fail("expected pair", path);
        return {int32(a[0], path + "/0"), int32(a[1], path + "/1")};
    }

    Rational rational(const Json& j, const std::string& path) {
        const Json& a = array(j, path);
        if (a.size() != 2) fail("expected [numerator, denominator]", path);
        std::int64_t n = integer(a[0], path + "/0");
        std::int64_t d = integer(a[1], path + "/1");
        if (d <= 0) fail("denominator must be positive", path + "/1");
        Rational r(n, d);
        if (r.num() != n || r.den() != d) {
            notes_.push_back("normalized " + std::to_string(n) + "/" + std::to_string(d) + " to " + r.str() + " at " +
                             path);
        }
        return r;
    }

    std::vector<Variable> variables(const Json& j, const std::string& path) {
        std::vector<Variable> out;
        const Json& a = array(j, path);
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::string p = path + "/" + std::to_string(i);
            const Json& name = field(a[i], p, "name");
            if (!name.is_string()) fail("expected string", p + "/name");
            out.push_back({name.get<std::string>(), int32(field(a[i], p, "alphabet_size"), p + "/alphabet_size")});
        }
        return out;
    }

    [[noreturn]] static void fail(const std::string& what, const std::string& path) {
        throw ParseError(what, path.empty() ? "/" : path);
    }

private:
    std::vector<std::string>& notes_;
};

inline SetSystem read_set_system(Reader& r, const Json& j, const std::string& p) {
    SetSystem ss;
    ss.universe_size = r.int32(r.field(j, p, "universe_size"), p + "/universe_size");
    ss.sets = r.int_lists(r.field(j, p, "sets"), p + "/sets");
    return ss;
}

inline ColoredSetSystem read_colored(Reader& r, const Json& j, const std::string& p) {
    ColoredSetSystem cs;
    cs.base = read_set_system(r, r.field(j, p, "base"), p + "/base");
    cs.color_of = r.int_list(r.field(j, p, "color_of"), p + "/color_of");
    cs.k = r.int32(r.field(j, p, "k"), p + "/k");
    return cs;
}

inline std::string read_kind(Reader& r, const Json& j, const std::string& p) {
    const Json& kind = r.field(j, p, "kind");
    if (!kind.is_string()) Reader::fail("expected string", p + "/kind");
    return kind.get<std::string>();
}

inline Instance read_instance(Reader& r, const Json& j) {
    const std::string kind = read_kind(r, j, "");
    if (r.integer(r.field(j, "", "version"), "/version") != kDocumentVersion) {
        Reader::fail("unsupported version", "/version");
    }
    if (kind == "set_system") return read_set_system(r, j, "");
    if (kind == "colored_set_system") return read_colored(r, j, "");
    if (kind == "weighted_set_system") {
        WeightedSetSystem ws;
        const Json& base = r.field(j, "", "base");
        const std::string base_kind = read_kind(r, base, "/base");
        if (base_kind == "set_system") {
            ws.base = read_set_system(r, base, "/base");
        } else if (base_kind == "colored_set_system") {
            ws.base = read_colored(r, base, "/base");
        } else {
            Reader::fail("unknown base kind '" + base_kind + "'", "/base/kind");
        }
        const Json& w = r.array(r.field(j, "", "element_weight"), "/element_weight");
        for (std::size_t i = 0; i < w.size(); ++i) ws.element_weight.push_back(r.integer(w[i], "/element_weight/" + std::to_string(i)));
        return ws;
    }
    if (kind == "vcsp") {
        ValuedTwoCsp csp;
        csp.variables = r.variables(r.field(j, "", "variables"), "/variables");
        const Json& edges = r.array(r.field(j, "", "edges"), "/edges");
        for (std::size_t e = 0; e < edges.size(); ++e) {
            std::string p = "/edges/" + std::to_string(e);
            ValuedEdge edge;
            edge.u = r.int32(r.field(edges[e], p, "u"), p + "/u");
            edge.v = r.int32(r.field(edges[e], p, "v"), p + "/v");
            const Json& table = r.array(r.field(edges[e], p, "value_table"), p + "/value_table");
            for (std::size_t a = 0; a < table.size(); ++a) {
                std::string pa = p + "/value_table/" + std::to_string(a);
                const Json& row = r.array(table[a], pa);
                std::vector<Rational> vals;
                for (std::size_t b = 0; b < row.size(); ++b) vals.push_back(r.rational(row[b], pa + "/" + std::to_string(b)));
                edge.table.push_back(std::move(vals));
            }
            csp.edges.push_back(std::move(edge));
        }
        return csp;
    }
    if (kind == "csp") {
        WeightedTwoCsp csp;
        csp.variables = r.variables(r.field(j, "", "variables"), "/variables");
        const Json& edges = r.array(r.field(j, "", "edges"), "/edges");
        for (std::size_t e = 0; e < edges.size(); ++e) {
            std::string p = "/edges/" + std::to_string(e);
            WeightedEdge edge;
            edge.u = r.int32(r.field(edges[e], p, "u"), p + "/u");
            edge.v = r.int32(r.field(edges[e], p, "v"), p + "/v");
            edge.weight = r.integer(r.field(edges[e], p, "weight"), p + "/weight");
            const Json& allowed = r.array(r.field(edges[e], p, "allowed"), p + "/allowed");
            for (std::size_t i = 0; i < allowed.size(); ++i) {
                edge.allowed.push_back(r.int_pair(allowed[i], p + "/allowed/" + std::to_string(i)));
            }
            csp.edges.push_back(std::move(edge));
        }
        return csp;
    }
    if (kind == "metric") {
        MetricInstance m;
        m.n = r.int32(r.field(j, "", "n"), "/n");
        const Json& dist = r.array(r.field(j, "", "dist"), "/dist");
        for (std::size_t a = 0; a < dist.size(); ++a) {
            std::string pa = "/dist/" + std::to_string(a);
            const Json& row = r.array(dist[a], pa);
            std::vector<std::int64_t> vals;
            for (std::size_t b = 0; b < row.size(); ++b) vals.push_back(r.integer(row[b], pa + "/" + std::to_string(b)));
            m.dist.push_back(std::move(vals));
        }
        m.clients = r.int_list(r.field(j, "", "clients"), "/clients");
        m.facilities = r.int_list(r.field(j, "", "facilities"), "/facilities");
        return m;
    }
    if (kind == "maxcover") {
        MaxCoverInstance inst;
        inst.left_groups = r.int_lists(r.field(j, "", "left_groups"), "/left_groups");
        inst.right_groups = r.int_lists(r.field(j, "", "right_groups"), "/right_groups");
        const Json& edges = r.array(r.field(j, "", "edges"), "/edges");
        for (std::size_t i = 0; i < edges.size(); ++i) inst.edges.push_back(r.int_pair(edges[i], "/edges/" + std::to_string(i)));
        return inst;
    }
    Reader::fail("unknown kind '" + kind + "'", "/kind");
}

}  // namespace detail

/// Parses and validates a document produced by a compatible writer.
///
/// Throws ParseError (syntax: byte offset; schema: JSON pointer) or
/// ValidationError when the decoded instance breaks a type invariant.
inline Parsed from_json(const Json& j) {
    Parsed out;
    detail::Reader reader(out.notes);
    out.instance = detail::read_instance(reader, j);
    std::visit([](const auto& x) { require_valid(x, kind_name(x)); }, out.instance);
    return out;
}

inline Parsed deserialize(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw ParseError("malformed JSON", "byte " + std::to_string(e.byte));
    }
    return from_json(j);
}

/// Deserializes and requires the document to hold a `T`.
template <class T>
T deserialize_as(std::string_view text, std::vector<std::string>* notes = nullptr) {
    Parsed p = deserialize(text);
    if (!std::holds_alternative<T>(p.instance)) {
        throw ParseError(std::string("expected kind '") + kind_name(T{}) + "'", "/kind");
    }
    if (notes) *notes = std::move(p.notes);
    return std::get<T>(std::move(p.instance));
}

}  // namespace gapred
