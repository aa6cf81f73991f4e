#pragma once

// Data model for the five problem families: set systems (plain, colored,
// weighted), valued and weighted 2-CSPs, finite metrics with client and
// facility sets, and MaxCover bipartite instances.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gapred/error.hpp"
#include "gapred/rational.hpp"

namespace gapred {

/// Universe is 0..universe_size-1; each set is a strictly increasing id list.
struct SetSystem {
    int universe_size = 0;
    std::vector<std::vector<int>> sets;

    friend bool operator==(const SetSystem&, const SetSystem&) = default;
};

/// Set system whose sets are partitioned into k color classes.
struct ColoredSetSystem {
    SetSystem base;
    std::vector<int> color_of;
    int k = 0;

    /// Set indices of color `color`, ascending.
    std::vector<int> color_class(int color) const {
        std::vector<int> out;
        for (int s = 0; s < static_cast<int>(color_of.size()); ++s) {
            if (color_of[s] == color) out.push_back(s);
        }
        return out;
    }

    friend bool operator==(const ColoredSetSystem&, const ColoredSetSystem&) = default;
};

using AnySetSystem = std::variant<SetSystem, ColoredSetSystem>;

inline const SetSystem& plain(const AnySetSystem& ss) {
    return std::visit(
        [](const auto& s) -> const SetSystem& {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, SetSystem>) {
                return s;
            } else {
                return s.base;
            }
        },
        ss);
}

inline bool is_colored(const AnySetSystem& ss) {
    return std::holds_alternative<ColoredSetSystem>(ss);
}

/// Set system with a positive integer weight per universe element.
struct WeightedSetSystem {
    AnySetSystem base;
    std::vector<std::int64_t> element_weight;

    friend bool operator==(const WeightedSetSystem&, const WeightedSetSystem&) = default;
};

struct Variable {
    std::string name;
    int alphabet_size = 0;

    friend bool operator==(const Variable&, const Variable&) = default;
};

/// Edge of a valued 2-CSP; `table[a][b]` is f_e(a, b) for a in Sigma_u, b in Sigma_v.
struct ValuedEdge {
    int u = 0;
    int v = 0;
    std::vector<std::vector<Rational>> table;

    friend bool operator==(const ValuedEdge&, const ValuedEdge&) = default;
};

struct ValuedTwoCsp {
    std::vector<Variable> variables;
    std::vector<ValuedEdge> edges;

    friend bool operator==(const ValuedTwoCsp&, const ValuedTwoCsp&) = default;
};

/// Edge of a weighted 2-CSP; `allowed` lists the satisfying symbol pairs, sorted.
struct WeightedEdge {
    int u = 0;
    int v = 0;
    std::int64_t weight = 1;
    std::vector<std::pair<int, int>> allowed;

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

struct WeightedTwoCsp {
    std::vector<Variable> variables;
    std::vector<WeightedEdge> edges;

    friend bool operator==(const WeightedTwoCsp&, const WeightedTwoCsp&) = default;
};

/// Finite metric on points 0..n-1 with integer distances.
struct MetricInstance {
    int n = 0;
    std::vector<std::vector<std::int64_t>> dist;
    std::vector<int> clients;
    std::vector<int> facilities;

    std::int64_t d(int a, int b) const { return dist[a][b]; }

    friend bool operator==(const MetricInstance&, const MetricInstance&) = default;
};

/// Bipartite MaxCover instance. Left and right vertex ids live in separate
/// namespaces; an edge is (left vertex, right vertex).
struct MaxCoverInstance {
    std::vector<std::vector<int>> left_groups;
    std::vector<std::vector<int>> right_groups;
    std::vector<std::pair<int, int>> edges;

    friend bool operator==(const MaxCoverInstance&, const MaxCoverInstance&) = default;
};

/// Per-variable alphabet index.
using Assignment = std::vector<int>;

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const noexcept { return violations.empty(); }

    bool mentions(const std::string& needle) const {
        return std::any_of(violations.begin(), violations.end(),
                           [&](const std::string& v) { return v.find(needle) != std::string::npos; });
    }

    std::string joined() const {
        std::string out;
        for (const auto& v : violations) {
            if (!out.empty()) out += "; ";
            out += v;
        }
        return out;
    }
};

namespace detail {

inline std::string idx(std::size_t i) { return std::to_string(i); }

inline void check_sorted_ids(const std::vector<int>& ids, int bound, const std::string& what,
                             ValidationReport& rep) {
    for (std::size_t p = 0; p < ids.size(); ++p) {
        if (ids[p] < 0 || ids[p] >= bound) {
            rep.violations.push_back(what + " element " + std::to_string(ids[p]) +
                                     " out of range [0," + std::to_string(bound) + ")");
        }
        if (p > 0 && ids[p - 1] >= ids[p]) {
            rep.violations.push_back(what + " not strictly sorted at position " + idx(p));
        }
    }
}

inline void validate_variables(const std::vector<Variable>& vars, ValidationReport& rep) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].alphabet_size < 1) {
            rep.violations.push_back("variable " + idx(i) + " has empty alphabet");
        }
    }
}

/// Returns false when an endpoint is out of range (the edge cannot be inspected further).
inline bool validate_endpoints(int u, int v, std::size_t e, std::size_t nvars,
                               std::set<std::pair<int, int>>& seen, ValidationReport& rep) {
    if (u < 0 || v < 0 || u >= static_cast<int>(nvars) || v >= static_cast<int>(nvars)) {
        rep.violations.push_back("edge " + idx(e) + " endpoint out of range");
        return false;
    }
    if (u == v) rep.violations.push_back("edge " + idx(e) + " is a self-loop on " + std::to_string(u));
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
        rep.violations.push_back("edge " + idx(e) + " duplicates (" + std::to_string(u) + "," +
                                 std::to_string(v) + ")");
    }
    return true;
}

}  // namespace detail

inline ValidationReport validate(const SetSystem& ss) {
    ValidationReport rep;
    if (ss.universe_size < 0) rep.violations.push_back("negative universe_size");
    for (std::size_t s = 0; s < ss.sets.size(); ++s) {
        detail::check_sorted_ids(ss.sets[s], ss.universe_size, "set " + detail::idx(s), rep);
    }
    return rep;
}

inline ValidationReport validate(const ColoredSetSystem& cs) {
    ValidationReport rep = validate(cs.base);
    if (cs.k < 1) rep.violations.push_back("k must be positive");
    if (cs.color_of.size() != cs.base.sets.size()) {
        rep.violations.push_back("color_of has " + detail::idx(cs.color_of.size()) + " entries for " +
                                 detail::idx(cs.base.sets.size()) + " sets");
        return rep;
    }
    std::vector<int> class_size(std::max(cs.k, 0), 0);
    for (std::size_t s = 0; s < cs.color_of.size(); ++s) {
        int c = cs.color_of[s];
        if (c < 0 || c >= cs.k) {
            rep.violations.push_back("set " + detail::idx(s) + " has color " + std::to_string(c) +
                                     " outside [0," + std::to_string(cs.k) + ")");
        } else {
            ++class_size[c];
        }
    }
    for (int c = 0; c < cs.k; ++c) {
        if (class_size[c] == 0) rep.violations.push_back("color class " + std::to_string(c) + " is empty");
    }
    return rep;
}

inline ValidationReport validate(const AnySetSystem& ss) {
    return std::visit([](const auto& s) { return validate(s); }, ss);
}

inline ValidationReport validate(const WeightedSetSystem& ws) {
    ValidationReport rep = validate(ws.base);
    const SetSystem& b = plain(ws.base);
    if (static_cast<int>(ws.element_weight.size()) != b.universe_size) {
        rep.violations.push_back("element_weight has " + detail::idx(ws.element_weight.size()) +
                                 " entries for universe of size " + std::to_string(b.universe_size));
    }
    for (std::size_t e = 0; e < ws.element_weight.size(); ++e) {
        if (ws.element_weight[e] <= 0) {
            rep.violations.push_back("element " + detail::idx(e) + " has non-positive weight " +
                                     std::to_string(ws.element_weight[e]));
        }
    }
    return rep;
}

inline ValidationReport validate(const ValuedTwoCsp& csp) {
    ValidationReport rep;
    detail::validate_variables(csp.variables, rep);
    std::set<std::pair<int, int>> seen;
    for (std::size_t e = 0; e < csp.edges.size(); ++e) {
        const auto& edge = csp.edges[e];
        if (!detail::validate_endpoints(edge.u, edge.v, e, csp.variables.size(), seen, rep)) continue;
        int rows = csp.variables[edge.u].alphabet_size;
        int cols = csp.variables[edge.v].alphabet_size;
        if (static_cast<int>(edge.table.size()) != rows) {
            rep.violations.push_back("edge " + detail::idx(e) + " table has " + detail::idx(edge.table.size()) +
                                     " rows, expected " + std::to_string(rows));
            continue;
        }
        for (int a = 0; a < rows; ++a) {
            if (static_cast<int>(edge.table[a].size()) != cols) {
                rep.violations.push_back("edge " + detail::idx(e) + " table row " + std::to_string(a) +
                                         " has wrong width");
                continue;
            }
            for (int b = 0; b < cols; ++b) {
                const Rational& x = edge.table[a][b];
                if (x < Rational(0) || x > Rational(1)) {
                    rep.violations.push_back("edge " + detail::idx(e) + " value (" + std::to_string(a) + "," +
                                             std::to_string(b) + ") = " + x.str() + " outside [0,1]");
                }
            }
        }
    }
    return rep;
}

inline ValidationReport validate(const WeightedTwoCsp& csp) {
    ValidationReport rep;
    detail::validate_variables(csp.variables, rep);
    std::set<std::pair<int, int>> seen;
    for (std::size_t e = 0; e < csp.edges.size(); ++e) {
        const auto& edge = csp.edges[e];
        if (!detail::validate_endpoints(edge.u, edge.v, e, csp.variables.size(), seen, rep)) continue;
        if (edge.weight < 1) {
            rep.violations.push_back("edge " + detail::idx(e) + " weight " + std::to_string(edge.weight) + " < 1");
        }
        int rows = csp.variables[edge.u].alphabet_size;
        int cols = csp.variables[edge.v].alphabet_size;
        for (std::size_t p = 0; p < edge.allowed.size(); ++p) {
            auto [a, b] = edge.allowed[p];
            if (a < 0 || a >= rows || b < 0 || b >= cols) {
                rep.violations.push_back("edge " + detail::idx(e) + " allowed pair (" + std::to_string(a) + "," +
                                         std::to_string(b) + ") out of alphabet bounds");
            }
            if (p > 0 && !(edge.allowed[p - 1] < edge.allowed[p])) {
                rep.violations.push_back("edge " + detail::idx(e) + " allowed pairs not strictly sorted");
            }
        }
    }
    return rep;
}

inline ValidationReport validate(const MetricInstance& m) {
    ValidationReport rep;
    if (m.n < 0) {
        rep.violations.push_back("negative point count");
        return rep;
    }
    if (static_cast<int>(m.dist.size()) != m.n) {
        rep.violations.push_back("dist has " + detail::idx(m.dist.size()) + " rows, expected " + std::to_string(m.n));
        return rep;
    }
    for (int a = 0; a < m.n; ++a) {
        if (static_cast<int>(m.dist[a].size()) != m.n) {
            rep.violations.push_back("dist row " + std::to_string(a) + " has wrong width");
            return rep;
        }
    }
    for (int a = 0; a < m.n; ++a) {
        if (m.dist[a][a] != 0) rep.violations.push_back("diagonal (" + std::to_string(a) + ") nonzero");
        for (int b = 0; b < m.n; ++b) {
            if (m.dist[a][b] < 0) {
                rep.violations.push_back("negative distance (" + std::to_string(a) + "," + std::to_string(b) + ")");
            }
            if (a < b && m.dist[a][b] != m.dist[b][a]) {
                rep.violations.push_back("asymmetric (" + std::to_string(a) + "," + std::to_string(b) + ")");
            }
        }
    }
    // d(x,z) <= d(x,y) + d(y,z), reported as "triangle (x,y,z)".
    for (int x = 0; x < m.n; ++x) {
        for (int y = 0; y < m.n; ++y) {
            for (int z = 0; z < m.n; ++z) {
                if (m.dist[x][z] > m.dist[x][y] + m.dist[y][z]) {
                    rep.violations.push_back("triangle (" + std::to_string(x) + "," + std::to_string(y) + "," +
                                             std::to_string(z) + "): " + std::to_string(m.dist[x][z]) + " > " +
                                             std::to_string(m.dist[x][y]) + "+" + std::to_string(m.dist[y][z]));
                }
            }
        }
    }
    detail::check_sorted_ids(m.clients, m.n, "clients", rep);
    detail::check_sorted_ids(m.facilities, m.n, "facilities", rep);
    return rep;
}

inline ValidationReport validate(const MaxCoverInstance& inst) {
    ValidationReport rep;
    std::map<int, int> left_owner;
    std::map<int, int> right_owner;
    auto index_groups = [&](const std::vector<std::vector<int>>& groups, std::map<int, int>& owner,
                            const std::string& side) {
        for (std::size_t g = 0; g < groups.size(); ++g) {
            for (int v : groups[g]) {
                if (v < 0) rep.violations.push_back(side + " vertex " + std::to_string(v) + " negative");
                auto [it, fresh] = owner.emplace(v, static_cast<int>(g));
                if (!fresh) {
                    rep.violations.push_back(side + " vertex " + std::to_string(v) + " in groups " +
                                             std::to_string(it->second) + " and " + detail::idx(g));
                }
            }
        }
    };
    index_groups(inst.left_groups, left_owner, "left");
    index_groups(inst.right_groups, right_owner, "right");
    std::set<std::pair<int, int>> seen;
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
        auto [l, r] = inst.edges[e];
        if (!left_owner.count(l)) {
            rep.violations.push_back("edge " + detail::idx(e) + " left endpoint " + std::to_string(l) + " in no group");
        }
        if (!right_owner.count(r)) {
            rep.violations.push_back("edge " + detail::idx(e) + " right endpoint " + std::to_string(r) +
                                     " in no group");
        }
        if (!seen.insert(inst.edges[e]).second) {
            rep.violations.push_back("edge " + detail::idx(e) + " duplicated");
        }
    }
    return rep;
}

/// Throws ValidationError listing every violation when `x` is invalid.
template <class T>
void require_valid(const T& x, const std::string& what) {
    ValidationReport rep = validate(x);
    if (!rep.ok()) throw ValidationError(what + ": " + rep.joined());
}

/// max distance / min positive distance over all point pairs.
inline Rational aspect_ratio(const MetricInstance& m) {
    std::int64_t hi = 0;
    std::int64_t lo = 0;
    for (int a = 0; a < m.n; ++a) {
        for (int b = 0; b < m.n; ++b) {
            std::int64_t d = m.dist[a][b];
            if (d <= 0) continue;
            hi = std::max(hi, d);
            lo = lo == 0 ? d : std::min(lo, d);
        }
    }
    if (lo == 0) throw ParameterError("degenerate metric: no positive distance");
    return Rational(hi, lo);
}

/// Builds the metric of points on a line at the given integer positions.
inline MetricInstance line_metric(const std::vector<std::int64_t>& positions, std::vector<int> clients,
                                  std::vector<int> facilities) {
    MetricInstance m;
    m.n = static_cast<int>(positions.size());
    m.dist.assign(m.n, std::vector<std::int64_t>(m.n, 0));
    for (int a = 0; a < m.n; ++a) {
        for (int b = 0; b < m.n; ++b) {
            m.dist[a][b] = positions[a] > positions[b] ? positions[a] - positions[b] : positions[b] - positions[a];
        }
    }
    m.clients = std::move(clients);
    m.facilities = std::move(facilities);
    return m;
}

}  // namespace gapred
