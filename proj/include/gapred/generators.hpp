#pragma once

// Seeded instance generators: planted and oracle-certified coverage
// instances, integer metrics, MaxCover toys and random valued 2-CSPs.
// Every generator is a pure function of its arguments.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gapred/error.hpp"
#include "gapred/instances.hpp"
#include "gapred/oracles.hpp"
#include "gapred/rational.hpp"
#include "gapred/serialize.hpp"

namespace gapred {

/// mt19937_64 with portable bounded draws (the standard distributions are
/// implementation-defined, which would make outputs differ across libraries).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    /// Uniform in [lo, hi].
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool chance(const Rational& p) { return below(static_cast<std::uint64_t>(p.den())) < static_cast<std::uint64_t>(p.num()); }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

    /// `count` distinct values of [0, n), ascending.
    std::vector<int> sample(int n, int count) {
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 0);
        shuffle(all);
        all.resize(count);
        std::sort(all.begin(), all.end());
        return all;
    }

private:
    std::mt19937_64 eng_;
};

enum class PlantedKind { yes, no };

inline const char* to_string(PlantedKind k) { return k == PlantedKind::yes ? "YES" : "NO"; }

struct PlantedCertificate {
    PlantedKind kind = PlantedKind::yes;
    int k = 1;
    Rational tau{1};
    Rational delta{1, 2};
    /// YES: the planted sets (by color for colored systems). NO: the oracle witness.
    std::vector<int> witness;
    /// YES: size of the planted union. NO: the oracle's best covered count.
    std::int64_t covered = 0;
    /// NO: exact optimum fraction.
    Rational oracle_value;
    std::int64_t attempts = 1;
};

struct PlantedCover {
    AnySetSystem system;
    PlantedCertificate certificate;
};

struct PlantedCoverParams {
    int n_sets = 4;
    int universe_size = 6;
    int k = 2;
    Rational tau{1};
    Rational delta{1, 2};
    std::uint64_t seed = 0;
    PlantedKind kind = PlantedKind::yes;
    bool colored = false;
    std::int64_t max_attempts = 100000;
    OracleOptions oracle;
};

namespace detail {

inline std::vector<int> random_subset(Rng& rng, const std::vector<int>& pool, int size) {
    std::vector<int> v = pool;
    rng.shuffle(v);
    v.resize(std::min<std::size_t>(size, v.size()));
    std::sort(v.begin(), v.end());
    return v;
}

/// Colors: the sets in `fixed` get colors 0..k-1 in order, the rest uniform;
/// without `fixed` the first k sets of a random permutation cover every color.
inline std::vector<int> random_colors(Rng& rng, int n_sets, int k, const std::vector<int>& fixed) {
    std::vector<int> color(n_sets, -1);
    if (fixed.empty()) {
        std::vector<int> perm(n_sets);
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        for (int i = 0; i < k; ++i) color[perm[i]] = i;
    } else {
        for (int i = 0; i < k; ++i) color[fixed[i]] = i;
    }
    for (int s = 0; s < n_sets; ++s) {
        if (color[s] < 0) color[s] = static_cast<int>(rng.below(k));
    }
    return color;
}

}  // namespace detail

/// Planted YES instances and oracle-certified NO instances of k-MaxCoverage.
///
/// YES: k planted sets (random positions) partition a random target set of
/// ceil(tau m) elements; the remaining sets are random subsets of it.
/// NO: random systems whose sets have fewer than (1-delta) tau m elements are
/// drawn until the exact optimum is below (1-delta) tau.
inline PlantedCover gen_planted_cover(const PlantedCoverParams& p) {
    const int m = p.universe_size;
    if (p.k < 1 || p.k > p.n_sets) throw ParameterError("need 1 <= k <= n_sets");
    if (m < 1) throw ParameterError("universe must be non-empty");
    if (p.tau <= Rational(0) || p.tau > Rational(1)) throw ParameterError("tau must lie in (0,1]");
    Rng rng(p.seed);
    std::vector<int> universe(m);
    std::iota(universe.begin(), universe.end(), 0);
    PlantedCover out;
    PlantedCertificate& cert = out.certificate;
    cert.kind = p.kind;
    cert.k = p.k;
    cert.tau = p.tau;
    cert.delta = p.delta;

    auto finish = [&](SetSystem ss, const std::vector<int>& planted) {
        if (p.colored) {
            auto colors = detail::random_colors(rng, p.n_sets, p.k, planted);
            out.system = ColoredSetSystem{std::move(ss), std::move(colors), p.k};
        } else {
            out.system = std::move(ss);
        }
    };

    if (p.kind == PlantedKind::yes) {
        const int target = static_cast<int>((p.tau * Rational(m)).ceil());
        std::vector<int> planted_union = detail::random_subset(rng, universe, target);
        std::vector<int> planted = rng.sample(p.n_sets, p.k);
        rng.shuffle(planted);
        SetSystem ss;
        ss.universe_size = m;
        ss.sets.assign(p.n_sets, {});
        for (int e : planted_union) ss.sets[planted[rng.below(p.k)]].push_back(e);
        for (int s = 0; s < p.n_sets; ++s) {
            if (std::find(planted.begin(), planted.end(), s) != planted.end()) continue;
            ss.sets[s] = detail::random_subset(rng, planted_union, static_cast<int>(rng.range(0, target)));
        }
        cert.covered = target;
        if (p.colored) {
            cert.witness = planted;
        } else {
            cert.witness = planted;
            std::sort(cert.witness.begin(), cert.witness.end());
        }
        finish(std::move(ss), planted);
        return out;
    }

    const Rational bound = (Rational(1) - p.delta) * p.tau;
    const std::int64_t cap = (bound * Rational(m)).ceil() - 1;
    if (cap < 0) throw ParameterError("NO bound leaves no room for any set");
    for (std::int64_t attempt = 1; attempt <= p.max_attempts; ++attempt) {
        SetSystem ss;
        ss.universe_size = m;
        for (int s = 0; s < p.n_sets; ++s) {
            ss.sets.push_back(detail::random_subset(rng, universe, static_cast<int>(rng.range(0, cap))));
        }
        finish(std::move(ss), {});
        SolveResult r = opt_kmaxcov(out.system, p.k, p.oracle);
        if (r.value < bound) {
            cert.witness = r.witness;
            cert.covered = r.count;
            cert.oracle_value = r.value;
            cert.attempts = attempt;
            return out;
        }
    }
    throw RefusalError("no NO instance found after " + std::to_string(p.max_attempts) + " attempts");
}

/// Re-verifies a certificate against its system: YES by direct union
/// evaluation, NO by recomputing the exact optimum.
inline bool verify_certificate(const AnySetSystem& ss, const PlantedCertificate& cert, const OracleOptions& opt = {}) {
    const SetSystem& base = plain(ss);
    const Rational tau_m = cert.tau * Rational(base.universe_size);
    if (cert.kind == PlantedKind::yes) {
        if (static_cast<int>(cert.witness.size()) != cert.k) return false;
        if (const auto* cs = std::get_if<ColoredSetSystem>(&ss)) {
            for (int i = 0; i < cert.k; ++i) {
                if (cs->color_of.at(cert.witness[i]) != i) return false;
            }
        }
        std::int64_t covered = coverage_count(base, cert.witness);
        return covered == cert.covered && Rational(covered) >= tau_m;
    }
    SolveResult r = opt_kmaxcov(ss, cert.k, opt);
    return r.value == cert.oracle_value && r.value < (Rational(1) - cert.delta) * cert.tau;
}

inline Json certificate_json(const PlantedCertificate& c) {
    Json j{{"kind", to_string(c.kind)}, {"k", c.k},          {"tau", c.tau.str()},
           {"delta", c.delta.str()},    {"witness", c.witness}, {"covered", c.covered}};
    if (c.kind == PlantedKind::no) {
        j["oracle_value"] = c.oracle_value.str();
        j["attempts"] = c.attempts;
    }
    return j;
}

inline PlantedCertificate certificate_from_json(const Json& j) {
    PlantedCertificate c;
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind != "YES" && kind != "NO") throw ParseError("kind must be YES or NO", "/kind");
        c.kind = kind == "YES" ? PlantedKind::yes : PlantedKind::no;
        c.k = j.at("k").get<int>();
        c.tau = Rational::parse(j.at("tau").get<std::string>());
        c.delta = Rational::parse(j.at("delta").get<std::string>());
        c.witness = j.at("witness").get<std::vector<int>>();
        c.covered = j.at("covered").get<std::int64_t>();
        if (c.kind == PlantedKind::no) {
            c.oracle_value = Rational::parse(j.at("oracle_value").get<std::string>());
            c.attempts = j.at("attempts").get<std::int64_t>();
        }
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad certificate: ") + e.what(), "/");
    }
    return c;
}

/// Random set system: each element joins each set with probability `density`.
inline AnySetSystem gen_set_system(int n_sets, int universe_size, const Rational& density, std::uint64_t seed,
                                   std::optional<int> colors = std::nullopt) {
    Rng rng(seed);
    SetSystem ss;
    ss.universe_size = universe_size;
    for (int s = 0; s < n_sets; ++s) {
        std::vector<int> set;
        for (int e = 0; e < universe_size; ++e) {
            if (rng.chance(density)) set.push_back(e);
        }
        ss.sets.push_back(std::move(set));
    }
    if (!colors) return ss;
    if (*colors < 1 || *colors > n_sets) throw ParameterError("need 1 <= colors <= n_sets");
    auto color_of = detail::random_colors(rng, n_sets, *colors, {});
    return ColoredSetSystem{std::move(ss), std::move(color_of), *colors};
}

enum class MetricShape { line, grid, random };

struct MetricParams {
    int n = 3;
    MetricShape shape = MetricShape::line;
    std::int64_t d_max = 10;
    std::uint64_t seed = 0;
    /// Client / facility counts; all points when unset.
    std::optional<int> clients;
    std::optional<int> facilities;
};

/// Integer metrics: points on a line, on an L1 lattice, or the shortest-path
/// completion of a complete graph with random edge lengths in [1, d_max].
inline MetricInstance gen_metric(const MetricParams& p) {
    if (p.n < 2) throw ParameterError("metric needs at least 2 points");
    if (p.d_max < 1) throw ParameterError("d_max must be positive");
    Rng rng(p.seed);
    MetricInstance m;
    m.n = p.n;
    m.dist.assign(p.n, std::vector<std::int64_t>(p.n, 0));
    if (p.shape == MetricShape::line) {
        std::vector<std::int64_t> pos(p.n);
        for (auto& x : pos) x = rng.range(0, p.d_max);
        m = line_metric(pos, {}, {});
    } else if (p.shape == MetricShape::grid) {
        int w = 1;
        while (w * w < p.n) ++w;
        std::int64_t scale = std::max<std::int64_t>(1, p.d_max / std::max(1, 2 * (w - 1)));
        for (int a = 0; a < p.n; ++a) {
            for (int b = 0; b < p.n; ++b) {
                std::int64_t dx = std::abs(a % w - b % w);
                std::int64_t dy = std::abs(a / w - b / w);
                m.dist[a][b] = scale * (dx + dy);
            }
        }
    } else {
        for (int a = 0; a < p.n; ++a) {
            for (int b = a + 1; b < p.n; ++b) m.dist[a][b] = m.dist[b][a] = rng.range(1, p.d_max);
        }
        for (int via = 0; via < p.n; ++via) {
            for (int a = 0; a < p.n; ++a) {
                for (int b = 0; b < p.n; ++b) {
                    m.dist[a][b] = std::min(m.dist[a][b], m.dist[a][via] + m.dist[via][b]);
                }
            }
        }
    }
    int nc = p.clients.value_or(p.n);
    int nf = p.facilities.value_or(p.n);
    if (nc < 1 || nc > p.n || nf < 1 || nf > p.n) throw ParameterError("client/facility counts out of range");
    m.clients = rng.sample(p.n, nc);
    m.facilities = rng.sample(p.n, nf);
    return m;
}

struct MaxCoverParams {
    int k = 2;
    int ell = 2;
    /// |V_j| for every left group.
    int left_size = 2;
    /// |W_i| for every right group.
    int right_size = 2;
    Rational density{1, 2};
    std::uint64_t seed = 0;
    bool planted = false;
};

/// Left vertices are 0..k*left_size-1 and right vertices 0..ell*right_size-1,
/// grouped consecutively. A planted instance gets a random labeling and, for
/// every right group, a random vertex adjacent to all labels.
inline MaxCoverInstance gen_maxcover(const MaxCoverParams& p) {
    if (p.k < 1 || p.ell < 1 || p.left_size < 1 || p.right_size < 1) throw ParameterError("empty MaxCover shape");
    Rng rng(p.seed);
    MaxCoverInstance inst;
    for (int j = 0; j < p.k; ++j) {
        std::vector<int> g(p.left_size);
        std::iota(g.begin(), g.end(), j * p.left_size);
        inst.left_groups.push_back(std::move(g));
    }
    for (int i = 0; i < p.ell; ++i) {
        std::vector<int> g(p.right_size);
        std::iota(g.begin(), g.end(), i * p.right_size);
        inst.right_groups.push_back(std::move(g));
    }
    std::set<std::pair<int, int>> edges;
    for (int v = 0; v < p.k * p.left_size; ++v) {
        for (int w = 0; w < p.ell * p.right_size; ++w) {
            if (rng.chance(p.density)) edges.insert({v, w});
        }
    }
    if (p.planted) {
        std::vector<int> labeling;
        for (const auto& g : inst.left_groups) labeling.push_back(g[rng.below(g.size())]);
        for (const auto& g : inst.right_groups) {
            int w = g[rng.below(g.size())];
            for (int v : labeling) edges.insert({v, w});
        }
    }
    inst.edges.assign(edges.begin(), edges.end());
    return inst;
}

struct ValuedCspParams {
    int variables = 3;
    int max_alphabet = 3;
    int edges = 3;
    /// Table entries are multiples of 1/denominator in [0, 1].
    int denominator = 6;
    std::uint64_t seed = 0;
};

/// Random valued 2-CSP on distinct variable pairs (u < v).
inline ValuedTwoCsp gen_valued_csp(const ValuedCspParams& p) {
    const int pairs = p.variables * (p.variables - 1) / 2;
    if (p.variables < 2 || p.edges < 1 || p.edges > pairs) throw ParameterError("edge count out of range");
    Rng rng(p.seed);
    ValuedTwoCsp csp;
    for (int i = 0; i < p.variables; ++i) {
        csp.variables.push_back({"v" + std::to_string(i), static_cast<int>(rng.range(1, p.max_alphabet))});
    }
    std::vector<std::pair<int, int>> all;
    for (int u = 0; u < p.variables; ++u) {
        for (int v = u + 1; v < p.variables; ++v) all.emplace_back(u, v);
    }
    rng.shuffle(all);
    all.resize(p.edges);
    std::sort(all.begin(), all.end());
    for (auto [u, v] : all) {
        ValuedEdge e{u, v, {}};
        for (int a = 0; a < csp.variables[u].alphabet_size; ++a) {
            std::vector<Rational> row;
            for (int b = 0; b < csp.variables[v].alphabet_size; ++b) {
                row.emplace_back(rng.range(0, p.denominator), p.denominator);
            }
            e.table.push_back(std::move(row));
        }
        csp.edges.push_back(std::move(e));
    }
    return csp;
}

}  // namespace gapred
