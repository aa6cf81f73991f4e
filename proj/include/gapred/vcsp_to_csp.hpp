#pragma once

// Valued 2-CSP to a family of weighted 2-CSPs (a Turing reduction).
//
// Each edge value is quantized to a level theta_e in {0..B}; a level vector
// theta whose total clears the filter becomes one weighted 2-CSP with
// weights theta_e and constraints "f_e >= gamma * theta_e / B". The family is
// exposed as a lazy stream, since it has up to (B+1)^l members.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gapred/detail/max_sum.hpp"
#include "gapred/error.hpp"
#include "gapred/instances.hpp"
#include "gapred/oracles.hpp"
#include "gapred/rational.hpp"

namespace gapred {

using BigInt = boost::multiprecision::cpp_int;

/// Derived quantities of the reduction for given (l, c, s).
struct ThetaParams {
    Rational c;
    Rational s;
    Rational epsilon;  ///< (c/s - 1) / (c/s + 1)
    Rational gamma;    ///< l * s
    std::int64_t B = 0;  ///< ceil(2 l / epsilon)
    int ell = 0;
    Rational filter_total;  ///< lower bound on sum_e theta_e, B / (1 - epsilon)
    std::int64_t min_total = 0;  ///< ceil(filter_total)
};

inline ThetaParams theta_params(int ell, const Rational& c, const Rational& s) {
    if (ell < 1) throw ParameterError("valued 2-CSP has no edges");
    if (s <= Rational(0)) throw ParameterError("s must be positive");
    if (c <= s) throw ParameterError("c=" + c.str() + " must exceed s=" + s.str());
    ThetaParams p;
    p.c = c;
    p.s = s;
    p.ell = ell;
    Rational ratio = c / s;
    p.epsilon = (ratio - Rational(1)) / (ratio + Rational(1));
    p.gamma = Rational(ell) * s;
    p.B = (Rational(2 * static_cast<std::int64_t>(ell)) / p.epsilon).ceil();
    // (1/l) sum theta >= (B/gamma) * s/(1-eps) is sum theta >= B/(1-eps) since gamma = l s.
    p.filter_total = Rational(p.B) / (Rational(1) - p.epsilon);
    p.min_total = p.filter_total.ceil();
    return p;
}

struct ThetaInstance {
    std::vector<std::int64_t> theta;
    /// Edges with theta_e = 0 carry no weight and are left out.
    WeightedTwoCsp csp;
};

struct ThetaOptions {
    /// Largest level grid (B+1)^l that exhaustive consumption agrees to walk.
    std::uint64_t grid_cap = std::uint64_t{1} << 26;
    OracleOptions oracle;
};

/// Outcome of the aggregate decision "short_circuit or some emitted
/// instance has value >= 1 - epsilon".
struct ThetaDecision {
    bool yes = false;
    /// short_circuit | witness | exhaustive | bound
    std::string mode;
    /// Largest emitted value seen (exhaustive) or an upper bound on it (bound).
    Rational emitted_value;
    std::optional<std::vector<std::int64_t>> theta;
};

class ThetaStream {
public:
    ThetaStream(ValuedTwoCsp vcsp, const Rational& c, const Rational& s, ThetaOptions opt = {})
        : vcsp_(std::move(vcsp)), params_(theta_params(static_cast<int>(vcsp_.edges.size()), c, s)), opt_(opt) {
        for (const auto& e : vcsp_.edges) {
            const int cols = vcsp_.variables[e.v].alphabet_size;
            detail::ScoreEdge lv{e.u, e.v, std::vector<std::int64_t>(e.table.size() * cols, 0)};
            for (std::size_t a = 0; a < e.table.size(); ++a) {
                for (int b = 0; b < cols; ++b) {
                    const Rational& f = e.table[a][b];
                    if (f >= params_.gamma) short_circuit_ = true;
                    lv.table[a * cols + b] = (Rational(params_.B) * f / params_.gamma).floor();
                }
            }
            levels_.push_back(std::move(lv));
        }
    }

    const ThetaParams& params() const noexcept { return params_; }
    const ValuedTwoCsp& source() const noexcept { return vcsp_; }

    /// Some single entry reaches gamma, so one edge alone already yields value s.
    bool short_circuit() const noexcept { return short_circuit_; }

    /// (B+1)^l.
    BigInt grid_size() const {
        return boost::multiprecision::pow(BigInt(params_.B + 1), static_cast<unsigned>(params_.ell));
    }

    /// Number of emitted instances (0 under short_circuit).
    BigInt size() const {
        if (short_circuit_) return 0;
        // below[t]: level vectors over the edges so far with total t < min_total.
        const std::int64_t T = params_.min_total;
        if (T <= 0) return grid_size();
        std::vector<BigInt> below(T, 0);
        below[0] = 1;
        for (int e = 0; e < params_.ell; ++e) {
            std::vector<BigInt> next(T, 0);
            BigInt window = 0;
            for (std::int64_t t = 0; t < T; ++t) {
                window += below[t];
                if (t - params_.B - 1 >= 0) window -= below[t - params_.B - 1];
                next[t] = window;
            }
            below = std::move(next);
        }
        BigInt under = 0;
        for (const auto& x : below) under += x;
        return grid_size() - under;
    }

    /// True when theta is in range and passes the filter.
    bool contains(const std::vector<std::int64_t>& theta) const {
        if (short_circuit_ || static_cast<int>(theta.size()) != params_.ell) return false;
        std::int64_t total = 0;
        for (auto t : theta) {
            if (t < 0 || t > params_.B) return false;
            total += t;
        }
        return total >= params_.min_total;
    }

    /// The weighted 2-CSP for a level vector; theta must be contained.
    ThetaInstance instance_for(const std::vector<std::int64_t>& theta) const {
        if (!contains(theta)) throw ParameterError("level vector is not part of the stream");
        ThetaInstance out;
        out.theta = theta;
        out.csp.variables = vcsp_.variables;
        for (int e = 0; e < params_.ell; ++e) {
            if (theta[e] == 0) continue;
            const auto& lv = levels_[e];
            const int cols = vcsp_.variables[lv.v].alphabet_size;
            WeightedEdge we{lv.u, lv.v, theta[e], {}};
            for (std::size_t idx = 0; idx < lv.table.size(); ++idx) {
                if (lv.table[idx] >= theta[e]) {
                    we.allowed.emplace_back(static_cast<int>(idx / cols), static_cast<int>(idx % cols));
                }
            }
            out.csp.edges.push_back(std::move(we));
        }
        return out;
    }

    /// Calls `fn` on every emitted instance in lexicographic theta order until
    /// it returns false. Refuses when the grid exceeds the cap.
    void for_each(const std::function<bool(const ThetaInstance&)>& fn) const {
        if (short_circuit_) return;
        BigInt grid = grid_size();
        if (grid > opt_.grid_cap) {
            throw RefusalError("level grid (B+1)^l = " + std::to_string(params_.B + 1) + "^" +
                               std::to_string(params_.ell) + " exceeds cap " + std::to_string(opt_.grid_cap));
        }
        std::vector<std::int64_t> theta(params_.ell, 0);
        std::int64_t total = 0;
        while (true) {
            if (total >= params_.min_total && !fn(instance_for(theta))) return;
            int pos = params_.ell - 1;
            while (pos >= 0 && theta[pos] == params_.B) {
                total -= theta[pos];
                theta[pos] = 0;
                --pos;
            }
            if (pos < 0) return;
            ++theta[pos];
            ++total;
        }
    }

    /// max over assignments psi of sum_e floor(B f_e(psi) / gamma), with the
    /// lexicographically smallest maximiser.
    detail::MaxSumResult best_level_total() const {
        std::vector<int> alphabet;
        for (const auto& v : vcsp_.variables) alphabet.push_back(v.alphabet_size);
        return detail::max_sum(alphabet, levels_, opt_.oracle.budget);
    }

    /// Levels theta^psi_e = floor(B f_e(psi) / gamma) of an assignment.
    std::vector<std::int64_t> levels_of(const Assignment& psi) const {
        std::vector<std::int64_t> out;
        for (const auto& lv : levels_) {
            const int cols = vcsp_.variables[lv.v].alphabet_size;
            out.push_back(lv.table[static_cast<std::size_t>(psi.at(lv.u)) * cols + psi.at(lv.v)]);
        }
        return out;
    }

    /// An emitted, fully satisfiable instance if one exists.
    ///
    /// An instance theta is fully satisfied by psi exactly when theta <= the
    /// levels of psi coordinate-wise, so one exists iff the best level total
    /// clears the filter; the levels of the maximiser are then emitted.
    std::optional<std::pair<ThetaInstance, Assignment>> find_satisfiable() const {
        if (short_circuit_) return std::nullopt;
        auto best = best_level_total();
        if (best.best < params_.min_total) return std::nullopt;
        return std::make_pair(instance_for(levels_of(best.witness)), best.witness);
    }

    /// Upper bound on the value of every emitted instance: min(1, A / min_total)
    /// where A is the best level total. Every satisfied edge has theta_e at most
    /// its level, while the total weight is at least min_total.
    Rational emitted_value_bound() const {
        auto best = best_level_total();
        if (best.best >= params_.min_total) return Rational(1);
        return Rational(best.best, params_.min_total);
    }

    /// Decides the aggregate question. Exhaustive when the grid fits the
    /// cap; otherwise via a satisfiable witness or the value bound, refusing
    /// when neither settles it.
    ThetaDecision decide() const {
        ThetaDecision d;
        const Rational target = Rational(1) - params_.epsilon;
        if (short_circuit_) {
            d.yes = true;
            d.mode = "short_circuit";
            d.emitted_value = Rational(1);
            return d;
        }
        if (grid_size() <= opt_.grid_cap) {
            d.mode = "exhaustive";
            d.emitted_value = Rational(0);
            for_each([&](const ThetaInstance& inst) {
                Rational v = val_csp(inst.csp, opt_.oracle).value;
                if (v > d.emitted_value || !d.theta) {
                    d.emitted_value = v;
                    d.theta = inst.theta;
                }
                if (v >= target) d.yes = true;
                return d.emitted_value < Rational(1);
            });
            return d;
        }
        if (auto sat = find_satisfiable()) {
            d.yes = true;
            d.mode = "witness";
            d.emitted_value = Rational(1);
            d.theta = sat->first.theta;
            return d;
        }
        d.mode = "bound";
        d.emitted_value = emitted_value_bound();
        if (d.emitted_value >= target) {
            throw RefusalError("level grid too large to enumerate and the value bound " + d.emitted_value.str() +
                               " does not settle the decision");
        }
        return d;
    }

private:
    ValuedTwoCsp vcsp_;
    ThetaParams params_;
    ThetaOptions opt_;
    std::vector<detail::ScoreEdge> levels_;
    bool short_circuit_ = false;
};

/// Builds the lazy stream; validates the source first.
inline ThetaStream vcsp_to_csp(const ValuedTwoCsp& vcsp, const Rational& c, const Rational& s,
                               ThetaOptions opt = {}) {
    require_valid(vcsp, "vcsp");
    return ThetaStream(vcsp, c, s, opt);
}

}  // namespace gapred
