#pragma once

// The Harder-Narasimhan counting kernel: the rational function P_d(q) by two
// independent routes (the closed-form sum over HN types and the recursion
// peeling off semistable strata), and Betti polynomials in the coprime case.

#include "quivermod/poly.hpp"
#include "quivermod/quiver.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <vector>

namespace quivermod {

// |R_d|/|G_d| = q^{-<d,d>} prod_i prod_{j=1}^{d_i} (1 - q^{-j})^{-1}.
inline RatFuncQ reps_over_group(const Quiver& q, const DimVector& d) {
    RatFuncQ r = RatFuncQ::q_power(-euler_form(q, d, d));
    for (int i = 0; i < q.num_vertices(); ++i)
        for (int j = 1; j <= d[i]; ++j) {
            // (1 - q^{-j})^{-1} = q^j / (q^j - 1)
            PolyQ qj = PolyQ::monomial(j, 1);
            r = r * RatFuncQ(qj, qj - PolyQ(1));
        }
    return r;
}

namespace detail {
// Per-quiver memo for reps_over_group; the direct HN sum hits the same
// vectors many times.
class RepsOverGroupCache {
public:
    explicit RepsOverGroupCache(const Quiver& q) : quiver_(q) {}
    const RatFuncQ& get(const DimVector& d) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo_.find(d);
        if (it == memo_.end()) it = memo_.emplace(d, reps_over_group(quiver_, d)).first;
        return it->second;
    }

private:
    const Quiver& quiver_;
    std::mutex mutex_;
    std::map<DimVector, RatFuncQ> memo_;
};
}  // namespace detail

// |GL_n(F_q)| = prod_{j=0}^{n-1} (q^n - q^j).
inline Int gl_order(int n, long q) {
    Int qn = int_pow(Int(q), static_cast<unsigned long>(n));
    Int r = 1;
    Int qj = 1;
    for (int j = 0; j < n; ++j) {
        r *= qn - qj;
        qj *= q;
    }
    return r;
}

inline Int group_order(const Quiver& quiver, const DimVector& d, long q) {
    Int r = 1;
    for (int i = 0; i < quiver.num_vertices(); ++i) r *= gl_order(d[i], q);
    return r;
}

enum class HnMethod { Direct, Recursive };

// An ordered tuple of non-zero dimension vectors summing to d. The two
// admissibility conditions (prefix-slope form and strictly-decreasing-slope
// form) are checked by the callers that enumerate them.
struct HNDecomposition {
    std::vector<DimVector> parts;
};

// Shared memo for P_d over a fixed (Q, Theta). Write-once under a mutex:
// concurrent fills may duplicate work but never disagree.
class HnContext {
public:
    HnContext(Quiver quiver, Stability theta)
        : quiver_(std::move(quiver)), theta_(std::move(theta)), rg_(quiver_) {
        if (theta_.size() != quiver_.num_vertices())
            throw std::invalid_argument("HnContext: vertex mismatch");
    }

    const Quiver& quiver() const { return quiver_; }
    const Stability& theta() const { return theta_; }

    RatFuncQ rational(const DimVector& d, HnMethod method = HnMethod::Recursive) {
        if (d.size() != quiver_.num_vertices()) throw std::invalid_argument("hn_rational: vertex mismatch");
        if (d.is_zero() || !d.is_nonnegative())
            throw std::invalid_argument("hn_rational: d must be non-zero and non-negative");
        return method == HnMethod::Recursive ? recursive(d) : direct(d);
    }

    // (q-1) P_d(q) as an integer polynomial; Betti numbers of M_d^{Theta-st}
    // when d is coprime for Theta. Integrality failure is a contract
    // violation, not bad input.
    PolyQ betti_coprime(const DimVector& d) {
        if (!theta_coprime(quiver_, theta_, d))
            throw std::invalid_argument("betti_coprime: d is not coprime for Theta");
        RatFuncQ p = (RatFuncQ(PolyQ::variable()) - RatFuncQ(1)) * rational(d);
        return require_integer_polynomial(p, "betti_coprime");
    }

private:
    Quiver quiver_;
    Stability theta_;
    detail::RepsOverGroupCache rg_;
    std::mutex mutex_;
    std::map<DimVector, RatFuncQ> memo_;

    // Closed form: sum over tuples (d^1..d^s) of non-zero vectors summing to
    // d with mu(d^1+..+d^k) > mu(d) for all k < s; each term is
    // (-1)^{s-1} q^{-sum_{k<l} <d^l,d^k>} prod_k |R_{d^k}|/|G_{d^k}|.
    RatFuncQ direct(const DimVector& d) {
        Rat mu = theta_.slope(d);
        RatFuncQ total(0);
        std::vector<DimVector> nonzero;
        for_each_below(d, [&](const DimVector& e) {
            if (!e.is_zero()) nonzero.push_back(e);
        });
        // DFS over parts; carries the running twist exponent and product.
        std::function<void(const DimVector&, int, long long, const RatFuncQ&)> rec =
            [&](const DimVector& prefix, int parts, long long twist, const RatFuncQ& prod) {
                for (const DimVector& e : nonzero) {
                    DimVector sum = prefix + e;
                    if (!DimVector::leq(sum, d)) continue;
                    // Exponent grows by sum_{k<=l} <d^l, d^k> restricted to the
                    // new last part: <e, prefix> + <e, e> is folded into the
                    // q-power; the diagonal <e,e> lives inside |R_e|/|G_e|.
                    long long t = twist + euler_form(quiver_, e, prefix);
                    RatFuncQ p = prod * rg_.get(e);
                    if (sum == d) {
                        RatFuncQ term = RatFuncQ::q_power(-t) * p;
                        total = (parts % 2 == 0) ? total + term : total - term;
                    } else if (theta_.slope(sum) > mu) {
                        rec(sum, parts + 1, t, p);
                    }
                }
            };
        rec(DimVector::zero(d.size()), 0, 0, RatFuncQ(1));
        return total;
    }

    // Recursion: P_d = |R_d|/|G_d| - sum over decompositions of length >= 2
    // with strictly decreasing slopes of q^{-sum_{k<l}<d^l,d^k>} prod_k P_{d^k}.
    RatFuncQ recursive(const DimVector& d) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = memo_.find(d);
            if (it != memo_.end()) return it->second;
        }
        RatFuncQ result = rg_.get(d);
        std::vector<DimVector> nonzero;
        for_each_below(d, [&](const DimVector& e) {
            if (!e.is_zero() && e != d) nonzero.push_back(e);
        });
        std::function<void(const DimVector&, const Rat*, int, long long, const RatFuncQ&)> rec =
            [&](const DimVector& prefix, const Rat* prev_slope, int parts, long long twist,
                const RatFuncQ& prod) {
                DimVector rest = d - prefix;
                // Close the tuple with the remainder when admissible.
                if (parts >= 1 && theta_.slope(rest) < *prev_slope) {
                    long long t = twist + euler_form(quiver_, rest, prefix);
                    result -= RatFuncQ::q_power(-t) * prod * recursive(rest);
                }
                for (const DimVector& e : nonzero) {
                    if (!DimVector::leq(e, rest) || e == rest) continue;
                    Rat mu_e = theta_.slope(e);
                    if (prev_slope && !(mu_e < *prev_slope)) continue;
                    // A strictly-decreasing tail must exist: prune by slope.
                    if (!(mu_e > theta_.slope(rest - e))) continue;
                    rec(prefix + e, &mu_e, parts + 1,
                        twist + euler_form(quiver_, e, prefix), prod * recursive(e));
                }
            };
        rec(DimVector::zero(d.size()), nullptr, 0, 0, RatFuncQ(1));
        std::lock_guard<std::mutex> lock(mutex_);
        return memo_.emplace(d, std::move(result)).first->second;
    }
};

inline RatFuncQ hn_rational(const Quiver& q, const Stability& theta, const DimVector& d,
                            HnMethod method = HnMethod::Recursive) {
    HnContext ctx(q, theta);
    return ctx.rational(d, method);
}

inline PolyQ betti_coprime(const Quiver& q, const Stability& theta, const DimVector& d) {
    HnContext ctx(q, theta);
    return ctx.betti_coprime(d);
}

}  // namespace quivermod
