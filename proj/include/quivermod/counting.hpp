#pragma once

// Counting polynomials of stable, semistable and simple moduli via the
// Exp/Log machinery, Euler characteristics, primitive-cycle counts, and the
// N[q-1]-positivity scan.

#include "quivermod/errors.hpp"
#include "quivermod/hn.hpp"
#include "quivermod/series.hpp"

#include <set>
#include <string>
#include <vector>

namespace quivermod {

struct CountingReport {
    DimVector d;
    Stability theta;
    PolyQ p_stable;
    PolyQ p_semistable;
    Int euler_stable;
    Int euler_semistable;
    bool positive_in_qminus1 = false;
};

namespace detail {

inline Int integer_eval_at_one(const PolyQ& p) {
    Rat v = p.eval(Rat(1));
    if (!is_integral(v)) throw IntegralityError("Euler characteristic is not an integer");
    return v.get_num();
}

}  // namespace detail

// Solves the two generating identities over the slope class of d:
//   (sum P_e t^e) o Exp((1/(1-q)) sum P^st_e t^e) = 1
//   sum P^sst_e t^e = Exp(sum P^st_e t^e)
// The stable series comes out in closed form: invert, Log, scale by (1-q).
inline CountingReport counting_report(const Quiver& q, const Stability& theta, const DimVector& d,
                                      HnContext* shared = nullptr) {
    if (d.size() != q.num_vertices()) throw std::invalid_argument("counting_report: vertex mismatch");
    if (d.is_zero() || !d.is_nonnegative())
        throw std::invalid_argument("counting_report: d must be non-zero and non-negative");

    HnContext local(q, theta);
    HnContext& ctx = shared ? *shared : local;

    const int bound = static_cast<int>(d.total());
    SlopeClass cls{theta, theta.slope(d)};
    TwistedSeries p_series(q, bound, cls);
    p_series.set(DimVector::zero(q.num_vertices()), RatFuncQ(1));
    for (const DimVector& e : dimvectors_up_to(q.num_vertices(), bound))
        if (!e.is_zero() && cls.contains(e)) p_series.set(e, ctx.rational(e));

    TwistedSeries inv = p_series.inverse(ProductKind::Twisted);
    RatFuncQ one_minus_q = RatFuncQ(1) - RatFuncQ::variable();
    TwistedSeries stable_series = one_minus_q * inv.plethystic_log();
    TwistedSeries sst_series = stable_series.plethystic_exp();

    CountingReport report;
    report.d = d;
    report.theta = theta;
    report.p_stable = require_integer_polynomial(stable_series.coefficient(d), "stable_count_poly");
    report.p_semistable =
        require_integer_polynomial(sst_series.coefficient(d), "sst_count_poly");
    report.euler_stable = detail::integer_eval_at_one(report.p_stable);
    report.euler_semistable = detail::integer_eval_at_one(report.p_semistable);
    report.positive_in_qminus1 = is_positive_in_qminus1(report.p_stable);
    return report;
}

inline PolyQ stable_count_poly(const Quiver& q, const Stability& theta, const DimVector& d) {
    return counting_report(q, theta, d).p_stable;
}

inline PolyQ sst_count_poly(const Quiver& q, const Stability& theta, const DimVector& d) {
    return counting_report(q, theta, d).p_semistable;
}

// Theta = 0: counts simple representations.
inline PolyQ simple_count_poly(const Quiver& q, const DimVector& d) {
    return stable_count_poly(q, Stability::zero(q.num_vertices()), d);
}

// An oriented cycle stored as its arrow sequence in traversal order,
// canonicalized to the lexicographically minimal rotation under the global
// arrow order.
struct Cycle {
    std::vector<int> arrows;

    int length() const { return static_cast<int>(arrows.size()); }

    static std::vector<int> min_rotation(const std::vector<int>& w) {
        const size_t n = w.size();
        std::vector<int> best = w;
        std::vector<int> cur(n);
        for (size_t r = 1; r < n; ++r) {
            for (size_t k = 0; k < n; ++k) cur[k] = w[(k + r) % n];
            if (cur < best) best = cur;
        }
        return best;
    }

    Cycle canonical() const { return Cycle{min_rotation(arrows)}; }

    // Primitive: not cyclically equivalent to a proper power, i.e. no proper
    // period divides the word.
    bool is_primitive() const {
        const int n = length();
        for (int p = 1; p < n; ++p) {
            if (n % p != 0) continue;
            bool periodic = true;
            for (int k = 0; k < n && periodic; ++k)
                if (arrows[static_cast<size_t>(k)] != arrows[static_cast<size_t>((k + p) % n)])
                    periodic = false;
            if (periodic) return false;
        }
        return true;
    }

    DimVector dim_vector(const Quiver& q) const {
        DimVector d = DimVector::zero(q.num_vertices());
        for (int a : arrows) ++d[q.arrows()[static_cast<size_t>(a)].from];
        return d;
    }
};

// All cyclic-equivalence classes of cycles with the given visit counts,
// returned in canonical form.
inline std::vector<Cycle> enumerate_cycles(const Quiver& q, const DimVector& d,
                                           long long guard = 1 << 22) {
    if (d.size() != q.num_vertices()) throw std::invalid_argument("enumerate_cycles: vertex mismatch");
    if (d.is_zero() || !d.is_nonnegative())
        throw std::invalid_argument("enumerate_cycles: d must be non-zero and non-negative");
    std::set<std::vector<int>> seen;
    long long visited = 0;
    DimVector budget = d;
    std::vector<int> walk;
    std::function<void(int, int)> rec = [&](int start, int at) {
        if (++visited > guard) throw SizeGuardError("enumerate_cycles: guard exceeded");
        if (budget.is_zero()) {
            if (at == start) seen.insert(Cycle::min_rotation(walk));
            return;
        }
        if (budget[at] == 0) return;
        --budget[at];
        for (int a = 0; a < static_cast<int>(q.arrows().size()); ++a) {
            const Arrow& arrow = q.arrows()[static_cast<size_t>(a)];
            if (arrow.from != at) continue;
            walk.push_back(a);
            rec(start, arrow.to);
            walk.pop_back();
        }
        ++budget[at];
    };
    for (int v : d.support()) rec(v, v);
    std::vector<Cycle> out;
    for (const auto& w : seen) out.push_back(Cycle{w});
    return out;
}

inline long long primitive_cycle_classes(const Quiver& q, const DimVector& d,
                                         long long guard = 1 << 22) {
    long long n = 0;
    for (const Cycle& c : enumerate_cycles(q, d, guard))
        if (c.is_primitive()) ++n;
    return n;
}

// Does the Taylor expansion of the simple-count polynomial at q=1 have
// vanishing constant term and linear term equal to the number of primitive
// cycle classes? Coordinate vectors are a different regime (constant term 1)
// and are rejected unless allow_unit is set, in which case only the linear
// term is compared.
inline bool euler_linear_term_check(const Quiver& q, const DimVector& d, bool allow_unit = false) {
    if (d.is_unit() && !allow_unit)
        throw std::invalid_argument("euler_linear_term_check: coordinate vector");
    PolyQ p = simple_count_poly(q, d);
    std::vector<Rat> taylor = expand_at_one(RatFuncQ(p), 1);
    Rat expected(static_cast<long>(primitive_cycle_classes(q, d)));
    if (d.is_unit()) return taylor[1] == expected;
    return taylor[0] == 0 && taylor[1] == expected;
}

struct ConjectureScanRow {
    DimVector d;
    PolyQ poly;
    bool positive = false;
};

// Reports N[q-1]-positivity of every simple-count polynomial in the box
// 0 < d <= d_max. A report, never an assertion: the conjecture is open.
inline std::vector<ConjectureScanRow> conjecture_scan(const Quiver& q, const DimVector& d_max) {
    std::vector<ConjectureScanRow> rows;
    HnContext ctx(q, Stability::zero(q.num_vertices()));
    for_each_below(d_max, [&](const DimVector& d) {
        if (d.is_zero()) return;
        CountingReport r = counting_report(q, ctx.theta(), d, &ctx);
        rows.push_back({d, r.p_stable, r.positive_in_qminus1});
    });
    return rows;
}

}  // namespace quivermod
