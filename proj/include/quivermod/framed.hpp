#pragma once

// Smooth models and noncommutative Hilbert schemes: the framed-quiver
// construction, non-emptiness, multipartition Betti numbers, n-forest
// enumeration and counting, the generating-function fixed point, and the
// smooth-model Poincare series.

#include "quivermod/errors.hpp"
#include "quivermod/hn.hpp"
#include "quivermod/series.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

namespace quivermod {

struct FramedData {
    Quiver base;
    DimVector d;
    Stability theta;
    DimVector framing;
    long long scale = 1;  // the "sufficiently large" N

    Quiver extended;       // one extra vertex, framing.at(i) arrows into each i
    DimVector d_ext;       // (d, 1)
    Stability theta_ext;   // (N*Theta_i, Theta(d)+1)
    int framing_vertex = 0;
};

inline long long default_framing_scale(const DimVector& d, const Stability& theta) {
    long long m = 0;
    for (int i = 0; i < theta.size(); ++i) m = std::max(m, static_cast<long long>(std::abs(theta[i])));
    long long total = d.total();
    return 1 + 2 * total * total * (1 + m);
}

inline FramedData build_framed(const Quiver& q, const DimVector& d, const Stability& theta,
                               const DimVector& n, long long scale = 0) {
    if (d.size() != q.num_vertices() || theta.size() != q.num_vertices() || n.size() != q.num_vertices())
        throw std::invalid_argument("build_framed: vertex mismatch");
    if (!d.is_nonnegative() || !n.is_nonnegative())
        throw std::invalid_argument("build_framed: negative entries");
    if (n.is_zero()) throw std::invalid_argument("build_framed: framing must be non-zero");
    if (scale == 0) scale = default_framing_scale(d, theta);

    FramedData f;
    f.base = q;
    f.d = d;
    f.theta = theta;
    f.framing = n;
    f.scale = scale;

    std::vector<std::string> names = q.vertex_names();
    std::string inf = "inf";
    while (std::find(names.begin(), names.end(), inf) != names.end()) inf += "'";
    names.push_back(inf);
    f.framing_vertex = q.num_vertices();

    std::vector<Arrow> arrows = q.arrows();
    for (int i = 0; i < q.num_vertices(); ++i)
        for (int k = 0; k < n[i]; ++k) arrows.push_back({f.framing_vertex, i});
    f.extended = Quiver(std::move(names), std::move(arrows));

    std::vector<int> dd = d.entries();
    dd.push_back(1);
    f.d_ext = DimVector(std::move(dd));

    std::vector<int> tt(static_cast<size_t>(q.num_vertices() + 1), 0);
    for (int i = 0; i < q.num_vertices(); ++i) {
        long long v = scale * theta[i];
        if (v > std::numeric_limits<int>::max() || v < std::numeric_limits<int>::min())
            throw std::invalid_argument("build_framed: framing scale overflows stability entries");
        tt[static_cast<size_t>(i)] = static_cast<int>(v);
    }
    long long infty = theta.value(d) + 1;
    if (infty > std::numeric_limits<int>::max() || infty < std::numeric_limits<int>::min())
        throw std::invalid_argument("build_framed: Theta(d)+1 overflows");
    tt[static_cast<size_t>(f.framing_vertex)] = static_cast<int>(infty);
    f.theta_ext = Stability(std::move(tt));

    if (!theta_coprime(f.extended, f.theta_ext, f.d_ext))
        throw std::logic_error("build_framed: extended dimension vector is not coprime");
    return f;
}

// Hilb_{d,n}(Q) is non-empty iff n_i >= <d,i> for all i and every vertex of
// supp(d) is reachable from supp(n) inside supp(d) (the empty path counts;
// framing sources outside supp(d) generate nothing).
inline bool hilb_nonempty(const Quiver& q, const DimVector& d, const DimVector& n) {
    if (d.size() != q.num_vertices() || n.size() != q.num_vertices())
        throw std::invalid_argument("hilb_nonempty: vertex mismatch");
    for (int i = 0; i < q.num_vertices(); ++i) {
        DimVector ei = DimVector::unit(q.num_vertices(), i);
        if (euler_form(q, d, ei) > n[i]) return false;
    }
    auto mask = d.support_mask();
    std::vector<bool> reached(static_cast<size_t>(q.num_vertices()), false);
    std::vector<int> stack;
    for (int j : n.support())
        if (mask[static_cast<size_t>(j)]) {
            reached[static_cast<size_t>(j)] = true;
            stack.push_back(j);
        }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const Arrow& a : q.arrows())
            if (a.from == v && mask[static_cast<size_t>(a.to)] && !reached[static_cast<size_t>(a.to)]) {
                reached[static_cast<size_t>(a.to)] = true;
                stack.push_back(a.to);
            }
    }
    for (int i : d.support())
        if (!reached[static_cast<size_t>(i)]) return false;
    return true;
}

// Per-vertex weakly decreasing tuple of length d_i; the index convention for
// the membership condition treats lambda^i_0 as +infinity.
struct Multipartition {
    std::vector<std::vector<int>> rows;  // rows[i] has length d_i

    long long weight() const {
        long long w = 0;
        for (const auto& r : rows)
            for (int x : r) w += x;
        return w;
    }
};

namespace detail {

// lambda^i_{d_i-e_i} < n_i - <e,i> for some vertex i, for every 0 <= e < d.
inline bool multipartition_admissible(const Quiver& q, const DimVector& d, const DimVector& n,
                                      const Multipartition& lambda) {
    bool ok = true;
    for_each_below(d, [&](const DimVector& e) {
        if (!ok || e == d) return;
        bool witness = false;
        for (int i = 0; i < q.num_vertices() && !witness; ++i) {
            int idx = d[i] - e[i];
            if (idx < 1) continue;  // lambda^i_0 = +infinity
            long long bound = n[i] - euler_form(q, e, DimVector::unit(q.num_vertices(), i));
            if (lambda.rows[static_cast<size_t>(i)][static_cast<size_t>(idx - 1)] < bound)
                witness = true;
        }
        if (!witness) ok = false;
    });
    return ok;
}

}  // namespace detail

// Poincare polynomial q^{n.d - <d,d>} sum_{lambda in S_{d,n}} q^{-|lambda|},
// by exhaustive enumeration of the admissible multipartitions.
inline PolyQ hilb_betti(const Quiver& q, const DimVector& d, const DimVector& n) {
    if (d.size() != q.num_vertices() || n.size() != q.num_vertices())
        throw std::invalid_argument("hilb_betti: vertex mismatch");
    if (!d.is_nonnegative() || !n.is_nonnegative())
        throw std::invalid_argument("hilb_betti: negative entries");
    if (d.is_zero()) return PolyQ(1);

    long long nd = 0;
    for (int i = 0; i < q.num_vertices(); ++i) nd += static_cast<long long>(n[i]) * d[i];
    const long long top = nd - euler_form(q, d, d);

    // First-row bounds from the e = d - e_i instances of the condition: only
    // vertex i can witness there, so lambda^i_1 <= n_i - <d-e_i,i> - 1.
    std::vector<long long> bound(static_cast<size_t>(q.num_vertices()), 0);
    for (int i : d.support()) {
        DimVector ei = DimVector::unit(q.num_vertices(), i);
        bound[static_cast<size_t>(i)] = n[i] - euler_form(q, d - ei, ei) - 1;
        if (bound[static_cast<size_t>(i)] < 0) return PolyQ();  // S_{d,n} is empty
    }

    std::vector<Rat> coeffs(static_cast<size_t>(top) + 1, Rat(0));
    Multipartition lambda;
    lambda.rows.resize(static_cast<size_t>(q.num_vertices()));
    for (int i = 0; i < q.num_vertices(); ++i)
        lambda.rows[static_cast<size_t>(i)].resize(static_cast<size_t>(d[i]), 0);

    std::function<void(int, int, int)> rec = [&](int vertex, int row, int cap) {
        if (vertex == q.num_vertices()) {
            if (!detail::multipartition_admissible(q, d, n, lambda)) return;
            long long degree = top - lambda.weight();
            if (degree < 0)
                throw std::logic_error("hilb_betti: admissible multipartition above the top degree");
            coeffs[static_cast<size_t>(degree)] += 1;
            return;
        }
        if (row == d[vertex]) {
            rec(vertex + 1, 0, 0);
            return;
        }
        int hi = row == 0 ? static_cast<int>(bound[static_cast<size_t>(vertex)]) : cap;
        for (int v = 0; v <= hi; ++v) {
            lambda.rows[static_cast<size_t>(vertex)][static_cast<size_t>(row)] = v;
            rec(vertex, row + 1, v);
        }
    };
    rec(0, 0, 0);
    return PolyQ(std::move(coeffs));
}

namespace detail {

// Memoized tree counts: trees of paths from `vertex` with visit vector
// exactly `budget`.
class ForestCounter {
public:
    explicit ForestCounter(const Quiver& q) : quiver_(q) {}

    Int trees(int vertex, const DimVector& budget) {
        if (budget.is_zero()) return 1;
        if (budget[vertex] == 0) return 0;
        auto key = std::make_pair(vertex, budget);
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        DimVector rest = budget - DimVector::unit(quiver_.num_vertices(), vertex);
        std::vector<int> children;
        for (const Arrow& a : quiver_.arrows())
            if (a.from == vertex) children.push_back(a.to);
        Int value = tuple_count(children, 0, rest);
        std::lock_guard<std::mutex> lock(mutex_);
        return memo_.emplace(key, std::move(value)).first->second;
    }

    // Tuples of trees, one per listed root, with visit vectors summing to budget.
    Int tuple_count(const std::vector<int>& roots, size_t from, const DimVector& budget) {
        if (from == roots.size()) return budget.is_zero() ? 1 : 0;
        if (from + 1 == roots.size()) return trees(roots[from], budget);
        Int total = 0;
        for_each_below(budget, [&](const DimVector& part) {
            Int left = trees(roots[from], part);
            if (left == 0) return;
            total += left * tuple_count(roots, from + 1, budget - part);
        });
        return total;
    }

private:
    const Quiver& quiver_;
    std::mutex mutex_;
    std::map<std::pair<int, DimVector>, Int> memo_;
};

}  // namespace detail

inline Int count_forests(const Quiver& q, const DimVector& d, const DimVector& n) {
    if (d.size() != q.num_vertices() || n.size() != q.num_vertices())
        throw std::invalid_argument("count_forests: vertex mismatch");
    if (!d.is_nonnegative() || !n.is_nonnegative())
        throw std::invalid_argument("count_forests: negative entries");
    detail::ForestCounter counter(q);
    std::vector<int> roots;
    for (int i = 0; i < q.num_vertices(); ++i)
        for (int k = 0; k < n[i]; ++k) roots.push_back(i);
    return counter.tuple_count(roots, 0, d);
}

// A forest: one predecessor-closed path tree per framing slot. Paths are
// arrow-index sequences in traversal order, listed in the total order of the
// cell parametrization; the corona lists the immediate extensions that fall
// outside the tree.
struct Forest {
    struct Slot {
        int vertex = 0;
        int copy = 0;
        std::vector<std::vector<int>> paths;
        std::vector<std::vector<int>> corona;
    };
    std::vector<Slot> slots;
};

namespace detail {

// Global arrow order: (source, target, declaration rank within the pair).
inline std::vector<int> arrow_order_keys(const Quiver& q) {
    std::vector<int> key(q.arrows().size());
    std::vector<int> idx(q.arrows().size());
    for (size_t a = 0; a < q.arrows().size(); ++a) idx[a] = static_cast<int>(a);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        const Arrow& x = q.arrows()[static_cast<size_t>(a)];
        const Arrow& y = q.arrows()[static_cast<size_t>(b)];
        return std::tie(x.from, x.to) < std::tie(y.from, y.to);
    });
    for (size_t r = 0; r < idx.size(); ++r) key[static_cast<size_t>(idx[r])] = static_cast<int>(r);
    return key;
}

struct PathLess {
    const std::vector<int>* keys;
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
        size_t m = std::min(a.size(), b.size());
        for (size_t k = 0; k < m; ++k) {
            int ka = (*keys)[static_cast<size_t>(a[k])];
            int kb = (*keys)[static_cast<size_t>(b[k])];
            if (ka != kb) return ka < kb;
        }
        return a.size() < b.size();
    }
};

inline void enumerate_trees(const Quiver& q, int vertex, const DimVector& budget,
                            std::vector<std::vector<std::vector<int>>>& out, long long guard) {
    // Trees are path lists; the empty tree is the single tree of budget 0.
    if (budget.is_zero()) {
        out.push_back({});
        return;
    }
    if (budget[vertex] == 0) return;
    DimVector rest = budget - DimVector::unit(q.num_vertices(), vertex);
    std::vector<int> child_arrows;
    for (int a = 0; a < static_cast<int>(q.arrows().size()); ++a)
        if (q.arrows()[static_cast<size_t>(a)].from == vertex) child_arrows.push_back(a);

    // Distribute `rest` over the child subtrees.
    std::function<void(size_t, const DimVector&, std::vector<std::vector<int>>)> rec =
        [&](size_t ci, const DimVector& remaining, std::vector<std::vector<int>> acc) {
            if (ci == child_arrows.size()) {
                if (!remaining.is_zero()) return;
                acc.push_back({});  // the root path
                out.push_back(std::move(acc));
                if (static_cast<long long>(out.size()) > guard)
                    throw SizeGuardError("enumerate_forests: guard exceeded");
                return;
            }
            int arrow = child_arrows[ci];
            int target = q.arrows()[static_cast<size_t>(arrow)].to;
            for_each_below(remaining, [&](const DimVector& part) {
                std::vector<std::vector<std::vector<int>>> subtrees;
                enumerate_trees(q, target, part, subtrees, guard);
                for (auto& sub : subtrees) {
                    auto next = acc;
                    for (auto& p : sub) {
                        std::vector<int> shifted;
                        shifted.reserve(p.size() + 1);
                        shifted.push_back(arrow);
                        shifted.insert(shifted.end(), p.begin(), p.end());
                        next.push_back(std::move(shifted));
                    }
                    rec(ci + 1, remaining - part, next);
                }
            });
        };
    rec(0, rest, {});
}

}  // namespace detail

inline std::vector<Forest> enumerate_forests(const Quiver& q, const DimVector& d, const DimVector& n,
                                             long long max_enumerate = 100000) {
    if (d.size() != q.num_vertices() || n.size() != q.num_vertices())
        throw std::invalid_argument("enumerate_forests: vertex mismatch");
    if (!d.is_nonnegative() || !n.is_nonnegative())
        throw std::invalid_argument("enumerate_forests: negative entries");
    {
        Int total = count_forests(q, d, n);
        if (total > max_enumerate)
            throw SizeGuardError("enumerate_forests: " + total.get_str() + " forests exceed the guard of " +
                                 std::to_string(max_enumerate));
    }
    auto keys = detail::arrow_order_keys(q);
    detail::PathLess less{&keys};

    struct SlotId {
        int vertex;
        int copy;
    };
    std::vector<SlotId> slot_ids;
    for (int i = 0; i < q.num_vertices(); ++i)
        for (int k = 0; k < n[i]; ++k) slot_ids.push_back({i, k + 1});

    std::vector<Forest> forests;
    std::vector<std::vector<std::vector<int>>> chosen(slot_ids.size());
    std::function<void(size_t, const DimVector&)> rec = [&](size_t s, const DimVector& remaining) {
        if (s == slot_ids.size()) {
            if (!remaining.is_zero()) return;
            Forest f;
            for (size_t k = 0; k < slot_ids.size(); ++k) {
                Forest::Slot slot;
                slot.vertex = slot_ids[k].vertex;
                slot.copy = slot_ids[k].copy;
                slot.paths = chosen[k];
                std::sort(slot.paths.begin(), slot.paths.end(), less);
                // Corona: one-arrow extensions of tree paths that left the tree.
                for (const auto& p : slot.paths) {
                    int terminal = slot.vertex;
                    if (!p.empty()) terminal = q.arrows()[static_cast<size_t>(p.back())].to;
                    for (int a = 0; a < static_cast<int>(q.arrows().size()); ++a) {
                        if (q.arrows()[static_cast<size_t>(a)].from != terminal) continue;
                        auto ext = p;
                        ext.push_back(a);
                        if (!std::binary_search(slot.paths.begin(), slot.paths.end(), ext, less))
                            slot.corona.push_back(std::move(ext));
                    }
                }
                std::sort(slot.corona.begin(), slot.corona.end(), less);
                f.slots.push_back(std::move(slot));
            }
            forests.push_back(std::move(f));
            return;
        }
        for_each_below(remaining, [&](const DimVector& part) {
            std::vector<std::vector<std::vector<int>>> trees;
            detail::enumerate_trees(q, slot_ids[s].vertex, part, trees, max_enumerate);
            for (auto& t : trees) {
                chosen[s] = std::move(t);
                rec(s + 1, remaining - part);
            }
        });
    };
    rec(0, d);
    return forests;
}

// Solves F_i = 1 + t_i prod_{a:i->j} F_j by fixed-point iteration and
// returns F_n = prod_i F_i^{n_i}, truncated at total degree N. Coefficients
// are integers (Euler characteristics of the Hilbert schemes).
inline TwistedSeries forest_genfun(const Quiver& q, const DimVector& n, int truncation) {
    if (n.size() != q.num_vertices()) throw std::invalid_argument("forest_genfun: vertex mismatch");
    if (truncation < 0) throw std::invalid_argument("forest_genfun: negative truncation");
    std::vector<TwistedSeries> f(static_cast<size_t>(q.num_vertices()),
                                 TwistedSeries::unit(q, truncation));
    for (int pass = 0; pass <= truncation; ++pass) {
        std::vector<TwistedSeries> next;
        next.reserve(f.size());
        for (int i = 0; i < q.num_vertices(); ++i) {
            TwistedSeries prod = TwistedSeries::unit(q, truncation);
            for (const Arrow& a : q.arrows())
                if (a.from == i) prod = mul(prod, f[static_cast<size_t>(a.to)], ProductKind::Ordinary);
            // multiply by t_i
            TwistedSeries ti(q, truncation);
            DimVector ei = DimVector::unit(q.num_vertices(), i);
            if (ei.total() <= truncation) ti.set(ei, RatFuncQ(1));
            next.push_back(TwistedSeries::unit(q, truncation) + mul(ti, prod, ProductKind::Ordinary));
        }
        bool stable = true;
        for (size_t i = 0; i < f.size(); ++i)
            if (next[i].terms() != f[i].terms()) stable = false;
        f = std::move(next);
        if (stable) break;
    }
    TwistedSeries result = TwistedSeries::unit(q, truncation);
    for (int i = 0; i < q.num_vertices(); ++i)
        for (int k = 0; k < n[i]; ++k)
            result = mul(result, f[static_cast<size_t>(i)], ProductKind::Ordinary);
    return result;
}

// Poincare polynomial of the smooth model M_{d,n}^Theta(Q), read off from
// (sum P_e t^e)^{-1} o (sum q^{n.e} P_e t^e) over the slope class of d.
inline PolyQ smooth_model_poincare(const Quiver& q, const Stability& theta, const DimVector& d,
                                   const DimVector& n, HnContext* shared = nullptr) {
    if (d.size() != q.num_vertices() || n.size() != q.num_vertices())
        throw std::invalid_argument("smooth_model_poincare: vertex mismatch");
    if (d.is_zero()) throw std::invalid_argument("smooth_model_poincare: d must be non-zero");
    if (n.is_zero()) throw std::invalid_argument("smooth_model_poincare: framing must be non-zero");

    HnContext local(q, theta);
    HnContext& ctx = shared ? *shared : local;
    const int bound = static_cast<int>(d.total());
    SlopeClass cls{theta, theta.slope(d)};

    TwistedSeries a(q, bound, cls), b(q, bound, cls);
    a.set(DimVector::zero(q.num_vertices()), RatFuncQ(1));
    b.set(DimVector::zero(q.num_vertices()), RatFuncQ(1));
    for (const DimVector& e : dimvectors_up_to(q.num_vertices(), bound)) {
        if (e.is_zero() || !cls.contains(e)) continue;
        RatFuncQ pe = ctx.rational(e);
        long long ne = 0;
        for (int i = 0; i < q.num_vertices(); ++i) ne += static_cast<long long>(n[i]) * e[i];
        a.set(e, pe);
        b.set(e, RatFuncQ::q_power(ne) * pe);
    }
    TwistedSeries result = mul(a.inverse(ProductKind::Twisted), b, ProductKind::Twisted);
    return require_integer_polynomial(result.coefficient(d), "smooth_model_poincare");
}

}  // namespace quivermod
