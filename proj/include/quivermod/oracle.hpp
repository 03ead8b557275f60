#pragma once

// Brute-force ground truth over small prime fields: enumerate every
// representation of a dimension vector, read off subrepresentations,
// stability, HN filtrations and point counts, and certify the counting
// formulas against them.

#include "quivermod/counting.hpp"
#include "quivermod/fq.hpp"
#include "quivermod/hn.hpp"
#include "quivermod/quiver.hpp"

#include <map>
#include <thread>
#include <vector>

namespace quivermod {

// A representation over F_q: one d_target x d_source matrix per arrow.
class FqRep {
public:
    FqRep(const Quiver& q, DimVector d, int field)
        : quiver_(&q), d_(std::move(d)), field_(field) {
        if (d_.size() != q.num_vertices()) throw std::invalid_argument("FqRep: vertex mismatch");
        if (!d_.is_nonnegative()) throw std::invalid_argument("FqRep: negative dimensions");
        for (const Arrow& a : q.arrows()) mats_.emplace_back(field_, d_[a.to], d_[a.from]);
    }

    const Quiver& quiver() const { return *quiver_; }
    const DimVector& dim() const { return d_; }
    int field() const { return field_; }
    FqMatrix& matrix(int arrow) { return mats_[static_cast<size_t>(arrow)]; }
    const FqMatrix& matrix(int arrow) const { return mats_[static_cast<size_t>(arrow)]; }

private:
    const Quiver* quiver_;
    DimVector d_;
    int field_;
    std::vector<FqMatrix> mats_;
};

// A subrepresentation witness: one subspace index per vertex into
// all_subspaces(q, d_i), together with the dimension vector.
struct SubrepWitness {
    DimVector dims;
    std::vector<int> subspace_index;
};

enum class StabilityStatus { Stable, StrictlySemistable, Unstable };

namespace detail {

inline long long subspace_tuple_budget(const FqRep& m, long long guard) {
    long long tuples = 1;
    for (int i = 0; i < m.quiver().num_vertices(); ++i) {
        tuples *= static_cast<long long>(all_subspaces(m.field(), m.dim()[i]).size());
        if (tuples > guard) throw SizeGuardError("subrep enumeration guard exceeded");
    }
    return tuples;
}

}  // namespace detail

// All subrepresentations of M: tuples (U_i) with M_a(U_i) <= U_j for every
// arrow. Exhaustive over row-echelon subspace representatives.
inline std::vector<SubrepWitness> subrep_witnesses(const FqRep& m, long long guard = 1 << 22,
                                                   bool reverse_order = false) {
    const Quiver& q = m.quiver();
    detail::subspace_tuple_budget(m, guard);
    std::vector<const std::vector<FqSubspace>*> spaces;
    for (int i = 0; i < q.num_vertices(); ++i) spaces.push_back(&all_subspaces(m.field(), m.dim()[i]));

    std::vector<SubrepWitness> out;
    std::vector<int> pick(static_cast<size_t>(q.num_vertices()), 0);
    std::function<void(int)> rec = [&](int vertex) {
        if (vertex == q.num_vertices()) {
            for (int a = 0; a < static_cast<int>(q.arrows().size()); ++a) {
                const Arrow& arrow = q.arrows()[static_cast<size_t>(a)];
                const FqSubspace& src = (*spaces[static_cast<size_t>(arrow.from)])
                    [static_cast<size_t>(pick[static_cast<size_t>(arrow.from)])];
                const FqSubspace& dst = (*spaces[static_cast<size_t>(arrow.to)])
                    [static_cast<size_t>(pick[static_cast<size_t>(arrow.to)])];
                for (int r = 0; r < src.dim(); ++r)
                    if (!dst.contains(m.matrix(a).apply(src.basis_row(r)))) return;
            }
            SubrepWitness w;
            std::vector<int> dims;
            for (int i = 0; i < q.num_vertices(); ++i)
                dims.push_back((*spaces[static_cast<size_t>(i)])[static_cast<size_t>(pick[static_cast<size_t>(i)])].dim());
            w.dims = DimVector(std::move(dims));
            w.subspace_index = pick;
            out.push_back(std::move(w));
            return;
        }
        const int count = static_cast<int>(spaces[static_cast<size_t>(vertex)]->size());
        for (int s = 0; s < count; ++s) {
            pick[static_cast<size_t>(vertex)] = reverse_order ? count - 1 - s : s;
            rec(vertex + 1);
        }
    };
    rec(0);
    return out;
}

inline std::vector<DimVector> subrep_dimvectors(const FqRep& m, long long guard = 1 << 22) {
    std::vector<DimVector> dims;
    for (const SubrepWitness& w : subrep_witnesses(m, guard)) dims.push_back(w.dims);
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
    return dims;
}

inline StabilityStatus stability_status(const FqRep& m, const Stability& theta,
                                        long long guard = 1 << 22) {
    if (m.dim().is_zero()) throw std::invalid_argument("stability_status: zero representation");
    Rat mu = theta.slope(m.dim());
    bool strictly = false;
    for (const DimVector& e : subrep_dimvectors(m, guard)) {
        if (e.is_zero() || e == m.dim()) continue;
        Rat s = theta.slope(e);
        if (s > mu) return StabilityStatus::Unstable;
        if (s == mu) strictly = true;
    }
    return strictly ? StabilityStatus::StrictlySemistable : StabilityStatus::Stable;
}

namespace detail {

// The quotient representation M/U for a subrepresentation witness.
inline FqRep quotient_rep(const FqRep& m, const SubrepWitness& w) {
    const Quiver& q = m.quiver();
    const int field = m.field();
    std::vector<FqMatrix> basis_inv;  // change-of-basis per vertex, columns = (U basis, complement)
    std::vector<FqMatrix> basis;
    std::vector<int> subdim;
    for (int i = 0; i < q.num_vertices(); ++i) {
        const FqSubspace& u =
            all_subspaces(field, m.dim()[i])[static_cast<size_t>(w.subspace_index[static_cast<size_t>(i)])];
        const int n = m.dim()[i];
        FqMatrix c(field, n, n);
        for (int r = 0; r < u.dim(); ++r)
            for (int j = 0; j < n; ++j) c.at(j, r) = u.basis.at(r, j);
        int col = u.dim();
        for (int j = 0; j < n; ++j) {
            bool pivot = false;
            for (int p : u.pivots)
                if (p == j) pivot = true;
            if (!pivot) c.at(j, col++) = 1;
        }
        subdim.push_back(u.dim());
        basis.push_back(c);
        basis_inv.push_back(c.inverse());
    }
    std::vector<int> qd;
    for (int i = 0; i < q.num_vertices(); ++i) qd.push_back(m.dim()[i] - subdim[static_cast<size_t>(i)]);
    FqRep out(q, DimVector(std::move(qd)), field);
    for (int a = 0; a < static_cast<int>(q.arrows().size()); ++a) {
        const Arrow& arrow = q.arrows()[static_cast<size_t>(a)];
        FqMatrix changed = basis_inv[static_cast<size_t>(arrow.to)] * m.matrix(a) *
                           basis[static_cast<size_t>(arrow.from)];
        const int r0 = subdim[static_cast<size_t>(arrow.to)];
        const int c0 = subdim[static_cast<size_t>(arrow.from)];
        for (int r = r0; r < m.dim()[arrow.to]; ++r)
            for (int c = c0; c < m.dim()[arrow.from]; ++c)
                out.matrix(a).at(r - r0, c - c0) = changed.at(r, c);
    }
    return out;
}

}  // namespace detail

// The unique HN filtration as the chain 0 = D_0 < D_1 < ... < D_s = d of
// subrepresentation dimension vectors. The scss is found as the subspace
// tuple of maximal slope, then maximal dimension; uniqueness is asserted.
inline std::vector<DimVector> hn_filtration(const FqRep& m, const Stability& theta,
                                            long long guard = 1 << 22, bool reverse_order = false) {
    std::vector<DimVector> chain{DimVector::zero(m.quiver().num_vertices())};
    if (m.dim().is_zero()) return chain;

    FqRep current = m;
    DimVector offset = DimVector::zero(m.quiver().num_vertices());
    while (!current.dim().is_zero()) {
        auto witnesses = subrep_witnesses(current, guard, reverse_order);
        const SubrepWitness* best = nullptr;
        Rat best_slope;
        int duplicates = 0;
        for (const SubrepWitness& w : witnesses) {
            if (w.dims.is_zero()) continue;
            Rat s = theta.slope(w.dims);
            if (!best || s > best_slope || (s == best_slope && w.dims.total() > best->dims.total())) {
                best = &w;
                best_slope = s;
                duplicates = 1;
            } else if (s == best_slope && w.dims.total() == best->dims.total()) {
                ++duplicates;
            }
        }
        if (duplicates != 1) throw std::logic_error("hn_filtration: scss is not unique");
        offset = offset + best->dims;
        chain.push_back(offset);
        if (best->dims == current.dim()) break;
        current = detail::quotient_rep(current, *best);
    }
    return chain;
}

inline std::vector<DimVector> hn_type(const FqRep& m, const Stability& theta,
                                      long long guard = 1 << 22, bool reverse_order = false) {
    auto chain = hn_filtration(m, theta, guard, reverse_order);
    std::vector<DimVector> type;
    for (size_t k = 1; k < chain.size(); ++k) type.push_back(chain[k] - chain[k - 1]);
    return type;
}

// dim Hom and dim Ext^1 as kernel and cokernel of
// (f_i)_i -> (N_a f_i - f_j M_a)_a.
inline std::pair<int, int> hom_ext_dims(const FqRep& m, const FqRep& n) {
    const Quiver& q = m.quiver();
    if (&q != &n.quiver() && !(q == n.quiver()))
        throw std::invalid_argument("hom_ext_dims: different quivers");
    if (m.field() != n.field()) throw std::invalid_argument("hom_ext_dims: different fields");

    int dom = 0, cod = 0;
    std::vector<int> dom_offset{0}, cod_offset{0};
    for (int i = 0; i < q.num_vertices(); ++i) {
        dom += m.dim()[i] * n.dim()[i];
        dom_offset.push_back(dom);
    }
    for (const Arrow& a : q.arrows()) {
        cod += m.dim()[a.from] * n.dim()[a.to];
        cod_offset.push_back(cod);
    }

    FqMatrix big(m.field(), cod, dom);
    // Basis of the domain: (vertex i, row r < n_i, col c < m_i) for f_i[r,c].
    for (int i = 0; i < q.num_vertices(); ++i)
        for (int r = 0; r < n.dim()[i]; ++r)
            for (int c = 0; c < m.dim()[i]; ++c) {
                int col = dom_offset[static_cast<size_t>(i)] + r * m.dim()[i] + c;
                for (int a = 0; a < static_cast<int>(q.arrows().size()); ++a) {
                    const Arrow& arrow = q.arrows()[static_cast<size_t>(a)];
                    // (N_a f_i)[r', c'] picks f at i = arrow.from; (f_j M_a) at j = arrow.to.
                    if (arrow.from == i) {
                        // contributes N_a[r'', r] * f[r, c] to entry (r'', c) of arrow block
                        for (int rr = 0; rr < n.dim()[arrow.to]; ++rr) {
                            int row = cod_offset[static_cast<size_t>(a)] + c * n.dim()[arrow.to] + rr;
                            big.at(row, col) = static_cast<uint8_t>(
                                (big.at(row, col) + n.matrix(a).at(rr, r)) % m.field());
                        }
                    }
                    if (arrow.to == i) {
                        // contributes -f[r, c] * M_a[c, c''] to entry (r, c'') of arrow block
                        for (int cc = 0; cc < m.dim()[arrow.from]; ++cc) {
                            int row = cod_offset[static_cast<size_t>(a)] + cc * n.dim()[arrow.to] + r;
                            big.at(row, col) = static_cast<uint8_t>(
                                (big.at(row, col) + (m.field() - m.matrix(a).at(c, cc)) % m.field()) %
                                m.field());
                        }
                    }
                }
            }
    int rank = big.rank();
    return {dom - rank, cod - rank};
}

// The 0/1 representation carried by an oriented cycle; simple iff the cycle
// is primitive.
inline FqRep cycle_rep(const Quiver& q, const Cycle& cycle, int field) {
    const int s = cycle.length();
    if (s == 0) throw std::invalid_argument("cycle_rep: empty cycle");
    // Position k of the cycle sits at the source of its (k+1)-st arrow.
    std::vector<int> at(static_cast<size_t>(s));
    for (int k = 0; k < s; ++k)
        at[static_cast<size_t>(k)] = q.arrows()[static_cast<size_t>(cycle.arrows[static_cast<size_t>(k)])].from;
    DimVector d = cycle.dim_vector(q);
    FqRep rep(q, d, field);
    // index of position k within its vertex, by increasing k
    std::vector<int> slot(static_cast<size_t>(s), 0);
    for (int k = 0; k < s; ++k) {
        int c = 0;
        for (int l = 0; l < k; ++l)
            if (at[static_cast<size_t>(l)] == at[static_cast<size_t>(k)]) ++c;
        slot[static_cast<size_t>(k)] = c;
    }
    for (int k = 0; k < s; ++k) {
        int a = cycle.arrows[static_cast<size_t>(k)];
        int from_slot = slot[static_cast<size_t>(k)];
        int to_slot = slot[static_cast<size_t>((k + 1) % s)];
        rep.matrix(a).at(to_slot, from_slot) = 1;
    }
    return rep;
}

struct PointCounts {
    long long r_points = 0;
    long long sst_points = 0;
    long long st_points = 0;
    Int group_order;
    std::map<std::vector<DimVector>, long long> census;
};

namespace detail {

inline long long rep_space_points(const Quiver& q, const DimVector& d, int field, long long budget) {
    long long entries = 0;
    for (const Arrow& a : q.arrows()) entries += static_cast<long long>(d[a.from]) * d[a.to];
    long long points = 1;
    for (long long k = 0; k < entries; ++k) {
        if (points > budget / field + 1) throw SizeGuardError("point_counts: representation space too large");
        points *= field;
        if (points > budget) throw SizeGuardError("point_counts: representation space too large");
    }
    return points;
}

inline void decode_rep(FqRep& rep, long long index) {
    const Quiver& q = rep.quiver();
    const int field = rep.field();
    for (int a = 0; a < static_cast<int>(q.arrows().size()); ++a) {
        FqMatrix& m = rep.matrix(a);
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) {
                m.at(r, c) = static_cast<uint8_t>(index % field);
                index /= field;
            }
    }
}

}  // namespace detail

// Visit every representation point; the visitor receives (index, rep).
template <typename F>
void enumerate_reps(const Quiver& q, const DimVector& d, int field, long long budget, F&& visit) {
    long long points = detail::rep_space_points(q, d, field, budget);
    FqRep rep(q, d, field);
    for (long long idx = 0; idx < points; ++idx) {
        detail::decode_rep(rep, idx);
        visit(idx, rep);
    }
}

// Exhaustive counts plus the census of points by HN type. Enumeration splits
// across threads over disjoint index ranges; totals are deterministic.
inline PointCounts point_counts(const Quiver& q, const Stability& theta, const DimVector& d, int field,
                                long long budget = 1 << 22, int threads = 1) {
    if (d.size() != q.num_vertices() || theta.size() != q.num_vertices())
        throw std::invalid_argument("point_counts: vertex mismatch");
    if (d.is_zero() || !d.is_nonnegative())
        throw std::invalid_argument("point_counts: d must be non-zero and non-negative");
    const long long points = detail::rep_space_points(q, d, field, budget);
    {
        FqRep probe(q, d, field);
        detail::subspace_tuple_budget(probe, budget);
    }

    const int workers = std::max(1, std::min<int>(threads, 16));
    std::vector<PointCounts> partial(static_cast<size_t>(workers));
    auto work = [&](int w) {
        PointCounts& pc = partial[static_cast<size_t>(w)];
        FqRep rep(q, d, field);
        for (long long idx = w; idx < points; idx += workers) {
            detail::decode_rep(rep, idx);
            ++pc.r_points;
            auto type = hn_type(rep, theta, budget);
            ++pc.census[type];
            if (type.size() == 1) {
                ++pc.sst_points;
                if (stability_status(rep, theta, budget) == StabilityStatus::Stable) ++pc.st_points;
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    PointCounts total;
    total.group_order = group_order(q, d, field);
    for (const PointCounts& pc : partial) {
        total.r_points += pc.r_points;
        total.sst_points += pc.sst_points;
        total.st_points += pc.st_points;
        for (const auto& [type, count] : pc.census) total.census[type] += count;
    }
    return total;
}

}  // namespace quivermod
