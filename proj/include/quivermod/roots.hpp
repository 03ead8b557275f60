#pragma once

// Kac's root combinatorics: simple reflections, the fundamental domain, and
// classification of dimension vectors as real roots, imaginary roots or
// non-roots.

#include "quivermod/quiver.hpp"

#include <cassert>
#include <string>
#include <vector>

namespace quivermod {

// s_i(d) = d - (d,i)i with (d,e) the symmetrized Euler form. Undefined at
// loop vertices. May leave the non-negative cone; callers handle that.
inline DimVector reflect(const Quiver& q, int vertex, const DimVector& d) {
    if (vertex < 0 || vertex >= q.num_vertices()) throw std::invalid_argument("reflect: bad vertex");
    if (q.loops_at(vertex) > 0) throw std::invalid_argument("reflect: vertex carries a loop");
    DimVector ei = DimVector::unit(q.num_vertices(), vertex);
    long long pairing = symmetrized_euler_form(q, d, ei);
    return d - static_cast<int>(pairing) * ei;
}

enum class RootVerdict { Real, Imaginary, NotARoot };

struct RootClassification {
    RootVerdict verdict = RootVerdict::NotARoot;
    // Vertices reflected at, in order; reflects d to a coordinate vector
    // (real) or into the fundamental domain (imaginary).
    std::vector<int> witness;
    DimVector final_vector;
    // 1 - <d,d>, present for imaginary verdicts.
    long long parameters = 0;
};

inline bool in_fundamental_domain(const Quiver& q, const DimVector& d) {
    if (d.is_zero() || !d.is_nonnegative()) return false;
    for (int i = 0; i < q.num_vertices(); ++i) {
        DimVector ei = DimVector::unit(q.num_vertices(), i);
        if (symmetrized_euler_form(q, d, ei) > 0) return false;
    }
    return q.connected_on(d.support_mask());
}

// Kac's theorem is stated for quivers without oriented cycles; pass
// allow_cycles to classify anyway (every vector with connected support is
// then trivially in the fundamental domain for loop quivers).
inline RootClassification classify_root(const Quiver& q, DimVector d, bool allow_cycles = false) {
    if (!allow_cycles && q.has_oriented_cycle())
        throw std::invalid_argument("classify_root: quiver has an oriented cycle");
    if (d.size() != q.num_vertices()) throw std::invalid_argument("classify_root: vertex mismatch");
    if (d.is_zero()) throw std::invalid_argument("classify_root: zero vector");
    if (!d.is_nonnegative()) throw std::invalid_argument("classify_root: mixed-sign vector");

    RootClassification out;
    long long previous_total = d.total() + 1;
    while (true) {
        // Termination metric: total dimension strictly decreases each pass.
        assert(d.total() < previous_total);
        previous_total = d.total();

        if (d.is_unit()) {
            out.verdict = RootVerdict::Real;
            out.final_vector = d;
            return out;
        }
        if (in_fundamental_domain(q, d)) {
            out.verdict = RootVerdict::Imaginary;
            out.final_vector = d;
            out.parameters = moduli_dimension(q, d);
            return out;
        }
        int pick = -1;
        for (int i = 0; i < q.num_vertices() && pick < 0; ++i)
            if (q.loops_at(i) == 0 &&
                symmetrized_euler_form(q, d, DimVector::unit(q.num_vertices(), i)) > 0)
                pick = i;
        if (pick < 0) {
            // Non-positive pairing everywhere but disconnected support.
            out.verdict = RootVerdict::NotARoot;
            out.final_vector = d;
            return out;
        }
        d = reflect(q, pick, d);
        out.witness.push_back(pick);
        if (!d.is_nonnegative()) {
            out.verdict = RootVerdict::NotARoot;
            out.final_vector = d;
            return out;
        }
    }
}

}  // namespace quivermod
