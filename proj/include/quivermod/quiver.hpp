#pragma once

// Quivers, dimension vectors and stabilities: the shared vocabulary of every
// other header. Vertices carry opaque string names with a fixed declared
// order; all per-vertex data (dimension vectors, stabilities) aligns to that
// order.

#include "quivermod/rational.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace quivermod {

struct Arrow {
    int from = 0;
    int to = 0;
    bool operator==(const Arrow&) const = default;
};

class Quiver {
public:
    Quiver() = default;
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
        : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
        for (size_t i = 0; i < vertices_.size(); ++i)
            for (size_t j = i + 1; j < vertices_.size(); ++j)
                if (vertices_[i] == vertices_[j])
                    throw std::invalid_argument("Quiver: duplicate vertex name " + vertices_[i]);
        for (const Arrow& a : arrows_)
            if (a.from < 0 || a.from >= num_vertices() || a.to < 0 || a.to >= num_vertices())
                throw std::invalid_argument("Quiver: arrow endpoint is not a declared vertex");
    }

    static Quiver from_names(std::vector<std::string> vertices,
                             const std::vector<std::pair<std::string, std::string>>& arrows) {
        Quiver q(std::move(vertices), {});
        for (const auto& [s, t] : arrows) q.arrows_.push_back({q.vertex_index(s), q.vertex_index(t)});
        return q;
    }

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    const std::vector<std::string>& vertex_names() const { return vertices_; }
    const std::string& vertex_name(int i) const { return vertices_.at(static_cast<size_t>(i)); }
    const std::vector<Arrow>& arrows() const { return arrows_; }

    int vertex_index(std::string_view name) const {
        for (size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i] == name) return static_cast<int>(i);
        throw std::invalid_argument("Quiver: unknown vertex \"" + std::string(name) + "\"");
    }

    int loops_at(int i) const {
        int n = 0;
        for (const Arrow& a : arrows_)
            if (a.from == i && a.to == i) ++n;
        return n;
    }

    bool has_oriented_cycle() const {
        // DFS three-color over the arrow relation.
        enum { White, Grey, Black };
        std::vector<int> color(static_cast<size_t>(num_vertices()), White);
        std::function<bool(int)> visit = [&](int v) {
            color[static_cast<size_t>(v)] = Grey;
            for (const Arrow& a : arrows_)
                if (a.from == v) {
                    if (color[static_cast<size_t>(a.to)] == Grey) return true;
                    if (color[static_cast<size_t>(a.to)] == White && visit(a.to)) return true;
                }
            color[static_cast<size_t>(v)] = Black;
            return false;
        };
        for (int v = 0; v < num_vertices(); ++v)
            if (color[static_cast<size_t>(v)] == White && visit(v)) return true;
        return false;
    }

    // Is the given vertex subset connected in the underlying undirected graph?
    bool connected_on(const std::vector<bool>& keep) const {
        int start = -1, total = 0;
        for (int v = 0; v < num_vertices(); ++v)
            if (keep[static_cast<size_t>(v)]) {
                if (start < 0) start = v;
                ++total;
            }
        if (total <= 1) return true;
        std::vector<bool> seen(static_cast<size_t>(num_vertices()), false);
        std::vector<int> stack{start};
        seen[static_cast<size_t>(start)] = true;
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const Arrow& a : arrows_) {
                int w = -1;
                if (a.from == v && keep[static_cast<size_t>(a.to)]) w = a.to;
                if (a.to == v && keep[static_cast<size_t>(a.from)]) w = a.from;
                if (w >= 0 && !seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = true;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        return reached == total;
    }

    bool operator==(const Quiver&) const = default;

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
};

enum class StandardKind { Loop, Kronecker, Subspace };

// L_m, K_m or S_m.
inline Quiver standard_quiver(StandardKind kind, int m) {
    if (m < 1) throw std::invalid_argument("standard_quiver: m must be >= 1");
    switch (kind) {
        case StandardKind::Loop: {
            std::vector<Arrow> arrows(static_cast<size_t>(m), Arrow{0, 0});
            return Quiver({"i"}, std::move(arrows));
        }
        case StandardKind::Kronecker: {
            std::vector<Arrow> arrows(static_cast<size_t>(m), Arrow{0, 1});
            return Quiver({"i", "j"}, std::move(arrows));
        }
        case StandardKind::Subspace: {
            std::vector<std::string> vs;
            std::vector<Arrow> arrows;
            for (int k = 1; k <= m; ++k) vs.push_back("i" + std::to_string(k));
            vs.push_back("j");
            for (int k = 0; k < m; ++k) arrows.push_back({k, m});
            return Quiver(std::move(vs), std::move(arrows));
        }
    }
    throw std::invalid_argument("standard_quiver: unknown kind");
}

// Integer vertex function. Representation-theoretic dimension vectors are
// non-negative; reflections may leave that cone, so entries are plain ints
// and callers enforce non-negativity where it is required.
class DimVector {
public:
    DimVector() = default;
    explicit DimVector(std::vector<int> v) : v_(std::move(v)) {}
    static DimVector zero(int n) { return DimVector(std::vector<int>(static_cast<size_t>(n), 0)); }
    static DimVector unit(int n, int i) {
        DimVector d = zero(n);
        d.v_[static_cast<size_t>(i)] = 1;
        return d;
    }

    int size() const { return static_cast<int>(v_.size()); }
    int operator[](int i) const { return v_.at(static_cast<size_t>(i)); }
    int& operator[](int i) { return v_.at(static_cast<size_t>(i)); }
    const std::vector<int>& entries() const { return v_; }

    long long total() const { return std::accumulate(v_.begin(), v_.end(), 0LL); }
    bool is_zero() const {
        return std::all_of(v_.begin(), v_.end(), [](int x) { return x == 0; });
    }
    bool is_nonnegative() const {
        return std::all_of(v_.begin(), v_.end(), [](int x) { return x >= 0; });
    }
    bool is_unit() const {
        int ones = 0;
        for (int x : v_) {
            if (x == 1) ++ones;
            else if (x != 0) return false;
        }
        return ones == 1;
    }

    std::vector<int> support() const {
        std::vector<int> s;
        for (int i = 0; i < size(); ++i)
            if (v_[static_cast<size_t>(i)] != 0) s.push_back(i);
        return s;
    }
    std::vector<bool> support_mask() const {
        std::vector<bool> m(v_.size(), false);
        for (size_t i = 0; i < v_.size(); ++i) m[i] = v_[i] != 0;
        return m;
    }

    friend DimVector operator+(const DimVector& a, const DimVector& b) {
        DimVector r = a;
        for (int i = 0; i < r.size(); ++i) r[i] += b[i];
        return r;
    }
    friend DimVector operator-(const DimVector& a, const DimVector& b) {
        DimVector r = a;
        for (int i = 0; i < r.size(); ++i) r[i] -= b[i];
        return r;
    }
    friend DimVector operator*(int c, const DimVector& a) {
        DimVector r = a;
        for (int i = 0; i < r.size(); ++i) r[i] *= c;
        return r;
    }

    // Componentwise e <= d.
    static bool leq(const DimVector& a, const DimVector& b) {
        for (int i = 0; i < a.size(); ++i)
            if (a[i] > b[i]) return false;
        return true;
    }

    bool operator==(const DimVector&) const = default;
    // Lexicographic; used only as a container key.
    auto operator<=>(const DimVector& o) const { return v_ <=> o.v_; }

    std::string to_string() const {
        std::string s = "(";
        for (int i = 0; i < size(); ++i) {
            if (i) s += ",";
            s += std::to_string(v_[static_cast<size_t>(i)]);
        }
        return s + ")";
    }

private:
    std::vector<int> v_;
};

class Stability {
public:
    Stability() = default;
    explicit Stability(std::vector<int> theta) : t_(std::move(theta)) {}
    static Stability zero(int n) { return Stability(std::vector<int>(static_cast<size_t>(n), 0)); }

    int size() const { return static_cast<int>(t_.size()); }
    int operator[](int i) const { return t_.at(static_cast<size_t>(i)); }
    const std::vector<int>& entries() const { return t_; }

    long long value(const DimVector& d) const {
        if (d.size() != size()) throw std::invalid_argument("Stability: vertex mismatch");
        long long s = 0;
        for (int i = 0; i < size(); ++i) s += static_cast<long long>(t_[static_cast<size_t>(i)]) * d[i];
        return s;
    }

    // mu(d) = Theta(d)/dim d, exact; d must be non-zero.
    Rat slope(const DimVector& d) const {
        if (d.is_zero()) throw std::invalid_argument("slope: zero dimension vector");
        Rat mu(static_cast<long>(value(d)), static_cast<long>(d.total()));
        mu.canonicalize();
        return mu;
    }

    bool operator==(const Stability&) const = default;

private:
    std::vector<int> t_;
};

inline long long euler_form(const Quiver& q, const DimVector& d, const DimVector& e) {
    if (d.size() != q.num_vertices() || e.size() != q.num_vertices())
        throw std::invalid_argument("euler_form: vertex mismatch");
    long long s = 0;
    for (int i = 0; i < q.num_vertices(); ++i) s += static_cast<long long>(d[i]) * e[i];
    for (const Arrow& a : q.arrows()) s -= static_cast<long long>(d[a.from]) * e[a.to];
    return s;
}

inline long long symmetrized_euler_form(const Quiver& q, const DimVector& d, const DimVector& e) {
    return euler_form(q, d, e) + euler_form(q, e, d);
}

// 1 - <d,d>: the dimension of M_d^st when non-empty.
inline long long moduli_dimension(const Quiver& q, const DimVector& d) {
    return 1 - euler_form(q, d, d);
}

// Visit every e with 0 <= e <= d componentwise (including 0 and d).
template <typename F>
void for_each_below(const DimVector& d, F&& f) {
    DimVector e = DimVector::zero(d.size());
    while (true) {
        f(const_cast<const DimVector&>(e));
        int i = 0;
        while (i < d.size() && e[i] == d[i]) {
            e[i] = 0;
            ++i;
        }
        if (i == d.size()) return;
        ++e[i];
    }
}

// All non-negative vectors on n vertices with total dimension <= bound,
// in lexicographic order.
inline std::vector<DimVector> dimvectors_up_to(int n, int bound) {
    std::vector<DimVector> out;
    std::vector<int> cur(static_cast<size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == n) {
            out.emplace_back(cur);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[static_cast<size_t>(pos)] = v;
            rec(pos + 1, remaining - v);
        }
        cur[static_cast<size_t>(pos)] = 0;
    };
    rec(0, bound);
    return out;
}

// Is d coprime for Theta: no nonzero proper e < d shares the slope of d.
// Decided by full enumeration of the box below d.
inline bool theta_coprime(const Quiver& q, const Stability& theta, const DimVector& d) {
    if (d.size() != q.num_vertices()) throw std::invalid_argument("theta_coprime: vertex mismatch");
    if (d.is_zero()) throw std::invalid_argument("theta_coprime: zero dimension vector");
    Rat mu = theta.slope(d);
    bool coprime = true;
    for_each_below(d, [&](const DimVector& e) {
        if (e.is_zero() || e == d) return;
        if (theta.slope(e) == mu) coprime = false;
    });
    return coprime;
}

// The subsemigroup NI_mu = { d != 0 : mu(d) = mu } union {0}.
struct SlopeClass {
    Stability theta;
    Rat mu;

    bool contains(const DimVector& d) const {
        if (d.is_zero()) return true;
        return theta.slope(d) == mu;
    }
    bool operator==(const SlopeClass&) const = default;
};

}  // namespace quivermod
