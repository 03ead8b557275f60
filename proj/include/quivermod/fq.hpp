#pragma once

// Dense linear algebra over small prime fields, sized for brute-force
// enumeration: matrices are a handful of rows and columns, entries live in
// uint8_t.

#include "quivermod/errors.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quivermod {

inline int fq_inverse(int a, int q) {
    a %= q;
    if (a < 0) a += q;
    if (a == 0) throw std::invalid_argument("fq_inverse: zero element");
    for (int x = 1; x < q; ++x)
        if (a * x % q == 1) return x;
    throw std::invalid_argument("fq_inverse: modulus is not prime");
}

class FqMatrix {
public:
    FqMatrix() = default;
    FqMatrix(int q, int rows, int cols)
        : q_(q), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}

    static FqMatrix identity(int q, int n) {
        FqMatrix m(q, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int field() const { return q_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    uint8_t& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    uint8_t at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    bool operator==(const FqMatrix&) const = default;

    friend FqMatrix operator*(const FqMatrix& a, const FqMatrix& b) {
        if (a.cols_ != b.rows_ || a.q_ != b.q_) throw std::invalid_argument("FqMatrix: shape mismatch");
        FqMatrix r(a.q_, a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                int v = a.at(i, k);
                if (!v) continue;
                for (int j = 0; j < b.cols_; ++j)
                    r.at(i, j) = static_cast<uint8_t>((r.at(i, j) + v * b.at(k, j)) % a.q_);
            }
        return r;
    }

    std::vector<uint8_t> apply(const std::vector<uint8_t>& v) const {
        std::vector<uint8_t> out(static_cast<size_t>(rows_), 0);
        for (int i = 0; i < rows_; ++i) {
            int acc = 0;
            for (int j = 0; j < cols_; ++j) acc += at(i, j) * v[static_cast<size_t>(j)];
            out[static_cast<size_t>(i)] = static_cast<uint8_t>(acc % q_);
        }
        return out;
    }

    // In-place reduction to row echelon form; returns the rank.
    int row_reduce() {
        int rank = 0;
        for (int c = 0; c < cols_ && rank < rows_; ++c) {
            int pivot = -1;
            for (int r = rank; r < rows_; ++r)
                if (at(r, c)) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) continue;
            if (pivot != rank)
                for (int j = 0; j < cols_; ++j) std::swap(at(pivot, j), at(rank, j));
            int inv = fq_inverse(at(rank, c), q_);
            for (int j = 0; j < cols_; ++j) at(rank, j) = static_cast<uint8_t>(at(rank, j) * inv % q_);
            for (int r = 0; r < rows_; ++r) {
                if (r == rank || !at(r, c)) continue;
                int f = at(r, c);
                for (int j = 0; j < cols_; ++j)
                    at(r, j) = static_cast<uint8_t>((at(r, j) + (q_ - f) * at(rank, j)) % q_);
            }
            ++rank;
        }
        return rank;
    }

    int rank() const {
        FqMatrix copy = *this;
        return copy.row_reduce();
    }

    FqMatrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("FqMatrix::inverse: not square");
        FqMatrix aug(q_, rows_, 2 * cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_ + i) = 1;
        }
        if (aug.row_reduce() != rows_) throw std::invalid_argument("FqMatrix::inverse: singular");
        FqMatrix inv(q_, rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
        return inv;
    }

private:
    int q_ = 2;
    int rows_ = 0, cols_ = 0;
    std::vector<uint8_t> a_;
};

// A subspace of F_q^n held as a reduced row echelon basis.
struct FqSubspace {
    FqMatrix basis;             // dim x n, RREF
    std::vector<int> pivots;    // pivot column per row

    int dim() const { return basis.rows(); }
    int ambient() const { return basis.cols(); }

    bool contains(std::vector<uint8_t> v) const {
        const int q = basis.field();
        for (int r = 0; r < basis.rows(); ++r) {
            int p = pivots[static_cast<size_t>(r)];
            int f = v[static_cast<size_t>(p)];
            if (!f) continue;
            for (int j = 0; j < basis.cols(); ++j)
                v[static_cast<size_t>(j)] =
                    static_cast<uint8_t>((v[static_cast<size_t>(j)] + (q - f) * basis.at(r, j)) % q);
        }
        for (uint8_t x : v)
            if (x) return false;
        return true;
    }

    std::vector<uint8_t> basis_row(int r) const {
        std::vector<uint8_t> v(static_cast<size_t>(basis.cols()));
        for (int j = 0; j < basis.cols(); ++j) v[static_cast<size_t>(j)] = basis.at(r, j);
        return v;
    }
};

namespace detail {

inline void fill_free_entries(FqMatrix& m, const std::vector<int>& pivots,
                              std::vector<std::pair<int, int>>& free_cells, size_t idx, int q,
                              std::vector<FqSubspace>& out) {
    if (idx == free_cells.size()) {
        FqSubspace s;
        s.basis = m;
        s.pivots = pivots;
        out.push_back(std::move(s));
        return;
    }
    auto [r, c] = free_cells[idx];
    for (int v = 0; v < q; ++v) {
        m.at(r, c) = static_cast<uint8_t>(v);
        fill_free_entries(m, pivots, free_cells, idx + 1, q, out);
    }
    m.at(r, c) = 0;
}

}  // namespace detail

// Every subspace of F_q^n exactly once, via RREF canonical forms, smallest
// dimension first. Cached per (q, n).
inline const std::vector<FqSubspace>& all_subspaces(int q, int n) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<FqSubspace>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({q, n});
    if (it != cache.end()) return it->second;

    std::vector<FqSubspace> out;
    for (int k = 0; k <= n; ++k) {
        // choose pivot columns p_0 < ... < p_{k-1}
        std::vector<int> pivots(static_cast<size_t>(k));
        std::function<void(int, int)> choose = [&](int pos, int from) {
            if (pos == k) {
                FqMatrix m(q, k, n);
                std::vector<std::pair<int, int>> free_cells;
                for (int r = 0; r < k; ++r) {
                    m.at(r, pivots[static_cast<size_t>(r)]) = 1;
                    for (int c = pivots[static_cast<size_t>(r)] + 1; c < n; ++c) {
                        bool is_pivot = false;
                        for (int rr = 0; rr < k; ++rr)
                            if (pivots[static_cast<size_t>(rr)] == c) is_pivot = true;
                        if (!is_pivot) free_cells.push_back({r, c});
                    }
                }
                detail::fill_free_entries(m, pivots, free_cells, 0, q, out);
                return;
            }
            for (int c = from; c < n; ++c) {
                pivots[static_cast<size_t>(pos)] = c;
                choose(pos + 1, c + 1);
            }
        };
        choose(0, 0);
    }
    return cache.emplace(std::make_pair(q, n), std::move(out)).first->second;
}

}  // namespace quivermod
