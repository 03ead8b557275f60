#pragma once

// Non-emptiness decision procedures: generic subrepresentations e -> d, the
// two semistable criteria (Schofield and HN-recursive), stable and simple
// existence, and the reduction of stability to simplicity on an auxiliary
// quiver.

#include "quivermod/quiver.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <vector>

namespace quivermod {

// Memoized sets Sub(e) = { e' : e' generically embeds into e } for one quiver
// (the sets do not depend on any stability). Write-once fill under a mutex.
class GenericEmbedCache {
public:
    explicit GenericEmbedCache(Quiver quiver) : quiver_(std::move(quiver)) {}

    const Quiver& quiver() const { return quiver_; }

    // All e' with e' generically embedding into e, including 0 and e itself.
    std::vector<DimVector> generic_subvectors(const DimVector& e) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = memo_.find(e);
            if (it != memo_.end()) return it->second;
        }
        std::vector<DimVector> subs;
        for_each_below(e, [&](const DimVector& ep) {
            if (ep.is_zero() || ep == e) {
                subs.push_back(ep);
                return;
            }
            if (embeds(ep, e)) subs.push_back(ep);
        });
        std::lock_guard<std::mutex> lock(mutex_);
        return memo_.emplace(e, std::move(subs)).first->second;
    }

    // e -> d: <e', d-e> >= 0 for every e' in Sub(e).
    bool embeds(const DimVector& e, const DimVector& d) {
        if (!DimVector::leq(e, d) || !e.is_nonnegative())
            throw std::invalid_argument("generic_subrep: need 0 <= e <= d");
        DimVector rest = d - e;
        for (const DimVector& ep : generic_subvectors(e))
            if (euler_form(quiver_, ep, rest) < 0) return false;
        return true;
    }

private:
    Quiver quiver_;
    std::mutex mutex_;
    std::map<DimVector, std::vector<DimVector>> memo_;
};

inline bool generic_subrep(const Quiver& q, const DimVector& e, const DimVector& d) {
    GenericEmbedCache cache(q);
    return cache.embeds(e, d);
}

enum class SstMethod { Schofield, Hn };

// M_d^simp(Q) is non-empty iff supp(d) is connected and either d is a
// coordinate vector, or supp(d) is a cyclically oriented A~_n with all
// d_i = 1, or supp(d) is not of that shape and <d,i> <= 0 >= <i,d> on the
// support.
inline bool simple_nonempty(const Quiver& q, const DimVector& d) {
    if (d.size() != q.num_vertices()) throw std::invalid_argument("simple_nonempty: vertex mismatch");
    if (d.is_zero() || !d.is_nonnegative())
        throw std::invalid_argument("simple_nonempty: d must be non-zero and non-negative");
    if (!q.connected_on(d.support_mask())) return false;
    if (d.total() == 1) return true;

    // Cyclic A~ detection, structurally: within the support every vertex has
    // exactly one outgoing and one incoming arrow, which forces a single
    // directed cycle through all support vertices once the support is
    // connected. A loop counts as A~_0.
    std::vector<int> out(static_cast<size_t>(q.num_vertices()), 0);
    std::vector<int> in(static_cast<size_t>(q.num_vertices()), 0);
    auto mask = d.support_mask();
    for (const Arrow& a : q.arrows())
        if (mask[static_cast<size_t>(a.from)] && mask[static_cast<size_t>(a.to)]) {
            ++out[static_cast<size_t>(a.from)];
            ++in[static_cast<size_t>(a.to)];
        }
    bool cyclic = true;
    for (int i : d.support())
        if (out[static_cast<size_t>(i)] != 1 || in[static_cast<size_t>(i)] != 1) cyclic = false;
    if (cyclic) {
        for (int i : d.support())
            if (d[i] != 1) return false;
        return true;
    }
    for (int i : d.support()) {
        DimVector ei = DimVector::unit(q.num_vertices(), i);
        if (euler_form(q, d, ei) > 0 || euler_form(q, ei, d) > 0) return false;
    }
    return true;
}

// Decision procedures for one fixed (Q, Theta); shares the Schofield sets
// and memoizes the HN recursion.
class ExistenceContext {
public:
    ExistenceContext(Quiver quiver, Stability theta)
        : theta_(std::move(theta)), cache_(std::move(quiver)) {
        if (theta_.size() != cache_.quiver().num_vertices())
            throw std::invalid_argument("ExistenceContext: vertex mismatch");
    }

    const Quiver& quiver() const { return cache_.quiver(); }
    GenericEmbedCache& embed_cache() { return cache_; }

    bool sst_nonempty(const DimVector& d, SstMethod method = SstMethod::Schofield) {
        require_valid(d);
        return method == SstMethod::Schofield ? sst_schofield(d) : sst_hn(d);
    }

    // mu(e) < mu(d) for every proper non-zero generic subvector.
    bool st_nonempty(const DimVector& d) {
        require_valid(d);
        Rat mu = theta_.slope(d);
        for (const DimVector& e : cache_.generic_subvectors(d)) {
            if (e.is_zero() || e == d) continue;
            if (!(theta_.slope(e) < mu)) return false;
        }
        return true;
    }

    // The reduction theorem: given d = sum m_k d^k with all M^st(d^k)
    // non-empty and equal slopes, M^st(d) is non-empty iff (m_1..m_s) is the
    // dimension vector of a simple representation of the quiver with
    // delta_{kl} - <d^k,d^l> arrows from k to l.
    bool st_nonempty_al(const std::vector<std::pair<int, DimVector>>& parts) {
        if (parts.empty()) throw std::invalid_argument("st_nonempty_al: empty decomposition");
        for (const auto& [m, dk] : parts) {
            if (m < 1) throw std::invalid_argument("st_nonempty_al: multiplicities must be >= 1");
            if (!st_nonempty(dk))
                throw std::invalid_argument("st_nonempty_al: part " + dk.to_string() +
                                            " has empty stable moduli");
        }
        Rat mu = theta_.slope(parts.front().second);
        for (const auto& [m, dk] : parts)
            if (theta_.slope(dk) != mu)
                throw std::invalid_argument("st_nonempty_al: parts have different slopes");

        const int s = static_cast<int>(parts.size());
        std::vector<std::string> names;
        for (int k = 1; k <= s; ++k) names.push_back("p" + std::to_string(k));
        std::vector<Arrow> arrows;
        std::vector<int> mult;
        for (int k = 0; k < s; ++k) {
            mult.push_back(parts[static_cast<size_t>(k)].first);
            for (int l = 0; l < s; ++l) {
                long long count = (k == l ? 1 : 0) -
                                  euler_form(quiver(), parts[static_cast<size_t>(k)].second,
                                             parts[static_cast<size_t>(l)].second);
                if (count < 0)
                    throw std::invalid_argument("st_nonempty_al: negative arrow count between parts");
                for (long long c = 0; c < count; ++c) arrows.push_back({k, l});
            }
        }
        return simple_nonempty(Quiver(std::move(names), std::move(arrows)), DimVector(std::move(mult)));
    }

private:
    Stability theta_;
    GenericEmbedCache cache_;
    std::mutex mutex_;
    std::map<DimVector, bool> sst_memo_;

    void require_valid(const DimVector& d) const {
        if (d.size() != quiver().num_vertices())
            throw std::invalid_argument("existence: vertex mismatch");
        if (d.is_zero() || !d.is_nonnegative())
            throw std::invalid_argument("existence: d must be non-zero and non-negative");
    }

    bool sst_schofield(const DimVector& d) {
        Rat mu = theta_.slope(d);
        for (const DimVector& e : cache_.generic_subvectors(d)) {
            if (e.is_zero()) continue;
            if (theta_.slope(e) > mu) return false;
        }
        return true;
    }

    // Non-empty iff there is no decomposition d = d^1+..+d^s, s >= 2, with
    // non-empty semistable parts of strictly decreasing slope and
    // <d^k,d^l> = 0 for k < l.
    bool sst_hn(const DimVector& d) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = sst_memo_.find(d);
            if (it != sst_memo_.end()) return it->second;
        }
        bool found_obstruction = false;
        std::vector<DimVector> candidates;
        for_each_below(d, [&](const DimVector& e) {
            if (!e.is_zero() && e != d) candidates.push_back(e);
        });
        std::function<void(const std::vector<DimVector>&, const DimVector&)> rec =
            [&](const std::vector<DimVector>& chosen, const DimVector& prefix) {
                if (found_obstruction) return;
                DimVector rest = d - prefix;
                // Option: close with rest as the final part.
                if (!chosen.empty() && theta_.slope(rest) < theta_.slope(chosen.back()) &&
                    orthogonal_to_all(chosen, rest) && sst_hn(rest)) {
                    found_obstruction = true;
                    return;
                }
                for (const DimVector& e : candidates) {
                    if (found_obstruction) return;
                    if (!DimVector::leq(e, rest) || e == rest) continue;
                    Rat mu_e = theta_.slope(e);
                    if (!chosen.empty() && !(mu_e < theta_.slope(chosen.back()))) continue;
                    if (!(mu_e > theta_.slope(rest - e))) continue;  // tail slopes sit below mu_e
                    if (!orthogonal_to_all(chosen, e)) continue;
                    if (!sst_hn(e)) continue;
                    auto next = chosen;
                    next.push_back(e);
                    rec(next, prefix + e);
                }
            };
        rec({}, DimVector::zero(d.size()));
        bool value = !found_obstruction;
        std::lock_guard<std::mutex> lock(mutex_);
        return sst_memo_.emplace(d, value).first->second;
    }

    bool orthogonal_to_all(const std::vector<DimVector>& chosen, const DimVector& e) const {
        for (const DimVector& c : chosen)
            if (euler_form(quiver(), c, e) != 0) return false;
        return true;
    }
};

inline bool sst_nonempty(const Quiver& q, const Stability& theta, const DimVector& d,
                         SstMethod method = SstMethod::Schofield) {
    ExistenceContext ctx(q, theta);
    return ctx.sst_nonempty(d, method);
}

inline bool st_nonempty(const Quiver& q, const Stability& theta, const DimVector& d) {
    ExistenceContext ctx(q, theta);
    return ctx.st_nonempty(d);
}

inline bool st_nonempty_al(const Quiver& q, const Stability& theta,
                           const std::vector<std::pair<int, DimVector>>& parts) {
    ExistenceContext ctx(q, theta);
    return ctx.st_nonempty_al(parts);
}

}  // namespace quivermod
