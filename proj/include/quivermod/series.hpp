#pragma once

// Truncated NI-graded power series with RatFuncQ coefficients, the twisted
// product t^d o t^e = q^{-<d,e>} t^{d+e}, and the plethystic operators
// psi_k, Exp and Log. Exp/Log use the ordinary commutative product; the
// twisted product enters only where a formula writes o explicitly.

#include "quivermod/poly.hpp"
#include "quivermod/quiver.hpp"

#include <map>
#include <optional>

namespace quivermod {

enum class ProductKind { Twisted, Ordinary };

class TwistedSeries {
public:
    TwistedSeries(Quiver quiver, int truncation, std::optional<SlopeClass> filter = std::nullopt)
        : quiver_(std::move(quiver)), truncation_(truncation), filter_(std::move(filter)) {
        if (truncation_ < 0) throw std::invalid_argument("TwistedSeries: negative truncation");
    }

    static TwistedSeries unit(const Quiver& q, int truncation,
                              std::optional<SlopeClass> filter = std::nullopt) {
        TwistedSeries s(q, truncation, std::move(filter));
        s.set(DimVector::zero(q.num_vertices()), RatFuncQ(1));
        return s;
    }

    const Quiver& quiver() const { return quiver_; }
    int truncation() const { return truncation_; }
    const std::optional<SlopeClass>& filter() const { return filter_; }
    const std::map<DimVector, RatFuncQ>& terms() const { return terms_; }

    RatFuncQ coefficient(const DimVector& d) const {
        auto it = terms_.find(d);
        return it == terms_.end() ? RatFuncQ(0) : it->second;
    }

    void set(const DimVector& d, RatFuncQ value) {
        if (d.size() != quiver_.num_vertices())
            throw std::invalid_argument("TwistedSeries::set: vertex mismatch");
        if (!d.is_nonnegative() || d.total() > truncation_)
            throw std::invalid_argument("TwistedSeries::set: key outside truncation");
        if (filter_ && !filter_->contains(d))
            throw std::invalid_argument("TwistedSeries::set: key outside slope class");
        if (value.is_zero())
            terms_.erase(d);
        else
            terms_[d] = std::move(value);
    }

    RatFuncQ constant_term() const { return coefficient(DimVector::zero(quiver_.num_vertices())); }

    friend TwistedSeries operator+(const TwistedSeries& a, const TwistedSeries& b) {
        a.require_compatible(b);
        TwistedSeries r = a;
        for (const auto& [d, c] : b.terms_) r.set(d, r.coefficient(d) + c);
        return r;
    }
    friend TwistedSeries operator-(const TwistedSeries& a, const TwistedSeries& b) {
        a.require_compatible(b);
        TwistedSeries r = a;
        for (const auto& [d, c] : b.terms_) r.set(d, r.coefficient(d) - c);
        return r;
    }
    friend TwistedSeries operator*(const RatFuncQ& s, const TwistedSeries& a) {
        TwistedSeries r(a.quiver_, a.truncation_, a.filter_);
        for (const auto& [d, c] : a.terms_) r.set(d, s * c);
        return r;
    }

    friend TwistedSeries mul(const TwistedSeries& a, const TwistedSeries& b, ProductKind kind) {
        a.require_compatible(b);
        TwistedSeries r(a.quiver_, a.truncation_, a.filter_);
        for (const auto& [d, cd] : a.terms_)
            for (const auto& [e, ce] : b.terms_) {
                DimVector f = d + e;
                if (f.total() > a.truncation_) continue;
                RatFuncQ term = cd * ce;
                if (kind == ProductKind::Twisted)
                    term = term * RatFuncQ::q_power(-euler_form(a.quiver_, d, e));
                r.set(f, r.coefficient(f) + term);
            }
        return r;
    }

    // Two-sided inverse, solved degree by degree; constant term must be a unit.
    TwistedSeries inverse(ProductKind kind) const {
        RatFuncQ c0 = constant_term();
        if (c0.is_zero()) throw std::invalid_argument("TwistedSeries::inverse: constant term is zero");
        TwistedSeries x(quiver_, truncation_, filter_);
        const DimVector zero = DimVector::zero(quiver_.num_vertices());
        x.set(zero, RatFuncQ(1) / c0);
        // Grade by total dimension: X[f] = -1/c0 * sum_{0<d<=f} q^{-<d,f-d>} A[d] X[f-d].
        for (int n = 1; n <= truncation_; ++n) {
            for (const DimVector& f : graded_keys(n)) {
                RatFuncQ acc(0);
                for (const auto& [d, cd] : terms_) {
                    if (d.is_zero() || !DimVector::leq(d, f)) continue;
                    DimVector e = f - d;
                    RatFuncQ xe = x.coefficient(e);
                    if (xe.is_zero()) continue;
                    RatFuncQ term = cd * xe;
                    if (kind == ProductKind::Twisted)
                        term = term * RatFuncQ::q_power(-euler_form(quiver_, d, e));
                    acc += term;
                }
                if (!acc.is_zero()) x.set(f, -(RatFuncQ(1) / c0) * acc);
            }
        }
        return x;
    }

    // psi_k: q -> q^k in every coefficient, grading scaled by k.
    TwistedSeries psi(int k) const {
        if (k < 1) throw std::invalid_argument("TwistedSeries::psi: k must be >= 1");
        TwistedSeries r(quiver_, truncation_, filter_);
        for (const auto& [d, c] : terms_) {
            DimVector kd = k * d;
            if (kd.total() > truncation_) continue;
            r.set(kd, c.psi(k));
        }
        return r;
    }

    // Exp(f) = exp(Psi(f)) with the ordinary product; requires f[0] = 0.
    TwistedSeries plethystic_exp() const {
        if (!constant_term().is_zero())
            throw std::invalid_argument("plethystic_exp: constant term must be 0");
        return exp_ordinary(adams_sum());
    }

    // Log(f) = Psi^{-1}(log f); requires f[0] = 1.
    TwistedSeries plethystic_log() const {
        if (constant_term() != RatFuncQ(1))
            throw std::invalid_argument("plethystic_log: constant term must be 1");
        TwistedSeries lg = log_ordinary(*this);
        TwistedSeries r(quiver_, truncation_, filter_);
        for (int k = 1; k <= std::max(truncation_, 1); ++k) {
            int mu = moebius(k);
            if (mu == 0) continue;
            r = r + RatFuncQ(Rat(mu, k)) * lg.psi(k);
        }
        return r;
    }

private:
    Quiver quiver_;
    int truncation_ = 0;
    std::optional<SlopeClass> filter_;
    std::map<DimVector, RatFuncQ> terms_;

    void require_compatible(const TwistedSeries& o) const {
        if (quiver_ != o.quiver_ || truncation_ != o.truncation_)
            throw std::invalid_argument("TwistedSeries: quiver/truncation mismatch");
        if (filter_ != o.filter_)
            throw std::invalid_argument("TwistedSeries: slope filter mismatch");
    }

    std::vector<DimVector> graded_keys(int total) const {
        std::vector<DimVector> keys;
        for (const DimVector& d : dimvectors_up_to(quiver_.num_vertices(), truncation_))
            if (d.total() == total && (!filter_ || filter_->contains(d))) keys.push_back(d);
        return keys;
    }

    // Psi(f) = sum_{k>=1} psi_k(f)/k; only k <= truncation contribute.
    TwistedSeries adams_sum() const {
        TwistedSeries r(quiver_, truncation_, filter_);
        for (int k = 1; k <= std::max(truncation_, 1); ++k) r = r + RatFuncQ(Rat(1, k)) * psi(k);
        return r;
    }

    static TwistedSeries exp_ordinary(const TwistedSeries& g) {
        TwistedSeries r = unit(g.quiver_, g.truncation_, g.filter_);
        TwistedSeries power = r;
        Rat factorial(1);
        for (int n = 1; n <= g.truncation_; ++n) {
            power = mul(power, g, ProductKind::Ordinary);
            if (power.terms_.empty()) break;
            factorial *= n;
            r = r + RatFuncQ(Rat(1) / factorial) * power;
        }
        return r;
    }

    // log(1+x) = sum (-1)^{n+1} x^n / n for the ordinary product.
    static TwistedSeries log_ordinary(const TwistedSeries& f) {
        TwistedSeries x = f - unit(f.quiver_, f.truncation_, f.filter_);
        TwistedSeries r(f.quiver_, f.truncation_, f.filter_);
        TwistedSeries power = unit(f.quiver_, f.truncation_, f.filter_);
        for (int n = 1; n <= f.truncation_; ++n) {
            power = mul(power, x, ProductKind::Ordinary);
            if (power.terms_.empty()) break;
            r = r + RatFuncQ(Rat(n % 2 == 1 ? 1 : -1, n)) * power;
        }
        return r;
    }

    static int moebius(int n) {
        int result = 1;
        for (int p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0;
                result = -result;
            }
        }
        if (n > 1) result = -result;
        return result;
    }
};

}  // namespace quivermod
