#pragma once

// Exact arithmetic for polynomials and rational functions in one variable q
// over the rationals. Everything here is a plain value; no floating point.

#include "quivermod/errors.hpp"
#include "quivermod/rational.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace quivermod {

class PolyQ {
public:
    PolyQ() = default;
    PolyQ(int c) : PolyQ(Rat(c)) {}
    PolyQ(const Rat& c) {
        if (c != 0) c_.push_back(c);
    }
    explicit PolyQ(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    // The variable q itself.
    static PolyQ variable() { return monomial(1, 1); }

    static PolyQ monomial(int deg, const Rat& c) {
        if (c == 0) return {};
        std::vector<Rat> v(static_cast<size_t>(deg) + 1, Rat(0));
        v.back() = c;
        return PolyQ(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero

    Rat coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return Rat(0);
        return c_[static_cast<size_t>(k)];
    }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat leading() const { return is_zero() ? Rat(0) : c_.back(); }

    bool operator==(const PolyQ&) const = default;

    PolyQ operator-() const {
        PolyQ r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend PolyQ operator+(const PolyQ& a, const PolyQ& b) {
        std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
        return PolyQ(std::move(v));
    }
    friend PolyQ operator-(const PolyQ& a, const PolyQ& b) { return a + (-b); }

    friend PolyQ operator*(const PolyQ& a, const PolyQ& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> v(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return PolyQ(std::move(v));
    }

    friend PolyQ operator*(const Rat& s, const PolyQ& a) {
        if (s == 0) return {};
        PolyQ r = a;
        for (auto& x : r.c_) x *= s;
        return r;
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    // q -> q^k, k >= 1.
    PolyQ stretch(int k) const {
        if (k < 1) throw std::invalid_argument("stretch: k must be >= 1");
        if (is_zero() || k == 1) return *this;
        std::vector<Rat> v(static_cast<size_t>(degree()) * k + 1, Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
        return PolyQ(std::move(v));
    }

    // p(inner(q)), by Horner.
    PolyQ compose(const PolyQ& inner) const {
        PolyQ acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + PolyQ(*it);
        return acc;
    }

    bool integer_coeffs() const {
        for (const auto& x : c_)
            if (!is_integral(x)) return false;
        return true;
    }

    // Quotient and remainder, deg(rem) < deg(b). b must be non-zero.
    static std::pair<PolyQ, PolyQ> divmod(const PolyQ& a, const PolyQ& b) {
        if (b.is_zero()) throw std::invalid_argument("divmod: division by zero polynomial");
        PolyQ rem = a, quot;
        const Rat lead = b.leading();
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            int k = rem.degree() - b.degree();
            Rat c = rem.leading() / lead;
            quot = quot + monomial(k, c);
            rem = rem - monomial(k, c) * b;
        }
        return {quot, rem};
    }

    // Monic gcd (1 for coprime inputs, 0 only if both are zero).
    static PolyQ gcd(PolyQ a, PolyQ b) {
        while (!b.is_zero()) {
            PolyQ r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.is_zero()) a = (1 / a.leading()) * a;
        return a;
    }

    std::string pretty(const std::string& var = "q") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            Rat c = coeff(k);
            if (c == 0) continue;
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            Rat a = abs(c);
            if (a != 1 || k == 0) os << rat_to_string(a);
            if (k > 0) {
                if (a != 1) os << "*";
                os << var;
                if (k > 1) os << "^" << k;
            }
            first = false;
        }
        return os.str();
    }

private:
    std::vector<Rat> c_;  // constant term first; no trailing zeros

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

// Quotient of two PolyQ in lowest terms with monic denominator.
class RatFuncQ {
public:
    RatFuncQ() : num_(), den_(1) {}
    RatFuncQ(int c) : num_(c), den_(1) {}
    RatFuncQ(const Rat& c) : num_(c), den_(1) {}
    RatFuncQ(PolyQ p) : num_(std::move(p)), den_(1) {}
    RatFuncQ(PolyQ num, PolyQ den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RatFuncQ variable() { return RatFuncQ(PolyQ::variable()); }
    // q^e for any integer e.
    static RatFuncQ q_power(long e) {
        if (e >= 0) return RatFuncQ(PolyQ::monomial(static_cast<int>(e), 1));
        return RatFuncQ(PolyQ(1), PolyQ::monomial(static_cast<int>(-e), 1));
    }

    const PolyQ& numerator() const { return num_; }
    const PolyQ& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    bool operator==(const RatFuncQ&) const = default;

    RatFuncQ operator-() const {
        RatFuncQ r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFuncQ operator+(const RatFuncQ& a, const RatFuncQ& b) {
        return RatFuncQ(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFuncQ operator-(const RatFuncQ& a, const RatFuncQ& b) { return a + (-b); }
    friend RatFuncQ operator*(const RatFuncQ& a, const RatFuncQ& b) {
        return RatFuncQ(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFuncQ operator/(const RatFuncQ& a, const RatFuncQ& b) {
        if (b.is_zero()) throw std::invalid_argument("RatFuncQ: division by zero");
        return RatFuncQ(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFuncQ& operator+=(const RatFuncQ& o) { return *this = *this + o; }
    RatFuncQ& operator-=(const RatFuncQ& o) { return *this = *this - o; }
    RatFuncQ& operator*=(const RatFuncQ& o) { return *this = *this * o; }

    Rat eval(const Rat& x) const {
        Rat d = den_.eval(x);
        if (d == 0) throw std::domain_error("RatFuncQ::eval: pole at evaluation point");
        return num_.eval(x) / d;
    }

    // The Adams substitution q -> q^k.
    RatFuncQ psi(int k) const { return RatFuncQ(num_.stretch(k), den_.stretch(k)); }

    std::string pretty(const std::string& var = "q") const {
        if (den_ == PolyQ(1)) return num_.pretty(var);
        return "(" + num_.pretty(var) + ")/(" + den_.pretty(var) + ")";
    }

private:
    PolyQ num_, den_;

    void normalize() {
        if (den_.is_zero()) throw std::invalid_argument("RatFuncQ: zero denominator");
        if (num_.is_zero()) {
            den_ = PolyQ(1);
            return;
        }
        PolyQ g = PolyQ::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = PolyQ::divmod(num_, g).first;
            den_ = PolyQ::divmod(den_, g).first;
        }
        Rat lead = den_.leading();
        if (lead != 1) {
            Rat inv = 1 / lead;
            num_ = inv * num_;
            den_ = inv * den_;
        }
    }
};

// f as a polynomial with integer coefficients, if it is one.
inline std::optional<PolyQ> as_integer_polynomial(const RatFuncQ& f) {
    if (f.denominator() != PolyQ(1)) return std::nullopt;
    if (!f.numerator().integer_coeffs()) return std::nullopt;
    return f.numerator();
}

inline PolyQ require_integer_polynomial(const RatFuncQ& f, const std::string& context) {
    auto p = as_integer_polynomial(f);
    if (!p) throw IntegralityError(context + ": expected an integer polynomial, got " + f.pretty());
    return *p;
}

// Taylor coefficients c_0..c_order of f(1+s) around s=0. f must have no pole
// at q=1 (in lowest terms the denominator must not vanish there).
inline std::vector<Rat> expand_at_one(const RatFuncQ& f, int order) {
    if (order < 0) throw std::invalid_argument("expand_at_one: negative order");
    const PolyQ shift = PolyQ::variable() + PolyQ(1);
    PolyQ a = f.numerator().compose(shift);
    PolyQ b = f.denominator().compose(shift);
    if (b.coeff(0) == 0) throw std::domain_error("expand_at_one: pole at q=1");
    std::vector<Rat> c(static_cast<size_t>(order) + 1, Rat(0));
    for (int k = 0; k <= order; ++k) {
        Rat acc = a.coeff(k);
        for (int j = 0; j < k; ++j) acc -= c[static_cast<size_t>(j)] * b.coeff(k - j);
        c[static_cast<size_t>(k)] = acc / b.coeff(0);
    }
    return c;
}

// Does p lie in N[q-1]? p must have integer coefficients.
inline bool is_positive_in_qminus1(const PolyQ& p) {
    if (!p.integer_coeffs()) throw std::invalid_argument("is_positive_in_qminus1: non-integer coefficients");
    PolyQ shifted = p.compose(PolyQ::variable() + PolyQ(1));  // p(s+1), s = q-1
    for (const auto& c : shifted.coeffs())
        if (c < 0) return false;
    return true;
}

}  // namespace quivermod
