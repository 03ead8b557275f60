#pragma once

#include <gmpxx.h>

#include <string>

namespace quivermod {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e >= 0) {
        Rat r;
        mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), static_cast<unsigned long>(e));
        r.canonicalize();
        return r;
    }
    return 1 / rat_pow(base, -e);
}

inline bool is_integral(const Rat& x) { return x.get_den() == 1; }

// "p" for integers, "p/q" otherwise; always exact.
inline std::string rat_to_string(const Rat& x) { return x.get_str(); }

inline Rat rat_from_string(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

}  // namespace quivermod
