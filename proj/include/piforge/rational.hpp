#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace piforge {

// All probabilities, rewards and values in this project are exact rationals.
// Strict Q-value comparisons decide every policy-improvement step, so there
// is no floating point anywhere on the solve path.
using Rat = mpq_class;

inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rat& r) {
    return r.get_str();  // canonical "p" or "p/q"
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat num, den;
    mpz_pow_ui(num.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_den_mpz_t(), base.get_den_mpz_t(), e);
    Rat r(num.get_num(), den.get_den());
    r.canonicalize();
    return r;
}

// 2^e as an exact rational, e may be negative.
inline Rat rat_pow2(long e) {
    Rat r(1);
    if (e >= 0)
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(e));
    else
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(-e));
    return r;
}

}  // namespace piforge
