#pragma once

// Exact coefficient fields: arbitrary-precision rationals (default) and a
// large prime field for speed. Window code is templated on the field.

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "semifiber/errors.hpp"

namespace semifiber {

struct RationalField {
    using value_type = mpq_class;
    static value_type zero() { return mpq_class(0); }
    static value_type one() { return mpq_class(1); }
    static value_type from_int(long n) { return mpq_class(n); }
    static bool is_zero(const value_type& v) { return sgn(v) == 0; }
    static value_type inverse(const value_type& v) { return 1 / v; }
    static std::string name() { return "rational"; }
};

/// Residues modulo a fixed prime; the modulus is process-global and must be
/// set before any arithmetic. Guarded to be >= 10^6.
struct PrimeField {
    struct value_type {
        std::uint64_t v = 0;
        bool operator==(const value_type&) const = default;
    };

    static inline std::uint64_t modulus = 2147483647ULL;

    static void set_modulus(std::uint64_t p) {
        if (p < 1000000ULL) throw BadOverride("prime modulus " + std::to_string(p) + " < 10^6");
        if (!is_prime(p)) throw BadOverride(std::to_string(p) + " is not prime");
        modulus = p;
    }

    static value_type zero() { return {0}; }
    static value_type one() { return {1}; }
    static value_type from_int(long n) {
        long r = n % static_cast<long>(modulus);
        if (r < 0) r += static_cast<long>(modulus);
        return {static_cast<std::uint64_t>(r)};
    }
    static bool is_zero(const value_type& v) { return v.v == 0; }

    static value_type add(value_type a, value_type b) {
        std::uint64_t s = a.v + b.v;
        if (s >= modulus) s -= modulus;
        return {s};
    }
    static value_type sub(value_type a, value_type b) {
        return {a.v >= b.v ? a.v - b.v : a.v + modulus - b.v};
    }
    static value_type mul(value_type a, value_type b) {
        return {static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(a.v) * b.v) % modulus)};
    }
    static value_type inverse(value_type a) {
        if (a.v == 0) throw Error("division by zero in prime field");
        return pow(a, modulus - 2);
    }
    static value_type pow(value_type a, std::uint64_t n) {
        value_type r = one();
        while (n) {
            if (n & 1) r = mul(r, a);
            a = mul(a, a);
            n >>= 1;
        }
        return r;
    }

    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                                29ULL, 31ULL, 37ULL}) {
            if (n == p) return true;
            if (n % p == 0) return false;
        }
        // deterministic Miller-Rabin for n < 3.3e24 with these bases
        std::uint64_t d = n - 1;
        int s = 0;
        while ((d & 1) == 0) d >>= 1, ++s;
        auto old = modulus;
        modulus = n;
        bool prime = true;
        for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                                29ULL, 31ULL, 37ULL}) {
            value_type x = pow({a % n}, d);
            if (x.v == 1 || x.v == n - 1) continue;
            bool witness = true;
            for (int i = 1; i < s && witness; ++i) {
                x = mul(x, x);
                if (x.v == n - 1) witness = false;
            }
            if (witness) {
                prime = false;
                break;
            }
        }
        modulus = old;
        return prime;
    }

    static std::string name() { return "prime:" + std::to_string(modulus); }
};

inline PrimeField::value_type operator+(PrimeField::value_type a, PrimeField::value_type b) {
    return PrimeField::add(a, b);
}
inline PrimeField::value_type operator-(PrimeField::value_type a, PrimeField::value_type b) {
    return PrimeField::sub(a, b);
}
inline PrimeField::value_type operator*(PrimeField::value_type a, PrimeField::value_type b) {
    return PrimeField::mul(a, b);
}
inline PrimeField::value_type operator-(PrimeField::value_type a) {
    return PrimeField::sub(PrimeField::zero(), a);
}
inline PrimeField::value_type& operator+=(PrimeField::value_type& a, PrimeField::value_type b) {
    return a = PrimeField::add(a, b);
}
inline PrimeField::value_type& operator-=(PrimeField::value_type& a, PrimeField::value_type b) {
    return a = PrimeField::sub(a, b);
}

}  // namespace semifiber
