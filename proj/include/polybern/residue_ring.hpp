#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "polybern/rational.hpp"

namespace polybern {

struct PrimePower {
    Int prime;
    int exponent = 0;
};

/// Trial-division factorization. Intended for desk-scale moduli; the
/// congruence sweeps never go near numbers where this would hurt.
inline std::vector<PrimePower> factorize(Int n) {
    if (n < 2) throw std::domain_error("factorize needs n >= 2");
    std::vector<PrimePower> out;
    auto strip = [&](const Int& p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.push_back({p, e});
    };
    strip(Int(2));
    for (Int p = 3; p * p <= n; p += 2) strip(p);
    if (n > 1) out.push_back({n, 1});
    return out;
}

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    auto f = factorize(n);
    return f.size() == 1 && f[0].exponent == 1;
}

inline Int euler_phi(const Int& m) {
    if (m < 1) throw std::domain_error("euler_phi needs m >= 1");
    if (m == 1) return Int(1);
    Int phi(1);
    for (const auto& [p, e] : factorize(m)) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e - 1));
        phi *= pe * (p - 1);
    }
    return phi;
}

/// Z/M with factorization and totient carried along; elements are Ints in
/// canonical range [0, M).
struct ResidueRing {
    Int modulus;
    std::vector<PrimePower> factorization;
    Int phi;

    explicit ResidueRing(const Int& m)
        : modulus(m), factorization(factorize(m)), phi(euler_phi(m)) {
        if (m < 2) throw std::domain_error("residue ring needs modulus >= 2");
    }

    static ResidueRing prime_power(const Int& p, int N) {
        if (!is_prime(p)) throw std::domain_error("p is not prime");
        if (N < 1) throw std::domain_error("prime power exponent must be >= 1");
        Int m;
        mpz_pow_ui(m.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(N));
        return ResidueRing(m);
    }

    int max_prime_exponent() const {
        int e = 0;
        for (const auto& pp : factorization) e = std::max(e, pp.exponent);
        return e;
    }
};

/// Canonical nonnegative representative of x mod ring.
inline Int ring_reduce(const Int& x, const ResidueRing& ring) {
    Int r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), ring.modulus.get_mpz_t());
    return r;
}

inline Int ring_add(const Int& a, const Int& b, const ResidueRing& ring) {
    return ring_reduce(a + b, ring);
}

inline Int ring_mul(const Int& a, const Int& b, const ResidueRing& ring) {
    return ring_reduce(a * b, ring);
}

inline Int ring_pow(const Int& x, const Int& e, const ResidueRing& ring) {
    if (e < 0) throw std::domain_error("ring_pow exponent must be nonnegative");
    Int r;
    mpz_powm(r.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), ring.modulus.get_mpz_t());
    return r;
}

inline Int ring_pow(const Int& x, long e, const ResidueRing& ring) {
    return ring_pow(x, Int(e), ring);
}

}  // namespace polybern
