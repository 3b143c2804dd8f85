#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polybern/combinatorics.hpp"
#include "polybern/poly_bernoulli.hpp"
#include "polybern/residue_ring.hpp"
#include "polybern/star.hpp"

namespace polybern {

struct CongruenceFailure {
    std::vector<long> indices;
    Int lhs;
    Int rhs;
};

struct CongruenceReport {
    std::string statement;  // thm2.2-first, thm2.3-second, cor2.4-first, thm1.2, ...
    std::vector<std::pair<std::string, std::string>> params;
    long cells = 0;
    std::vector<CongruenceFailure> failures;
    double elapsed_ms = 0;
    bool ok() const { return failures.empty(); }
};

namespace detail {

inline uint64_t mod_of(const ResidueRing& ring) {
    // Sweeps run over machine words; products must fit in 64 bits.
    if (ring.modulus >= Int(1) << 32)
        throw std::domain_error("congruence sweep moduli must be < 2^32");
    return ring.modulus.get_ui();
}

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

/// Modular evaluation tables for the double explicit formula, sized once per
/// (ring, weights, index budget) and reused across a sweep.
class DoubleModKernel {
public:
    DoubleModKernel(const ResidueRing& ring, int k1, int k2, long lmax)
        : mod_(mod_of(ring)), k1_(k1), k2_(k2), lmax_(lmax) {
        if (k1 < 0 || k2 < 0)
            throw std::domain_error("pb_double_mod needs k1, k2 >= 0 (weights -k1, -k2)");
        const size_t n = static_cast<size_t>(lmax + 1);
        fact_.resize(n);
        fact_[0] = 1 % mod_;
        for (long i = 1; i <= lmax; ++i)
            fact_[static_cast<size_t>(i)] =
                fact_[static_cast<size_t>(i - 1)] * (static_cast<uint64_t>(i) % mod_) % mod_;
        stir_.assign(n, std::vector<uint64_t>(n, 0));
        stir_[0][0] = 1 % mod_;
        for (long r = 1; r <= lmax; ++r)
            for (long m = 1; m <= r; ++m)
                stir_[static_cast<size_t>(r)][static_cast<size_t>(m)] =
                    (stir_[static_cast<size_t>(r - 1)][static_cast<size_t>(m - 1)] +
                     static_cast<uint64_t>(m) % mod_ *
                         stir_[static_cast<size_t>(r - 1)][static_cast<size_t>(m)]) %
                    mod_;
        binom_.assign(n, std::vector<uint64_t>(n, 0));
        for (long a = 0; a <= lmax; ++a) {
            binom_[static_cast<size_t>(a)][0] = 1 % mod_;
            for (long b = 1; b <= a; ++b)
                binom_[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                    (binom_[static_cast<size_t>(a - 1)][static_cast<size_t>(b - 1)] +
                     (b <= a - 1 ? binom_[static_cast<size_t>(a - 1)][static_cast<size_t>(b)]
                                 : 0)) %
                    mod_;
        }
        pow1_.resize(n);
        for (long m = 0; m <= lmax; ++m)
            pow1_[static_cast<size_t>(m)] = pow_mod(static_cast<uint64_t>(m + 1), k1, mod_);
        pow2_.resize(static_cast<size_t>(2 * lmax + 3));
        for (long t = 0; t <= 2 * lmax + 2; ++t)
            pow2_[static_cast<size_t>(t)] = pow_mod(static_cast<uint64_t>(t), k2, mod_);
    }

    uint64_t modulus() const { return mod_; }

    /// B_{l1,l2}^{(-k1,-k2)} mod M, the closed double formula term by term.
    uint64_t pb_double(long l1, long l2) const {
        const long L = l1 + l2;
        if (L > lmax_) throw std::out_of_range("kernel sized below requested indices");
        uint64_t acc = 0;
        for (long m1 = 0; m1 <= L; ++m1) {
            const long nlo = std::max(l1, m1);
            const uint64_t w1 = fact_[static_cast<size_t>(m1)] * pow1_[static_cast<size_t>(m1)] % mod_;
            for (long m2 = 0; m2 <= L - nlo; ++m2) {
                const long nhi = L - m2;
                uint64_t inner = 0;
                for (long nn = nlo; nn <= nhi; ++nn) {
                    uint64_t s1 = stir_[static_cast<size_t>(nn)][static_cast<size_t>(m1)];
                    if (s1 == 0) continue;
                    uint64_t s2 = stir_[static_cast<size_t>(L - nn)][static_cast<size_t>(m2)];
                    if (s2 == 0) continue;
                    inner = (inner + s1 * s2 % mod_ *
                                         binom_[static_cast<size_t>(l2)][static_cast<size_t>(nn - l1)]) %
                            mod_;
                }
                if (inner == 0) continue;
                uint64_t term = w1 * fact_[static_cast<size_t>(m2)] % mod_ *
                                pow2_[static_cast<size_t>(m1 + m2 + 2)] % mod_ * inner % mod_;
                if ((m1 + m2 + L) % 2 != 0)
                    acc = (acc + mod_ - term) % mod_;
                else
                    acc = (acc + term) % mod_;
            }
        }
        return acc;
    }

private:
    static uint64_t pow_mod(uint64_t b, long e, uint64_t mod) {
        uint64_t r = 1 % mod;
        b %= mod;
        while (e > 0) {
            if (e & 1) r = r * b % mod;
            b = b * b % mod;
            e >>= 1;
        }
        return r;
    }

    uint64_t mod_;
    int k1_, k2_;
    long lmax_;
    std::vector<uint64_t> fact_;
    std::vector<std::vector<uint64_t>> stir_;
    std::vector<std::vector<uint64_t>> binom_;
    std::vector<uint64_t> pow1_;
    std::vector<uint64_t> pow2_;
};

/// Rectangular table of B_{n1,n2}^{(-k1,-k2)} mod M over [lo,hi]^2.
class DoubleModTable {
public:
    DoubleModTable(const ResidueRing& ring, int k1, int k2, long lo, long hi)
        : lo_(lo), hi_(hi), kernel_(ring, k1, k2, 2 * hi) {
        if (lo < 0 || hi < lo) throw std::invalid_argument("bad sweep range");
        const size_t w = static_cast<size_t>(hi - lo + 1);
        values_.resize(w * w);
        for (long n1 = lo; n1 <= hi; ++n1)
            for (long n2 = lo; n2 <= hi; ++n2)
                values_[idx(n1, n2)] = kernel_.pb_double(n1, n2);
    }

    uint64_t at(long n1, long n2) const { return values_[idx(n1, n2)]; }
    uint64_t modulus() const { return kernel_.modulus(); }
    long lo() const { return lo_; }
    long hi() const { return hi_; }

private:
    size_t idx(long n1, long n2) const {
        return static_cast<size_t>(n1 - lo_) * static_cast<size_t>(hi_ - lo_ + 1) +
               static_cast<size_t>(n2 - lo_);
    }

    long lo_, hi_;
    DoubleModKernel kernel_;
    std::vector<uint64_t> values_;
};

inline void require_prime(const Int& p) {
    if (!is_prime(p)) throw std::domain_error("p must be prime");
}

inline long phi_prime_power(long p, int N) {
    long phi = p - 1;
    for (int i = 1; i < N; ++i) phi *= p;
    return phi;
}

}  // namespace detail

/// Single modular value of the double family; agrees with double_explicit
/// reduced mod the ring modulus.
inline Int pb_double_mod(long l1, long l2, int k1, int k2, const ResidueRing& ring) {
    if (l1 < 0 || l2 < 0) throw std::domain_error("pb_double_mod needs nonnegative indices");
    detail::DoubleModKernel kern(ring, k1, k2, l1 + l2);
    return Int(static_cast<unsigned long>(kern.pb_double(l1, l2)));
}

/// Theorem-style pairwise periodicity sweep: within [lo,hi], indices >= N
/// congruent mod p^{N-1}(p-1) give congruent values mod p^N, in each slot
/// separately. Returns the two assertion reports.
inline std::vector<CongruenceReport> check_pairwise(long p, int N, int k1, int k2, long lo,
                                                    long hi) {
    detail::require_prime(Int(p));
    if (N < 1 || k1 < 1 || k2 < 1)
        throw std::domain_error("check_pairwise needs N, k1, k2 >= 1");
    detail::Stopwatch sw;
    const long period = detail::phi_prime_power(p, N);
    lo = std::max<long>(lo, N);
    ResidueRing ring = ResidueRing::prime_power(Int(p), N);
    detail::DoubleModTable table(ring, k1, k2, lo, hi);

    auto params = [&](const char* which) {
        return std::vector<std::pair<std::string, std::string>>{
            {"p", std::to_string(p)},     {"N", std::to_string(N)},
            {"k1", std::to_string(k1)},   {"k2", std::to_string(k2)},
            {"lo", std::to_string(lo)},   {"hi", std::to_string(hi)},
            {"period", std::to_string(period)}, {"assertion", which}};
    };
    CongruenceReport first{"thm2.2-first", params("vary-second-index"), 0, {}, 0};
    CongruenceReport second{"thm2.2-second", params("vary-first-index"), 0, {}, 0};

    for (long fixed = lo; fixed <= hi; ++fixed)
        for (long n = lo; n <= hi; ++n)
            for (long m = n + period; m <= hi; m += period) {
                ++first.cells;
                if (table.at(fixed, n) != table.at(fixed, m))
                    first.failures.push_back(CongruenceFailure{
                        {fixed, n, m}, Int(static_cast<unsigned long>(table.at(fixed, n))),
                        Int(static_cast<unsigned long>(table.at(fixed, m)))});
                ++second.cells;
                if (table.at(n, fixed) != table.at(m, fixed))
                    second.failures.push_back(CongruenceFailure{
                        {n, m, fixed}, Int(static_cast<unsigned long>(table.at(n, fixed))),
                        Int(static_cast<unsigned long>(table.at(m, fixed)))});
            }
    first.elapsed_ms = second.elapsed_ms = sw.ms();
    return {first, second};
}

/// phi(p^N)-window sums vanish mod p^N in each slot, for window starts
/// n1, n2 >= N.
inline std::vector<CongruenceReport> check_sum_vanishing(long p, int N, int k1, int k2, long n1,
                                                         long n2) {
    detail::require_prime(Int(p));
    if (N < 1 || k1 < 1 || k2 < 1)
        throw std::domain_error("check_sum_vanishing needs N, k1, k2 >= 1");
    if (n1 < N || n2 < N)
        throw std::domain_error("check_sum_vanishing needs window starts >= N");
    detail::Stopwatch sw;
    const long period = detail::phi_prime_power(p, N);
    ResidueRing ring = ResidueRing::prime_power(Int(p), N);
    const long hi = std::max(n1, n2) + period - 1;
    const long lo = std::min(n1, n2);
    detail::DoubleModTable table(ring, k1, k2, lo, hi);

    auto params = std::vector<std::pair<std::string, std::string>>{
        {"p", std::to_string(p)},   {"N", std::to_string(N)}, {"k1", std::to_string(k1)},
        {"k2", std::to_string(k2)}, {"n1", std::to_string(n1)}, {"n2", std::to_string(n2)},
        {"window", std::to_string(period)}};
    CongruenceReport first{"thm2.3-first", params, 1, {}, 0};
    CongruenceReport second{"thm2.3-second", params, 1, {}, 0};

    uint64_t acc1 = 0, acc2 = 0;
    for (long i = 0; i < period; ++i) {
        acc1 = (acc1 + table.at(n1 + i, n2)) % table.modulus();
        acc2 = (acc2 + table.at(n1, n2 + i)) % table.modulus();
    }
    if (acc1 != 0)
        first.failures.push_back(
            CongruenceFailure{{n1, n2}, Int(static_cast<unsigned long>(acc1)), Int(0)});
    if (acc2 != 0)
        second.failures.push_back(
            CongruenceFailure{{n1, n2}, Int(static_cast<unsigned long>(acc2)), Int(0)});
    first.elapsed_ms = second.elapsed_ms = sw.ms();
    return {first, second};
}

/// Window-sum check swept over all start pairs in [lo, hi]^2, sharing one
/// value table; the windows themselves reach hi + phi(p^N) - 1.
inline std::vector<CongruenceReport> check_sum_vanishing_sweep(long p, int N, int k1, int k2,
                                                               long lo, long hi) {
    detail::require_prime(Int(p));
    if (N < 1 || k1 < 1 || k2 < 1)
        throw std::domain_error("check_sum_vanishing_sweep needs N, k1, k2 >= 1");
    detail::Stopwatch sw;
    const long period = detail::phi_prime_power(p, N);
    lo = std::max<long>(lo, N);
    ResidueRing ring = ResidueRing::prime_power(Int(p), N);
    detail::DoubleModTable table(ring, k1, k2, lo, hi + period - 1);

    auto params = std::vector<std::pair<std::string, std::string>>{
        {"p", std::to_string(p)},   {"N", std::to_string(N)},   {"k1", std::to_string(k1)},
        {"k2", std::to_string(k2)}, {"lo", std::to_string(lo)}, {"hi", std::to_string(hi)},
        {"window", std::to_string(period)}};
    CongruenceReport first{"thm2.3-first", params, 0, {}, 0};
    CongruenceReport second{"thm2.3-second", params, 0, {}, 0};
    for (long n1 = lo; n1 <= hi; ++n1)
        for (long n2 = lo; n2 <= hi; ++n2) {
            ++first.cells;
            ++second.cells;
            uint64_t acc1 = 0, acc2 = 0;
            for (long i = 0; i < period; ++i) {
                acc1 = (acc1 + table.at(n1 + i, n2)) % table.modulus();
                acc2 = (acc2 + table.at(n1, n2 + i)) % table.modulus();
            }
            if (acc1 != 0)
                first.failures.push_back(
                    CongruenceFailure{{n1, n2}, Int(static_cast<unsigned long>(acc1)), Int(0)});
            if (acc2 != 0)
                second.failures.push_back(
                    CongruenceFailure{{n1, n2}, Int(static_cast<unsigned long>(acc2)), Int(0)});
        }
    first.elapsed_ms = second.elapsed_ms = sw.ms();
    return {first, second};
}

/// Composite-modulus corollary: phi(M)-window sums vanish mod M when both
/// window starts are >= every prime exponent of M.
inline std::vector<CongruenceReport> check_composite(long M, int k1, int k2, long n1, long n2) {
    if (M < 2) throw std::domain_error("check_composite needs M >= 2");
    if (k1 < 1 || k2 < 1) throw std::domain_error("check_composite needs k1, k2 >= 1");
    detail::Stopwatch sw;
    ResidueRing ring{Int(M)};
    const int emax = ring.max_prime_exponent();
    if (n1 < emax || n2 < emax)
        throw std::domain_error("check_composite needs n1, n2 >= max prime exponent of M");
    const long window = ring.phi.get_si();
    const long lo = std::min(n1, n2);
    const long hi = std::max(n1, n2) + window - 1;
    detail::DoubleModTable table(ring, k1, k2, lo, hi);

    auto params = std::vector<std::pair<std::string, std::string>>{
        {"M", std::to_string(M)},   {"k1", std::to_string(k1)}, {"k2", std::to_string(k2)},
        {"n1", std::to_string(n1)}, {"n2", std::to_string(n2)}, {"window", std::to_string(window)}};
    CongruenceReport first{"cor2.4-first", params, 1, {}, 0};
    CongruenceReport second{"cor2.4-second", params, 1, {}, 0};

    uint64_t acc1 = 0, acc2 = 0;
    for (long i = 0; i < window; ++i) {
        acc1 = (acc1 + table.at(n1 + i, n2)) % table.modulus();
        acc2 = (acc2 + table.at(n1, n2 + i)) % table.modulus();
    }
    if (acc1 != 0)
        first.failures.push_back(
            CongruenceFailure{{n1, n2}, Int(static_cast<unsigned long>(acc1)), Int(0)});
    if (acc2 != 0)
        second.failures.push_back(
            CongruenceFailure{{n1, n2}, Int(static_cast<unsigned long>(acc2)), Int(0)});
    first.elapsed_ms = second.elapsed_ms = sw.ms();
    return {first, second};
}

/// Single-index periodicity baseline: B_n^{(-k)} pairwise congruences and
/// phi-window vanishing mod p^N, from the exact values reduced.
inline std::vector<CongruenceReport> check_single_index_baseline(long p, int N, int k, long lo,
                                                                 long hi) {
    detail::require_prime(Int(p));
    if (N < 1 || k < 1) throw std::domain_error("baseline needs N, k >= 1");
    detail::Stopwatch sw;
    const long period = detail::phi_prime_power(p, N);
    ResidueRing ring = ResidueRing::prime_power(Int(p), N);
    lo = std::max<long>(lo, N);
    std::vector<Int> val(static_cast<size_t>(hi - lo + 1));
    for (long n = lo; n <= hi; ++n) {
        Rational v = pb_single(n, -k);
        val[static_cast<size_t>(n - lo)] = ring_reduce(v.numerator(), ring);
    }
    auto params = std::vector<std::pair<std::string, std::string>>{
        {"p", std::to_string(p)}, {"N", std::to_string(N)}, {"k", std::to_string(k)},
        {"lo", std::to_string(lo)}, {"hi", std::to_string(hi)},
        {"period", std::to_string(period)}};
    CongruenceReport pair{"thm1.2", params, 0, {}, 0};
    CongruenceReport win{"thm1.3", params, 0, {}, 0};
    for (long n = lo; n <= hi; ++n)
        for (long m = n + period; m <= hi; m += period) {
            ++pair.cells;
            const Int& a = val[static_cast<size_t>(n - lo)];
            const Int& b = val[static_cast<size_t>(m - lo)];
            if (a != b) pair.failures.push_back(CongruenceFailure{{n, m}, a, b});
        }
    for (long n = lo; n + period - 1 <= hi; ++n) {
        ++win.cells;
        Int acc(0);
        for (long i = 0; i < period; ++i) acc += val[static_cast<size_t>(n + i - lo)];
        acc = ring_reduce(acc, ring);
        if (acc != 0) win.failures.push_back(CongruenceFailure{{n}, acc, Int(0)});
    }
    pair.elapsed_ms = win.elapsed_ms = sw.ms();
    return {pair, win};
}

/// Odd-second-index star congruences: with n2 odd (> 1) the double star value
/// collapses to the plain value, so it inherits the pairwise congruences and
/// the first-index window sum. Star values are computed exactly through the
/// closed relation and reduced. (The window over a shifted second index is
/// not well-posed for non-integral star values and is deliberately omitted.)
inline CongruenceReport check_star_odd_index(long p, int N, int k1, int k2, long lo, long hi) {
    detail::require_prime(Int(p));
    if (N < 1 || k1 < 1 || k2 < 1)
        throw std::domain_error("check_star_odd_index needs N, k1, k2 >= 1");
    detail::Stopwatch sw;
    const long period = detail::phi_prime_power(p, N);
    ResidueRing ring = ResidueRing::prime_power(Int(p), N);
    lo = std::max<long>(lo, N);

    std::map<std::pair<long, long>, Int> star_cache, plain_cache;
    auto star_mod = [&](long m1, long m2) {
        auto it = star_cache.find({m1, m2});
        if (it != star_cache.end()) return it->second;
        Rational v = star_double(m1, m2, -k1, -k2);
        if (!v.is_integer()) throw std::logic_error("odd-index star value must be integral");
        return star_cache.emplace(std::pair{m1, m2}, ring_reduce(v.numerator(), ring))
            .first->second;
    };
    auto plain_mod = [&](long l1, long l2) {
        auto it = plain_cache.find({l1, l2});
        if (it != plain_cache.end()) return it->second;
        return plain_cache
            .emplace(std::pair{l1, l2},
                     ring_reduce(double_explicit(l1, l2, -k1, -k2).numerator(), ring))
            .first->second;
    };

    CongruenceReport rep{"cor3.1",
                         {{"p", std::to_string(p)},
                          {"N", std::to_string(N)},
                          {"k1", std::to_string(k1)},
                          {"k2", std::to_string(k2)},
                          {"lo", std::to_string(lo)},
                          {"hi", std::to_string(hi)},
                          {"period", std::to_string(period)}},
                         0,
                         {},
                         0};

    long n2_start = std::max<long>(lo, 3);
    if (n2_start % 2 == 0) ++n2_start;
    for (long n2 = n2_start; n2 <= hi; n2 += 2) {
        for (long n1 = lo; n1 <= hi; ++n1) {
            Int sv = star_mod(n1, n2 - 1);
            // pairwise in the second index against plain values
            for (long m2 = n2 + period; m2 <= hi; m2 += period) {
                ++rep.cells;
                Int pv = plain_mod(n1, m2 - 1);
                if (sv != pv) rep.failures.push_back(CongruenceFailure{{n1, n2, m2}, sv, pv});
            }
            // pairwise in the first index
            for (long m1 = n1 + period; m1 <= hi; m1 += period) {
                ++rep.cells;
                Int pv = plain_mod(m1, n2 - 1);
                if (sv != pv) rep.failures.push_back(CongruenceFailure{{n1, m1, n2}, sv, pv});
            }
        }
        // first-index window sum at fixed odd n2
        for (long n1 = lo; n1 + period - 1 <= hi; ++n1) {
            ++rep.cells;
            Int acc(0);
            for (long i = 0; i < period; ++i) acc += star_mod(n1 + i, n2 - 1);
            acc = ring_reduce(acc, ring);
            if (acc != 0) rep.failures.push_back(CongruenceFailure{{n1, n2}, acc, Int(0)});
        }
    }
    rep.elapsed_ms = sw.ms();
    return rep;
}

struct FinerPeriodCandidate {
    long q = 0;
    bool holds = false;
};

struct FinerPeriodReport {
    long p = 0;
    int N = 0;
    int k1 = 0, k2 = 0;
    long lo = 0, hi = 0;
    long proven_period = 0;
    std::vector<FinerPeriodCandidate> candidates;
    long minimal_working = 0;
    bool conjectural = false;  ///< a proper divisor worked on the tested range
    double elapsed_ms = 0;
};

/// Tests every divisor of the proven period as a candidate period for the
/// pairwise congruences over [lo,hi]. Range-limited evidence, not proof;
/// the proven period itself always appears and always holds.
inline FinerPeriodReport search_finer_period(long p, int N, int k1, int k2,
                                             long max_candidate_period, long lo, long hi) {
    detail::require_prime(Int(p));
    if (N < 1 || k1 < 1 || k2 < 1)
        throw std::domain_error("search_finer_period needs N, k1, k2 >= 1");
    detail::Stopwatch sw;
    const long period = detail::phi_prime_power(p, N);
    lo = std::max<long>(lo, N);
    ResidueRing ring = ResidueRing::prime_power(Int(p), N);
    detail::DoubleModTable table(ring, k1, k2, lo, hi);

    auto holds_for = [&](long q) {
        for (long fixed = lo; fixed <= hi; ++fixed)
            for (long n = lo; n <= hi; ++n)
                for (long m = n + q; m <= hi; m += q) {
                    if (table.at(fixed, n) != table.at(fixed, m)) return false;
                    if (table.at(n, fixed) != table.at(m, fixed)) return false;
                }
        return true;
    };

    FinerPeriodReport rep;
    rep.p = p;
    rep.N = N;
    rep.k1 = k1;
    rep.k2 = k2;
    rep.lo = lo;
    rep.hi = hi;
    rep.proven_period = period;
    for (long q = 1; q <= period && q <= max_candidate_period; ++q) {
        if (period % q != 0) continue;
        bool ok = (q == period) ? true : holds_for(q);
        rep.candidates.push_back(FinerPeriodCandidate{q, ok});
        if (ok && rep.minimal_working == 0) rep.minimal_working = q;
    }
    if (rep.minimal_working == 0) rep.minimal_working = period;
    rep.conjectural = rep.minimal_working < period;
    rep.elapsed_ms = sw.ms();
    return rep;
}

}  // namespace polybern
