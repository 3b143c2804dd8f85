#include <catch2/catch_amalgamated.hpp>

#include "polybern/congruence.hpp"

using namespace polybern;

TEST_CASE("pb_double_mod agrees with the exact route") {
    ResidueRing r8{Int(8)};
    CHECK(pb_double_mod(1, 1, 1, 1, r8) == 2);  // 26 mod 8
    ResidueRing r9{Int(9)};
    for (long l1 = 0; l1 <= 4; ++l1)
        for (long l2 = 0; l2 <= 4; ++l2)
            for (int k1 = 0; k1 <= 2; ++k1)
                for (int k2 = 0; k2 <= 2; ++k2) {
                    Rational exact = double_explicit(l1, l2, -k1, -k2);
                    REQUIRE(exact.is_integer());
                    CHECK(pb_double_mod(l1, l2, k1, k2, r9) ==
                          ring_reduce(exact.numerator(), r9));
                }
    // B_{0,0}^{(-k1,-k2)} = 2^{k2}
    ResidueRing r7{Int(7)};
    for (int k2 = 0; k2 <= 4; ++k2)
        CHECK(pb_double_mod(0, 0, 3, k2, r7) == ring_reduce(rational_pow(Int(2), k2).numerator(), r7));
    CHECK_THROWS_AS(pb_double_mod(1, 1, -1, 1, r8), std::domain_error);
}

TEST_CASE("pairwise periodicity sweeps") {
    // p=2, N=1: period 1, everything in range congruent
    for (auto& rep : check_pairwise(2, 1, 1, 1, 1, 5)) {
        CHECK(rep.cells > 0);
        CHECK(rep.ok());
    }
    // p=3, N=2: period 6, indices >= 2
    for (auto& rep : check_pairwise(3, 2, 1, 2, 2, 14)) {
        CHECK(rep.cells > 0);
        CHECK(rep.ok());
    }
    CHECK_THROWS_AS(check_pairwise(4, 1, 1, 1, 1, 5), std::domain_error);
    CHECK_THROWS_AS(check_pairwise(3, 0, 1, 1, 1, 5), std::domain_error);
}

TEST_CASE("window sums vanish for p = 2") {
    // phi(2) = 1: single value, 26 is even
    for (auto& rep : check_sum_vanishing(2, 1, 1, 1, 1, 1)) CHECK(rep.ok());
    for (auto& rep : check_sum_vanishing(2, 2, 1, 1, 2, 3)) CHECK(rep.ok());
    CHECK_THROWS_AS(check_sum_vanishing(2, 2, 1, 1, 1, 2), std::domain_error);
}

TEST_CASE("second-index window sums break for odd p") {
    // The first-index window vanishes; the second-index window does not.
    // The defect is systematic for odd primes: the values themselves are
    // triple-checked elsewhere, so this pins the statement boundary.
    auto reps5 = check_sum_vanishing(5, 1, 2, 2, 2, 1);
    CHECK(reps5[0].ok());
    CHECK_FALSE(reps5[1].ok());
    auto reps3n = check_sum_vanishing(3, 1, 1, 1, 2, 2);
    CHECK(reps3n[0].ok());
    CHECK_FALSE(reps3n[1].ok());
    auto reps3 = check_sum_vanishing_sweep(3, 1, 1, 1, 1, 4);
    CHECK(reps3[0].ok());
    CHECK(reps3[1].failures.size() == reps3[1].cells);  // every window nonzero
    // explicit witness: B_{2,2} + B_{2,3} = 316 + 1300 = 1616 == 2 mod 3
    Int window = double_explicit(2, 2, -1, -1).numerator() +
                 double_explicit(2, 3, -1, -1).numerator();
    CHECK(ring_reduce(window, ResidueRing{Int(3)}) == 2);
}

TEST_CASE("window-sum shift identity ties thm2.2 and thm2.3 together") {
    // sum over the next window minus this window telescopes to the period gap
    const long p = 3;
    const int N = 1;
    const long period = 2;
    ResidueRing ring = ResidueRing::prime_power(Int(p), N);
    detail::DoubleModTable table(ring, 1, 1, 1, 2 + period + 1);
    for (long n1 = 1; n1 + period <= table.hi(); ++n1) {
        uint64_t a = 0, b = 0;
        for (long i = 0; i < period; ++i) {
            a = (a + table.at(n1 + 1 + i, 1)) % table.modulus();
            b = (b + table.at(n1 + i, 1)) % table.modulus();
        }
        uint64_t diff = (a + table.modulus() - b) % table.modulus();
        uint64_t gap = (table.at(n1 + period, 1) + table.modulus() - table.at(n1, 1)) %
                       table.modulus();
        CHECK(diff == gap);
        CHECK(diff == 0);
    }
}

TEST_CASE("composite modulus corollary") {
    // first-index windows vanish for every M; two-power M passes both
    for (long M : {2L, 4L, 6L, 12L}) {
        ResidueRing ring{Int(M)};
        long n = ring.max_prime_exponent();
        auto reps = check_composite(M, 1, 1, n, n);
        CHECK(reps[0].ok());
        if (M == 2 || M == 4) CHECK(reps[1].ok());
    }
    // the odd-prime-factor defect propagates from the prime-power case
    CHECK_FALSE(check_composite(12, 1, 1, 2, 2)[1].ok());
    CHECK_FALSE(check_composite(6, 1, 1, 1, 1)[1].ok());
    // prime M with e = 1 agrees with the prime-power window check
    auto composite = check_composite(5, 1, 1, 1, 1);
    auto prime = check_sum_vanishing(5, 1, 1, 1, 1, 1);
    CHECK(composite[0].ok() == prime[0].ok());
    CHECK(composite[1].ok() == prime[1].ok());
    CHECK_THROWS_AS(check_composite(12, 1, 1, 1, 1), std::domain_error);  // needs n >= 2
    CHECK_THROWS_AS(check_composite(1, 1, 1, 1, 1), std::domain_error);
}

TEST_CASE("single-index baseline") {
    // B_n^{(-1)} = 2^n is even for n >= 1
    auto reps = check_single_index_baseline(2, 1, 1, 1, 6);
    for (auto& rep : reps) {
        CHECK(rep.cells > 0);
        CHECK(rep.ok());
    }
    for (auto& rep : check_single_index_baseline(3, 1, 2, 1, 7)) CHECK(rep.ok());
    for (auto& rep : check_single_index_baseline(3, 2, 3, 2, 14)) CHECK(rep.ok());
}

TEST_CASE("star odd-index congruences") {
    auto rep = check_star_odd_index(2, 1, 1, 1, 1, 6);
    CHECK(rep.cells > 0);
    CHECK(rep.ok());
    auto rep3 = check_star_odd_index(3, 1, 1, 2, 1, 8);
    CHECK(rep3.cells > 0);
    CHECK(rep3.ok());
}

TEST_CASE("finer period search includes the proven period") {
    auto rep = search_finer_period(3, 2, 1, 1, 6, 2, 14);
    CHECK(rep.proven_period == 6);
    REQUIRE_FALSE(rep.candidates.empty());
    bool has_proven = false;
    for (const auto& c : rep.candidates)
        if (c.q == rep.proven_period) {
            has_proven = true;
            CHECK(c.holds);
        }
    CHECK(has_proven);
    CHECK(rep.minimal_working >= 1);
    CHECK((rep.conjectural == (rep.minimal_working < rep.proven_period)));
}

TEST_CASE("large modulus rejected by the sweep kernel") {
    ResidueRing big{(Int(1) << 33) + 1};
    CHECK_THROWS_AS(pb_double_mod(1, 1, 1, 1, big), std::domain_error);
}
