#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "polybern/polylog.hpp"

using namespace polybern;

namespace {

// Independent oracle: filter all tuples in [1,M]^r by the ordering predicate
// instead of generating ordered tuples directly.
Rational li_oracle(const WeightTuple& w, const std::vector<Rational>& z, long M, bool strict,
                   bool sharp) {
    const int r = static_cast<int>(w.size());
    std::vector<long> m(static_cast<size_t>(r), 0);
    Rational acc(0);
    auto rec = [&](auto&& self, int j) -> void {
        if (j == r) {
            for (int i = 1; i < r; ++i) {
                if (strict && m[static_cast<size_t>(i)] <= m[static_cast<size_t>(i - 1)]) return;
                if (!strict && m[static_cast<size_t>(i)] < m[static_cast<size_t>(i - 1)]) return;
            }
            Rational term(1);
            long prev = 0;
            for (int i = 0; i < r; ++i) {
                long mi = m[static_cast<size_t>(i)];
                long e = sharp ? mi - prev : mi;
                term *= rational_pow(z[static_cast<size_t>(i)], e) * weight_pow(mi, w[static_cast<size_t>(i)]);
                prev = mi;
            }
            acc += term;
            return;
        }
        for (long v = 1; v <= M; ++v) {
            m[static_cast<size_t>(j)] = v;
            self(self, j + 1);
        }
    };
    rec(rec, 0);
    return acc;
}

}  // namespace

TEST_CASE("li_ast hand sums") {
    PolylogCutoff cut3(3);
    CHECK(li_ast({1}, {Rational(1, 2)}, cut3) == Rational(2, 3));  // 1/2 + 1/8 + 1/24
    CHECK(li_ast({0, 0}, {Rational(1, 2), Rational(1, 2)}, PolylogCutoff(2)) == Rational(1, 8));
    // empty index set when M < r
    CHECK(li_ast({0, 0, 0}, {Rational(1, 2), Rational(1, 2), Rational(1, 2)}, PolylogCutoff(2))
              .is_zero());
}

TEST_CASE("li_sharp hand sums") {
    CHECK(li_sharp({0, 0}, {Rational(1, 2), Rational(1, 2)}, PolylogCutoff(2)) == Rational(1, 4));
    // z_1 = 0 kills every tuple
    CHECK(li_sharp({1, 1}, {Rational(0), Rational(1, 2)}, PolylogCutoff(5)).is_zero());
}

TEST_CASE("star variants hand sums") {
    CHECK(li_sharp_star({0, 0}, {Rational(1, 2), Rational(1, 2)}, PolylogCutoff(1)) ==
          Rational(1, 2));
    // depth 1: all four evaluators coincide
    WeightTuple w{2};
    std::vector<Rational> z{Rational(2, 5)};
    for (long M : {1L, 4L, 9L}) {
        PolylogCutoff cut(M);
        Rational a = li_ast(w, z, cut);
        CHECK(a == li_sharp(w, z, cut));
        CHECK(a == li_ast_star(w, z, cut));
        CHECK(a == li_sharp_star(w, z, cut));
    }
}

TEST_CASE("evaluators match brute-force tuple filter") {
    WeightTuple w{-1, 2};
    std::vector<Rational> z{Rational(1, 3), Rational(2, 5)};
    for (long M : {1L, 3L, 6L}) {
        PolylogCutoff cut(M);
        CHECK(li_ast(w, z, cut) == li_oracle(w, z, M, true, false));
        CHECK(li_sharp(w, z, cut) == li_oracle(w, z, M, true, true));
        CHECK(li_ast_star(w, z, cut) == li_oracle(w, z, M, false, false));
        CHECK(li_sharp_star(w, z, cut) == li_oracle(w, z, M, false, true));
    }
    WeightTuple w3{1, 0, -2};
    std::vector<Rational> z3{Rational(1, 2), Rational(1, 3), Rational(2, 5)};
    PolylogCutoff cut(4);
    CHECK(li_ast(w3, z3, cut) == li_oracle(w3, z3, 4, true, false));
    CHECK(li_sharp_star(w3, z3, cut) == li_oracle(w3, z3, 4, false, true));
}

TEST_CASE("monotone refinement in the cutoff") {
    WeightTuple w{1, 1};
    std::vector<Rational> z{Rational(1, 2), Rational(1, 3)};
    Rational prev(0);
    for (long M = 1; M <= 8; ++M) {
        Rational cur = li_sharp_star(w, z, PolylogCutoff(M));
        Rational diff = cur - prev;
        // adding index tuples with positive z only adds terms
        CHECK(diff >= Rational(0));
        prev = cur;
    }
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(li_ast({1}, {Rational(1)}, PolylogCutoff(3)), std::domain_error);
    CHECK_THROWS_AS(li_ast({1}, {Rational(3, 2)}, PolylogCutoff(3)), std::domain_error);
    CHECK_THROWS_AS(li_ast({1, 1}, {Rational(1, 2)}, PolylogCutoff(3)), std::invalid_argument);
    CHECK_THROWS_AS(PolylogCutoff(0), std::invalid_argument);
    CHECK_THROWS_AS(
        star_decomposition_check({1}, {Rational(1, 2)}, PolylogCutoff(3)),
        std::invalid_argument);
}

TEST_CASE("depth-2 star decomposition is an index-set partition") {
    auto rep = star_decomposition_check({0, 0}, {Rational(1, 2), Rational(1, 3)},
                                        PolylogCutoff(6));
    CHECK(rep.equal);
    REQUIRE(rep.rhs_terms.size() == 2);
    // at M = 1 only the collapsed term survives
    auto rep1 = star_decomposition_check({3, -1}, {Rational(1, 2), Rational(1, 3)},
                                         PolylogCutoff(1));
    CHECK(rep1.rhs_terms[0].is_zero());
    CHECK(rep1.lhs == rep1.rhs_terms[1]);
    CHECK(rep1.equal);
    // every matched cutoff, a few weight/argument mixes
    for (long M = 1; M <= 7; ++M)
        for (int s1 : {-2, 0, 1})
            for (int s2 : {-1, 2}) {
                auto r = star_decomposition_check({s1, s2}, {Rational(1, 3), Rational(2, 5)},
                                                  PolylogCutoff(M));
                CHECK(r.equal);
            }
}

TEST_CASE("depth-3 star decomposition has four summands") {
    auto rep = star_decomposition_check(
        {1, 1, 1}, {Rational(1, 2), Rational(1, 2), Rational(1, 2)}, PolylogCutoff(5));
    CHECK(rep.equal);
    REQUIRE(rep.rhs_terms.size() == 4);
    for (long M : {1L, 2L, 5L})
        for (int s1 : {-1, 2}) {
            auto r = star_decomposition_check({s1, 0, -2},
                                              {Rational(1, 2), Rational(1, 3), Rational(2, 5)},
                                              PolylogCutoff(M));
            CHECK(r.equal);
        }
}
