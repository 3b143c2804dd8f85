#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "polybern/series.hpp"

using namespace polybern;

namespace {

Truncation t2(int cap, int total) { return Truncation::uniform(2, cap, total); }

Series random_series(const Truncation& tr, std::mt19937& rng, int max_terms = 6) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 4);
    Series s(tr);
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        MultiExponent e(static_cast<size_t>(tr.nvars));
        for (int j = 0; j < tr.nvars; ++j) {
            std::uniform_int_distribution<int> d(0, tr.per_var[static_cast<size_t>(j)]);
            e[static_cast<size_t>(j)] = d(rng);
        }
        s.add_term(e, Rational(num(rng), den(rng)));
    }
    return s;
}

}  // namespace

TEST_CASE("series term storage drops zeros and respects truncation") {
    Truncation tr = t2(2, 3);
    Series s(tr);
    s.add_term({1, 1}, Rational(1));
    s.add_term({1, 1}, Rational(-1));
    CHECK(s.is_zero());
    s.add_term({2, 2}, Rational(5));  // total degree 4 > 3, discarded
    CHECK(s.is_zero());
    CHECK_THROWS_AS(s.coefficient({3, 0}), std::out_of_range);
}

TEST_CASE("basic ring identities") {
    Truncation tr = t2(2, 4);
    Series x1 = Series::monomial(tr, {1, 0}, Rational(1));
    Series x2 = Series::monomial(tr, {0, 1}, Rational(1));
    CHECK((x1 * x2).coefficient({1, 1}) == Rational(1));
    Series z(tr);
    CHECK((x1 * z).is_zero());
    Series a = x1 + x2;
    CHECK((a + a.scaled(Rational(-1))).is_zero());
}

TEST_CASE("ring axioms on random series") {
    std::mt19937 rng(20240817);
    Truncation tr = t2(3, 5);
    for (int iter = 0; iter < 60; ++iter) {
        Series a = random_series(tr, rng);
        Series b = random_series(tr, rng);
        Series c = random_series(tr, rng);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("one_minus_exp_neg expansions") {
    Truncation tr1({2}, 2);
    Series s = one_minus_exp_neg(LinearForm::var(1, 0), tr1);
    CHECK(s.coefficient({1}) == Rational(1));
    CHECK(s.coefficient({2}) == Rational(-1, 2));
    CHECK(s.coefficient({0}).is_zero());

    // multinomial oracle: -(x1+x2)^2/2 contributes -1 at x1 x2
    Truncation tr = t2(2, 2);
    Series t = one_minus_exp_neg(LinearForm::tail_sum(2, 0), tr);
    CHECK(t.coefficient({1, 1}) == Rational(-1));
    CHECK(t.coefficient({1, 0}) == Rational(1));

    LinearForm zero{{Rational(0), Rational(0)}};
    CHECK(one_minus_exp_neg(zero, tr).is_zero());
}

TEST_CASE("one_minus_exp_neg degree-1 part equals the form") {
    Truncation tr = Truncation::uniform(3, 3, 6);
    LinearForm f{{Rational(2), Rational(-1, 3), Rational(0)}};
    Series s = one_minus_exp_neg(f, tr);
    CHECK(s.coefficient({1, 0, 0}) == Rational(2));
    CHECK(s.coefficient({0, 1, 0}) == Rational(-1, 3));
    CHECK(s.coefficient({0, 0, 1}).is_zero());
    CHECK(s.coefficient({0, 0, 0}).is_zero());
}

TEST_CASE("pow_nilbase") {
    Truncation tr1({2}, 2);
    Series base = one_minus_exp_neg(LinearForm::var(1, 0), tr1);  // x - x^2/2
    CHECK(pow_nilbase(base, 0) == Series::one(tr1));
    Series sq = pow_nilbase(base, 2);
    CHECK(sq.coefficient({2}) == Rational(1));
    CHECK(sq.coefficient({1}).is_zero());
    CHECK(pow_nilbase(base, tr1.total + 1).is_zero());
    CHECK_THROWS_AS(pow_nilbase(Series::one(tr1), 2), std::domain_error);
}

TEST_CASE("bernoulli_gf values and defining identity") {
    Truncation tr = t2(3, 6);
    LinearForm x2 = LinearForm::var(2, 1);
    Series g = bernoulli_gf_of_linear_form(x2, tr);
    CHECK(g.coefficient({0, 0}) == Rational(1));
    CHECK(g.coefficient({0, 1}) == Rational(1, 2));
    CHECK(g.coefficient({0, 2}) == Rational(1, 12));

    // product with 1 - e^{-f} recovers f, for forms over 1..3 variables
    for (int nv = 1; nv <= 3; ++nv) {
        Truncation trn = Truncation::uniform(nv, 4, 6);
        LinearForm f = LinearForm::tail_sum(nv, 0);
        Series lhs = bernoulli_gf_of_linear_form(f, trn) * one_minus_exp_neg(f, trn);
        CHECK(lhs == Series::from_linear_form(f, trn));
    }

    // x2 + x3 cross coefficient: B_2 (x2+x3)^2/2! gives 1/6 at x2 x3
    Truncation tr3 = Truncation::uniform(3, 2, 4);
    Series g23 = bernoulli_gf_of_linear_form(LinearForm::tail_sum(3, 1), tr3);
    CHECK(g23.coefficient({0, 1, 1}) == Rational(1, 6));

    CHECK_THROWS_AS(bernoulli_gf_of_linear_form(LinearForm{{Rational(0), Rational(0)}}, tr),
                    std::invalid_argument);
}

TEST_CASE("coefficient and normalized coefficient") {
    Truncation tr = t2(2, 4);
    Series m = Series::monomial(tr, {1, 1}, Rational(1));
    CHECK(m.coefficient({1, 1}) == Rational(1));
    Series half_sq = Series::monomial(Truncation({2}, 2), {2}, Rational(1, 2));
    CHECK(half_sq.normalized_coefficient({2}) == Rational(1));
    CHECK_THROWS_AS(m.coefficient({5, 0}), std::out_of_range);
}

TEST_CASE("mul_by_linear_form") {
    Truncation tr = Truncation::uniform(3, 2, 4);
    LinearForm x2 = LinearForm::var(3, 1);
    LinearForm x23 = LinearForm::tail_sum(3, 1);
    CHECK(mul_by_linear_form(Series::one(tr), x2) ==
          Series::monomial(tr, {0, 1, 0}, Rational(1)));
    Series x3 = Series::monomial(tr, {0, 0, 1}, Rational(1));
    Series prod = mul_by_linear_form(x3, x23);
    CHECK(prod.coefficient({0, 1, 1}) == Rational(1));
    CHECK(prod.coefficient({0, 0, 2}) == Rational(1));

    std::mt19937 rng(7);
    for (int iter = 0; iter < 20; ++iter) {
        Series a = random_series(tr, rng);
        Series two_steps = mul_by_linear_form(mul_by_linear_form(a, x3.is_zero() ? x2 : LinearForm::var(3, 2)), x23);
        Series direct = a * (Series::from_linear_form(LinearForm::var(3, 2), tr) *
                             Series::from_linear_form(x23, tr));
        CHECK(two_steps == direct);
    }
}

TEST_CASE("truncation monotonicity") {
    Truncation big = t2(5, 8);
    Truncation small = t2(3, 4);
    LinearForm f = LinearForm::tail_sum(2, 0);
    CHECK(one_minus_exp_neg(f, big).restricted(small) == one_minus_exp_neg(f, small));
    CHECK(bernoulli_gf_of_linear_form(f, big).restricted(small) ==
          bernoulli_gf_of_linear_form(f, small));

    std::mt19937 rng(99);
    for (int iter = 0; iter < 30; ++iter) {
        Series a = random_series(big, rng);
        Series b = random_series(big, rng);
        CHECK((a * b).restricted(small) == a.restricted(small) * b.restricted(small));
        CHECK((a + b).restricted(small) == a.restricted(small) + b.restricted(small));
    }
}

TEST_CASE("truncation mismatch rejected") {
    Series a(t2(2, 3));
    Series b(t2(2, 4));
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
}
