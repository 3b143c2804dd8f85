#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "polybern/bernoulli.hpp"
#include "polybern/poly_bernoulli.hpp"
#include "polybern/series.hpp"

namespace polybern {

/// Double star number B*_{m1,m2} from the closed relation
/// (m2+1) B*_{m1,m2} = (m2+1) B_{m1,m2} + B_{m2+1} B^{(s1+s2)}_{m1};
/// this is the operational definition (the raw star generating function has
/// a pole along x_2 = 0 and no direct coefficient reading).
inline Rational star_double(long m1, long m2, int s1, int s2) {
    if (m1 < 0 || m2 < 0) throw std::domain_error("star_double needs nonnegative indices");
    Rational bb = double_explicit(m1, m2, s1, s2);
    Rational corr = bernoulli(m2 + 1);
    if (!corr.is_zero()) corr = corr * pb_single(m1, s1 + s2) / Rational(m2 + 1);
    return bb + corr;
}

/// The x_2-cleared double star series: the power series whose normalized
/// coefficient at (m1, m2) is m2 * B*_{m1, m2-1} for m2 >= 1 and 0 at m2 = 0.
/// Built as x2 * F(x1,x2;s1,s2;2) + (x2/(1-e^{-x2}) - 1) * S(x1; s1+s2),
/// where S is the single-index generating function. The (x2/(1-e^{-x2}) - 1)
/// factor has order >= 1 in x2, which is what clears the x2 = 0 layer.
inline Series gf_star_double_cleared(int s1, int s2, const Truncation& trunc) {
    if (trunc.nvars != 2)
        throw std::invalid_argument("gf_star_double_cleared needs a 2-variable truncation");
    const LinearForm x1 = LinearForm::var(2, 0);
    const LinearForm x2 = LinearForm::var(2, 1);
    Series f = gf_multi_indexed(GFSpec({s1, s2}, 2), trunc);
    Series single = gf_ell_sum({s1 + s2}, {x1}, {1}, trunc);
    Series bern_x2 = bernoulli_gf_of_linear_form(x2, trunc);
    return mul_by_linear_form(f, x2) + (bern_x2 - Series::one(trunc)) * single;
}

/// Cells the x_3(x_2+x_3) clearing can produce: third exponent >= 1, except
/// the isolated (m2, m3) = (0, 1) layer which neither x2*x3*S nor x3^2*S
/// reaches. Everything outside carries no star content.
inline bool triple_cell_in_clearing_image(int e2, int e3) {
    return e3 >= 1 && !(e2 == 0 && e3 == 1);
}

/// The x_3(x_2+x_3)-cleared triple star series G. Its normalized coefficient
/// at (m1,m2,m3) encodes m2 m3 B*_{m1,m2-1,m3-1} + m3(m3-1) B*_{m1,m2,m3-2}.
/// Four pieces mirror the harmonic split of the non-strict sum by which
/// neighbouring indices coincide; layers outside the clearing image are
/// zeroed (they cannot hold star content).
inline Series gf_star_triple_cleared(int s1, int s2, int s3, const Truncation& trunc) {
    if (trunc.nvars != 3)
        throw std::invalid_argument("gf_star_triple_cleared needs a 3-variable truncation");
    const LinearForm x2 = LinearForm::var(3, 1);
    const LinearForm x3 = LinearForm::var(3, 2);
    const LinearForm x23 = LinearForm::tail_sum(3, 1);
    const LinearForm x1 = LinearForm::var(3, 0);
    const LinearForm x12{{Rational(1), Rational(1), Rational(0)}};
    const LinearForm x13{{Rational(1), Rational(0), Rational(1)}};

    Series f3 = gf_multi_indexed(GFSpec({s1, s2, s3}, 3), trunc);
    Series f2_13 = gf_ell_sum({s1 + s2, s3}, {x13, x3}, {1, 1}, trunc);   // vars (x1, x3)
    Series f2_12 = gf_ell_sum({s1, s2 + s3}, {x12, x2}, {1, 1}, trunc);   // vars (x1, x2)
    Series f1 = gf_ell_sum({s1 + s2 + s3}, {x1}, {1}, trunc);
    Series bern_x2 = bernoulli_gf_of_linear_form(x2, trunc);
    Series bern_x3 = bernoulli_gf_of_linear_form(x3, trunc);

    Series g = mul_by_linear_form(mul_by_linear_form(f3, x3), x23);
    g += bern_x2 * mul_by_linear_form(f2_13, x3);
    g += mul_by_linear_form(bern_x3 * f2_12, x23);
    g += bern_x2 * bern_x3 * f1;

    Series masked(trunc);
    for (const auto& [e, c] : g.terms())
        if (triple_cell_in_clearing_image(e[1], e[2])) masked.add_term(e, c);
    return masked;
}

struct TripleCellCheck {
    IndexTuple cell;
    Rational star_side;     ///< m2 m3 B*(m1,m2-1,m3-1) + m3(m3-1) B*(m1,m2,m3-2)
    Rational series_coeff;  ///< normalized coefficient of G
};

struct StarTripleSolution {
    PBTable stars;  ///< star = true over the requested cap box
    std::vector<TripleCellCheck> inconsistent;  ///< over-determined cells that disagree
    long cells_checked = 0;
};

namespace detail {

/// G plus the solved star values it determines. Stars are solved by
/// induction on the third index: cell (a, b+1, t+1) of the relation gives
///   B*(a,b,t) = [c(a,b+1,t+1) - (t+1) t B*(a,b+1,t-1)] / ((b+1)(t+1)),
/// whose chain only ever consumes cells with second index >= 1.
struct StarTripleContext {
    std::array<int, 3> box;  // requested star box caps
    int s1, s2, s3;
    Truncation g_trunc;
    Series g;
    // stars[a][b][t], b ranging up to box[1] + box[2] so the chain closes
    std::vector<std::vector<std::vector<Rational>>> stars;

    StarTripleContext(const std::array<int, 3>& caps, int w1, int w2, int w3)
        : box(caps),
          s1(w1),
          s2(w2),
          s3(w3),
          g_trunc({caps[0], caps[1] + caps[2] + 1, caps[2] + 1},
                  caps[0] + caps[1] + caps[2] + 2),
          g(gf_star_triple_cleared(w1, w2, w3, g_trunc)) {
        const int a_max = box[0];
        const int bt_max = box[1] + box[2];
        const int t_max = box[2];
        stars.assign(static_cast<size_t>(a_max + 1),
                     std::vector<std::vector<Rational>>(
                         static_cast<size_t>(bt_max + 1),
                         std::vector<Rational>(static_cast<size_t>(t_max + 1), Rational(0))));
        for (int t = 0; t <= t_max; ++t)
            for (int a = 0; a <= a_max; ++a)
                for (int b = 0; b + t <= bt_max; ++b) {
                    Rational c = g.normalized_coefficient({a, b + 1, t + 1});
                    if (t > 0)
                        c -= Rational(static_cast<long>(t + 1) * t) * star(a, b + 1, t - 1);
                    stars[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(t)] =
                        c / Rational(static_cast<long>(b + 1) * (t + 1));
                }
    }

    bool star_available(int a, int b, int t) const {
        return a >= 0 && a <= box[0] && t >= 0 && t <= box[2] && b >= 0 &&
               b + t <= box[1] + box[2];
    }

    const Rational& star(int a, int b, int t) const {
        return stars[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(t)];
    }

    /// Star side of the relation at a cell, when the needed stars are solved.
    std::optional<Rational> star_side(int a, int b, int c) const {
        Rational acc(0);
        if (b >= 1 && c >= 1) {
            if (!star_available(a, b - 1, c - 1)) return std::nullopt;
            acc += Rational(static_cast<long>(b) * c) * star(a, b - 1, c - 1);
        }
        if (c >= 2) {
            if (!star_available(a, b, c - 2)) return std::nullopt;
            acc += Rational(static_cast<long>(c) * (c - 1)) * star(a, b, c - 2);
        }
        return acc;
    }
};

}  // namespace detail

/// Solves B*_{m1,m2,m3} over the cap box from G's coefficients and reports
/// every over-determined cell where the relation, replayed from the solved
/// values, fails to reproduce G.
inline StarTripleSolution star_triple_solve(const std::vector<int>& caps, int s1, int s2, int s3) {
    if (caps.size() != 3) throw std::invalid_argument("star_triple_solve needs 3 caps");
    for (int c : caps)
        if (c < 0) throw std::invalid_argument("negative cap");
    detail::StarTripleContext ctx({caps[0], caps[1], caps[2]}, s1, s2, s3);

    StarTripleSolution out{PBTable{GFSpec::full({s1, s2, s3}), caps, true, {}}, {}, 0};
    for (int a = 0; a <= caps[0]; ++a)
        for (int b = 0; b <= caps[1]; ++b)
            for (int t = 0; t <= caps[2]; ++t)
                out.stars.entries.push_back(
                    PBValue{{a, b, t}, out.stars.spec, ctx.star(a, b, t), true});

    // Over-determination sweep: every G cell whose star side is solvable.
    const auto& tr = ctx.g_trunc;
    for (int a = 0; a <= tr.per_var[0]; ++a)
        for (int b = 0; b <= tr.per_var[1]; ++b)
            for (int c = 0; c <= tr.per_var[2]; ++c) {
                if (a + b + c > tr.total) continue;
                auto lhs = ctx.star_side(a, b, c);
                if (!lhs) continue;
                ++out.cells_checked;
                Rational coeff = ctx.g.normalized_coefficient({a, b, c});
                if (*lhs != coeff)
                    out.inconsistent.push_back(TripleCellCheck{{a, b, c}, *lhs, coeff});
            }
    return out;
}

struct TripleRelationCell {
    IndexTuple cell;
    Rational star_side;
    Rational value_side;
    Rational series_coeff;
};

struct TripleRelationReport {
    WeightTuple weights;
    std::vector<int> box;
    long cells = 0;
    long value_route_mismatches = 0;  ///< value-route RHS vs series coefficient
    std::vector<TripleRelationCell> failures;
    bool ok() const { return failures.empty(); }
};

/// Checks the triple-index relation on the full cap box: the star side is
/// rebuilt from star_triple_solve, the non-star side from value routes
/// (series table for depth 3, closed double formula for depth 2, closed
/// single formula for depth 1), and both are compared against G's
/// coefficient. Cells outside the clearing image assert zero on both sides.
inline TripleRelationReport verify_triple_relation(const std::vector<int>& box, int s1, int s2,
                                                   int s3) {
    if (box.size() != 3) throw std::invalid_argument("verify_triple_relation needs 3 caps");
    detail::StarTripleContext ctx(
        {box[0], box[1], std::max(box[2] - 1, 0)}, s1, s2, s3);

    PBTable triple = multi_indexed_table(GFSpec::full({s1, s2, s3}), box);
    auto bb3 = [&](int a, int b, int c) -> const Rational& {
        size_t idx = (static_cast<size_t>(a) * static_cast<size_t>(box[1] + 1) +
                      static_cast<size_t>(b)) *
                         static_cast<size_t>(box[2] + 1) +
                     static_cast<size_t>(c);
        return triple.entries[idx].value;
    };

    TripleRelationReport rep;
    rep.weights = {s1, s2, s3};
    rep.box = box;
    for (int m1 = 0; m1 <= box[0]; ++m1)
        for (int m2 = 0; m2 <= box[1]; ++m2)
            for (int m3 = 0; m3 <= box[2]; ++m3) {
                ++rep.cells;
                Rational value_side(0);
                if (triple_cell_in_clearing_image(m2, m3)) {
                    if (m2 >= 1 && m3 >= 1)
                        value_side += Rational(static_cast<long>(m2) * m3) * bb3(m1, m2 - 1, m3 - 1);
                    if (m3 >= 2)
                        value_side +=
                            Rational(static_cast<long>(m3) * (m3 - 1)) * bb3(m1, m2, m3 - 2);
                    if (m3 >= 1) {
                        Rational b2v = bernoulli(m2);
                        if (!b2v.is_zero())
                            value_side += Rational(m3) * b2v *
                                          double_explicit(m1, m3 - 1, s1 + s2, s3);
                    }
                    if (m2 >= 1) {
                        Rational b3v = bernoulli(m3);
                        if (!b3v.is_zero())
                            value_side += Rational(m2) * b3v *
                                          double_explicit(m1, m2 - 1, s1, s2 + s3);
                    }
                    if (m3 >= 1) {
                        Rational bshift = bernoulli(m3 - 1);
                        if (!bshift.is_zero())
                            value_side += Rational(m3) * bshift *
                                          double_explicit(m1, m2, s1, s2 + s3);
                        Rational prod = bernoulli(m2) * bernoulli(m3);
                        if (!prod.is_zero())
                            value_side += prod * pb_single(m1, s1 + s2 + s3);
                    }
                }
                Rational coeff = ctx.g.normalized_coefficient({m1, m2, m3});
                auto star = ctx.star_side(m1, m2, m3);
                Rational star_side = star.value_or(Rational(0));  // full box is solvable
                if (value_side != coeff) ++rep.value_route_mismatches;
                if (star_side != coeff || value_side != coeff)
                    rep.failures.push_back(
                        TripleRelationCell{{m1, m2, m3}, star_side, value_side, coeff});
            }
    return rep;
}

}  // namespace polybern
