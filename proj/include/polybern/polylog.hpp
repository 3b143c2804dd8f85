#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "polybern/poly_bernoulli.hpp"
#include "polybern/rational.hpp"

namespace polybern {

/// All summation indices are bounded by m_r <= M; decompositions stay exact
/// at finite cutoff because they partition that index set.
struct PolylogCutoff {
    long M = 1;
    explicit PolylogCutoff(long m) : M(m) {
        if (m < 1) throw std::invalid_argument("cutoff must be >= 1");
    }
};

namespace detail {

inline void check_polylog_args(const WeightTuple& w, const std::vector<Rational>& z) {
    if (w.empty()) throw std::invalid_argument("polylog depth must be >= 1");
    if (z.size() != w.size())
        throw std::invalid_argument("polylog argument count != depth");
    for (const auto& zj : z)
        if (!(zj.abs() < Rational(1)))
            throw std::domain_error("polylog arguments must satisfy |z| < 1");
}

/// Cached powers z^0..z^M; z^0 = 1 also for z = 0.
inline std::vector<Rational> power_row(const Rational& z, long M) {
    std::vector<Rational> row;
    row.reserve(static_cast<size_t>(M + 1));
    row.emplace_back(1);
    for (long e = 1; e <= M; ++e) row.push_back(row.back() * z);
    return row;
}

/// Shared evaluator. strict: m_1 < ... < m_r, else m_1 <= ... <= m_r.
/// sharp: exponents m_j - m_{j-1} (m_0 = 0), else plain m_j.
///
/// Evaluated by suffix recursion instead of tuple enumeration: with
/// S_j(p) = sum over admissible (m_j..m_r) given previous index p,
///   sharp, strict:      S_j(p) = z_j (w_j(p+1) S_{j+1}(p+1) + S_j(p+1))
///   sharp, non-strict:  S_j(p) = w_j(p) S_{j+1}(p) + z_j S_j(p+1)  (p >= 1)
///   ast:                S_j(p) = suffix sum of z_j^m w_j(m) S_{j+1}(m)
/// so each level costs O(M) exact rational operations. The answer is S_1(0)
/// with the m_1 >= 1 floor folded in.
inline Rational li_sum(const WeightTuple& w, const std::vector<Rational>& z,
                       const PolylogCutoff& cut, bool strict, bool sharp) {
    check_polylog_args(w, z);
    const int r = static_cast<int>(w.size());
    const long M = cut.M;
    auto widx = [&](long m, int j) { return weight_pow(m, w[static_cast<size_t>(j)]); };
    // next[m] = S_{j+1}(m) for m in [1, M]; the innermost level sees 1.
    std::vector<Rational> next(static_cast<size_t>(M + 1), Rational(1));
    std::vector<Rational> cur(static_cast<size_t>(M + 1), Rational(0));
    for (int j = r - 1; j >= 0; --j) {
        const Rational& zj = z[static_cast<size_t>(j)];
        if (sharp) {
            Rational below(0);  // S_j(p+1), rolling from p = M downwards
            for (long p = M; p >= 0; --p) {
                Rational val;
                if (strict) {
                    Rational head =
                        (p + 1 <= M) ? widx(p + 1, j) * next[static_cast<size_t>(p + 1)]
                                     : Rational(0);
                    val = zj * (head + below);
                } else if (p >= 1) {
                    val = widx(p, j) * next[static_cast<size_t>(p)] + zj * below;
                } else {
                    val = zj * below;  // p = 0: floor m >= 1 shifts once more
                }
                cur[static_cast<size_t>(p)] = val;
                below = val;
            }
        } else {
            std::vector<Rational> zp = power_row(zj, M);
            // suffix[m] = sum_{m' >= m} z^{m'} w(m') S_{j+1}(m')
            std::vector<Rational> suffix(static_cast<size_t>(M + 2), Rational(0));
            for (long m = M; m >= 1; --m)
                suffix[static_cast<size_t>(m)] = suffix[static_cast<size_t>(m + 1)] +
                                                 zp[static_cast<size_t>(m)] * widx(m, j) *
                                                     next[static_cast<size_t>(m)];
            for (long p = 0; p <= M; ++p) {
                long lb = strict ? p + 1 : std::max(p, 1L);
                cur[static_cast<size_t>(p)] =
                    (lb <= M) ? suffix[static_cast<size_t>(lb)] : Rational(0);
            }
        }
        std::swap(next, cur);
    }
    return next[0];
}

}  // namespace detail

/// sum over 1 <= m_1 < .. < m_r <= M of prod z_j^{m_j} / prod m_j^{s_j}.
inline Rational li_ast(const WeightTuple& w, const std::vector<Rational>& z,
                       const PolylogCutoff& cut) {
    return detail::li_sum(w, z, cut, /*strict=*/true, /*sharp=*/false);
}

/// Same index set with shifted exponents z_j^{m_j - m_{j-1}}.
inline Rational li_sharp(const WeightTuple& w, const std::vector<Rational>& z,
                         const PolylogCutoff& cut) {
    return detail::li_sum(w, z, cut, /*strict=*/true, /*sharp=*/true);
}

/// Non-strict ordering m_1 <= .. <= m_r.
inline Rational li_ast_star(const WeightTuple& w, const std::vector<Rational>& z,
                            const PolylogCutoff& cut) {
    return detail::li_sum(w, z, cut, /*strict=*/false, /*sharp=*/false);
}

inline Rational li_sharp_star(const WeightTuple& w, const std::vector<Rational>& z,
                              const PolylogCutoff& cut) {
    return detail::li_sum(w, z, cut, /*strict=*/false, /*sharp=*/true);
}

struct StarDecompositionReport {
    WeightTuple weights;
    std::vector<Rational> z;
    long cutoff = 0;
    Rational lhs;                     ///< sharp-star value
    std::vector<Rational> rhs_terms;  ///< collapsed-weight sharp values
    Rational rhs;
    bool equal = false;
};

/// Harmonic decomposition of the non-strict sharp sum into strict sharp sums
/// with collapsed weights; an index-set partition, so exact at every matched
/// cutoff. Depth 2: Li#*_{s1,s2}(z1,z2) = Li#_{s1,s2}(z1,z2) + Li#_{s1+s2}(z1).
/// Depth 3 adds the four-term split over which neighbours coincide.
inline StarDecompositionReport star_decomposition_check(const WeightTuple& w,
                                                        const std::vector<Rational>& z,
                                                        const PolylogCutoff& cut) {
    detail::check_polylog_args(w, z);
    const int r = static_cast<int>(w.size());
    if (r != 2 && r != 3)
        throw std::invalid_argument("star decomposition check supports depth 2 or 3");
    StarDecompositionReport rep;
    rep.weights = w;
    rep.z = z;
    rep.cutoff = cut.M;
    rep.lhs = li_sharp_star(w, z, cut);
    if (r == 2) {
        rep.rhs_terms.push_back(li_sharp(w, z, cut));
        rep.rhs_terms.push_back(li_sharp({w[0] + w[1]}, {z[0]}, cut));
    } else {
        rep.rhs_terms.push_back(li_sharp(w, z, cut));
        rep.rhs_terms.push_back(li_sharp({w[0] + w[1], w[2]}, {z[0], z[2]}, cut));
        rep.rhs_terms.push_back(li_sharp({w[0], w[1] + w[2]}, {z[0], z[1]}, cut));
        rep.rhs_terms.push_back(li_sharp({w[0] + w[1] + w[2]}, {z[0]}, cut));
    }
    rep.rhs = Rational(0);
    for (const auto& t : rep.rhs_terms) rep.rhs += t;
    rep.equal = (rep.lhs == rep.rhs);
    return rep;
}

}  // namespace polybern
