#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "polybern/bernoulli.hpp"
#include "polybern/combinatorics.hpp"
#include "polybern/rational.hpp"
#include "polybern/series.hpp"

namespace polybern {

using WeightTuple = std::vector<int>;
using IndexTuple = std::vector<int>;

/// Parameters of the multi-indexed generating function
/// F(x_1..x_r; s_1..s_r; d): ell-sum of prod_j (1-e^{-(x_j+..+x_r)})^{l_j - delta_j(d)}
/// over prod_j (l_1+..+l_j)^{s_j}, with delta_j(d) = 1 for j <= d else 0.
struct GFSpec {
    int r = 1;
    WeightTuple weights;
    int d = 1;

    GFSpec(WeightTuple s, int d_) : r(static_cast<int>(s.size())), weights(std::move(s)), d(d_) {
        if (r < 1) throw std::invalid_argument("depth must be >= 1");
        if (d < 1 || d > r) throw std::invalid_argument("need 1 <= d <= r");
    }

    static GFSpec full(WeightTuple s) {
        int depth = static_cast<int>(s.size());
        return GFSpec(std::move(s), depth);
    }

    int delta(int j) const { return j <= d ? 1 : 0; }  // 1-based j
};

struct PBValue {
    IndexTuple indices;
    GFSpec spec;
    Rational value;
    bool star = false;
};

/// Dense table over a cap box, rows in lexicographic index order.
struct PBTable {
    GFSpec spec;
    std::vector<int> caps;
    bool star = false;
    std::vector<PBValue> entries;
};

/// 1/L^s as an exact rational (integer when s <= 0).
inline Rational weight_pow(long base, int s) {
    return rational_pow(Int(base), static_cast<long>(-s));
}

/// B_n^{(k)} = (-1)^n sum_{m=0}^n (-1)^m m! S(n,m) / (m+1)^k.
inline Rational pb_single(long n, int k) {
    if (n < 0) throw std::domain_error("pb_single needs n >= 0");
    Rational acc(0);
    Rational sign(1);
    Int fact(1);
    for (long m = 0; m <= n; ++m) {
        if (m > 0) {
            fact *= m;
            sign = -sign;
        }
        const Int& s = stirling2(n, m);
        if (s != 0) acc += sign * Rational(fact * s) * weight_pow(m + 1, k);
    }
    return (n % 2 == 0) ? acc : -acc;
}

/// Generic ell-sum builder: sum over l in [1,inf)^k of
///   prod_j (1-e^{-forms[j]})^{l_j - deltas[j]} / prod_j (l_1+..+l_j)^{weights[j]}.
/// Each factor has order >= 1, so only tuples with sum (l_j - deltas[j]) <= total
/// cap contribute; the enumeration below shares partial products across the
/// tuple tree and is exact.
inline Series gf_ell_sum(const WeightTuple& weights, const std::vector<LinearForm>& forms,
                         const std::vector<int>& deltas, const Truncation& trunc) {
    const int k = static_cast<int>(weights.size());
    if (static_cast<int>(forms.size()) != k || static_cast<int>(deltas.size()) != k)
        throw std::invalid_argument("gf_ell_sum argument length mismatch");
    std::vector<Series> z;
    z.reserve(static_cast<size_t>(k));
    for (const auto& f : forms) {
        if (f.is_zero()) throw std::invalid_argument("gf_ell_sum form must be nonzero");
        z.push_back(one_minus_exp_neg(f, trunc));
    }
    Series acc(trunc);
    // Depth-first over l_1..l_k, carrying the running product of Z powers,
    // the spent total order, the prefix sum of l, and the weight so far.
    auto rec = [&](auto&& self, int j, int used, const Series& partial, long prefix,
                   const Rational& w) -> void {
        const int dj = deltas[static_cast<size_t>(j)];
        const int emin = 1 - dj;  // exponent of the first tuple entry l_j = 1
        Series running = partial;
        if (emin == 1) {
            running *= z[static_cast<size_t>(j)];
            if (running.is_zero()) return;
        }
        for (int e = emin; used + e <= trunc.total; ++e) {
            if (e > emin) {
                running *= z[static_cast<size_t>(j)];
                if (running.is_zero()) break;
            }
            long lj = e + dj;
            Rational wj = w * weight_pow(prefix + lj, weights[static_cast<size_t>(j)]);
            if (j == k - 1)
                acc.add_scaled(running, wj);
            else
                self(self, j + 1, used + e, running, prefix + lj, wj);
        }
    };
    rec(rec, 0, 0, Series::one(trunc), 0, Rational(1));
    return acc;
}

/// F(x_1..x_r; s; d) of the multi-indexed family, exact under trunc.
inline Series gf_multi_indexed(const GFSpec& spec, const Truncation& trunc) {
    if (trunc.nvars != spec.r)
        throw std::invalid_argument("truncation variable count != depth");
    std::vector<LinearForm> forms;
    std::vector<int> deltas;
    forms.reserve(static_cast<size_t>(spec.r));
    for (int j = 1; j <= spec.r; ++j) {
        forms.push_back(LinearForm::tail_sum(spec.r, j - 1));
        deltas.push_back(spec.delta(j));
    }
    return gf_ell_sum(spec.weights, forms, deltas, trunc);
}

/// Smallest truncation that yields the requested coefficient exactly.
inline Truncation truncation_for_index(const IndexTuple& m) {
    std::vector<int> caps(m.begin(), m.end());
    int total = std::accumulate(m.begin(), m.end(), 0);
    return Truncation(caps, total);
}

/// B^{(s),(d)}_{m_1..m_r} by normalized-coefficient extraction; the d = r
/// case is the multi-indexed poly-Bernoulli number proper.
inline PBValue multi_indexed(const IndexTuple& m, const GFSpec& spec) {
    if (static_cast<int>(m.size()) != spec.r)
        throw std::invalid_argument("index tuple length != depth");
    for (int v : m)
        if (v < 0) throw std::domain_error("negative lower index");
    Series f = gf_multi_indexed(spec, truncation_for_index(m));
    MultiExponent e(m.begin(), m.end());
    return PBValue{m, spec, f.normalized_coefficient(e), false};
}

/// Box of values from a single generating-function build. A total_cap below
/// the cap sum restricts both the truncation and the emitted cells.
inline PBTable multi_indexed_table(const GFSpec& spec, const std::vector<int>& caps,
                                   int total_cap = -1) {
    if (static_cast<int>(caps.size()) != spec.r)
        throw std::invalid_argument("cap vector length != depth");
    const int cap_sum = std::accumulate(caps.begin(), caps.end(), 0);
    const int total = (total_cap >= 0) ? std::min(total_cap, cap_sum) : cap_sum;
    Truncation trunc(caps, total);
    Series f = gf_multi_indexed(spec, trunc);
    PBTable table{spec, caps, false, {}};
    IndexTuple m(static_cast<size_t>(spec.r), 0);
    auto rec = [&](auto&& self, int pos, int used) -> void {
        if (pos == spec.r) {
            MultiExponent e(m.begin(), m.end());
            table.entries.push_back(PBValue{m, spec, f.normalized_coefficient(e), false});
            return;
        }
        for (int v = 0; v <= caps[static_cast<size_t>(pos)] && used + v <= total; ++v) {
            m[static_cast<size_t>(pos)] = v;
            self(self, pos + 1, used + v);
        }
        m[static_cast<size_t>(pos)] = 0;
    };
    rec(rec, 0, 0);
    return table;
}

/// Independent series route for B_n^{(k)}: normalized t^n coefficient of
/// sum_{m>=1} (1-e^{-t})^{m-1} / m^k.
inline Rational pb_single_gf_oracle(long n, int k, int cap) {
    if (cap < n) throw std::out_of_range("pb_single_gf_oracle truncation below requested index");
    Truncation trunc({cap}, cap);
    Series f = gf_ell_sum({k}, {LinearForm::var(1, 0)}, {1}, trunc);
    return f.normalized_coefficient({static_cast<int>(n)});
}

inline Rational pb_single_gf_oracle(long n, int k) {
    return pb_single_gf_oracle(n, k, static_cast<int>(n));
}

/// Arakawa-Kaneko multiple poly-Bernoulli number: normalized t^n coefficient
/// of Li_{k_1..k_r}(z)/z^r at z = 1-e^{-t}, via the strictly-increasing-tuple
/// sum z^{m_r - r} / prod m_i^{k_i}. Tuple weights are folded into scalar
/// prefix sums, so only one univariate power family is built.
inline Rational mpb_arakawa_kaneko(long n, const WeightTuple& k, int cap) {
    if (cap < n) throw std::out_of_range("mpb_arakawa_kaneko truncation below requested index");
    const int r = static_cast<int>(k.size());
    if (r < 1) throw std::invalid_argument("depth must be >= 1");
    const long mmax = cap + r;
    // w[j][m] = sum over 1 <= m_1 < .. < m_j = m of prod 1/m_i^{k_i}
    std::vector<Rational> prev(static_cast<size_t>(mmax + 1), Rational(0));
    for (long m = 1; m <= mmax; ++m)
        prev[static_cast<size_t>(m)] = weight_pow(m, k[0]);
    for (int j = 2; j <= r; ++j) {
        std::vector<Rational> cur(static_cast<size_t>(mmax + 1), Rational(0));
        Rational below(0);  // sum of prev over indices < m
        for (long m = 1; m <= mmax; ++m) {
            cur[static_cast<size_t>(m)] = below * weight_pow(m, k[static_cast<size_t>(j - 1)]);
            below += prev[static_cast<size_t>(m)];
        }
        prev = std::move(cur);
    }
    Truncation trunc({cap}, cap);
    Series z = one_minus_exp_neg(LinearForm::var(1, 0), trunc);
    Series acc(trunc);
    Series zpow = Series::one(trunc);
    for (long m = r; m <= mmax; ++m) {
        if (m > r) {
            zpow *= z;
            if (zpow.is_zero()) break;
        }
        acc.add_scaled(zpow, prev[static_cast<size_t>(m)]);
    }
    return acc.normalized_coefficient({static_cast<int>(n)});
}

inline Rational mpb_arakawa_kaneko(long n, const WeightTuple& k) {
    return mpb_arakawa_kaneko(n, k, static_cast<int>(n));
}

/// Closed double explicit formula:
/// B_{l1,l2}^{(k1,k2)} = sum_{m1,m2=0}^{L} (-1)^{m1+m2+L} m1! m2!
///   / ((m1+1)^{k1} (m1+m2+2)^{k2}) * sum_n S(n,m1) S(L-n,m2) C(l2, n-l1),
/// L = l1+l2. The out-of-range binomial convention keeps the n-sum honest.
inline Rational double_explicit(long l1, long l2, int k1, int k2) {
    if (l1 < 0 || l2 < 0) throw std::domain_error("double_explicit needs nonnegative indices");
    const long L = l1 + l2;
    Rational acc(0);
    Int fact_m1(1);
    for (long m1 = 0; m1 <= L; ++m1) {
        if (m1 > 0) fact_m1 *= m1;
        Rational w1 = Rational(fact_m1) * weight_pow(m1 + 1, k1);
        Int fact_m2(1);
        for (long m2 = 0; m2 <= L; ++m2) {
            if (m2 > 0) fact_m2 *= m2;
            Int inner(0);
            const long nlo = std::max(l1, m1);
            const long nhi = std::min(L, L - m2);
            for (long n = nlo; n <= nhi; ++n) {
                const Int& s1 = stirling2(n, m1);
                if (s1 == 0) continue;
                const Int& s2 = stirling2(L - n, m2);
                if (s2 == 0) continue;
                inner += s1 * s2 * binomial(l2, n - l1);
            }
            if (inner == 0) continue;
            Rational term = w1 * Rational(fact_m2) * weight_pow(m1 + m2 + 2, k2) * Rational(inner);
            if ((m1 + m2 + L) % 2 != 0) term = -term;
            acc += term;
        }
    }
    return acc;
}

struct DualityReport {
    IndexTuple m;
    IndexTuple k;
    Rational lhs;  // B_m^{(-k)}
    Rational rhs;  // B_k^{(-m)}
    bool equal = false;
};

/// B^{(-k_1..-k_r)}_{m_1..m_r} vs B^{(-m_1..-m_r)}_{k_1..k_r}, d = r.
inline DualityReport duality_check(const IndexTuple& m, const IndexTuple& k) {
    if (m.size() != k.size()) throw std::invalid_argument("duality index tuples differ in depth");
    const int r = static_cast<int>(m.size());
    for (int v : m)
        if (v < 0) throw std::domain_error("duality indices must be nonnegative");
    for (int v : k)
        if (v < 0) throw std::domain_error("duality indices must be nonnegative");
    Rational lhs, rhs;
    if (r == 1) {
        lhs = pb_single(m[0], -k[0]);
        rhs = pb_single(k[0], -m[0]);
    } else {
        WeightTuple neg_k, neg_m;
        for (int v : k) neg_k.push_back(-v);
        for (int v : m) neg_m.push_back(-v);
        lhs = multi_indexed(m, GFSpec::full(neg_k)).value;
        rhs = multi_indexed(k, GFSpec::full(neg_m)).value;
    }
    return DualityReport{m, k, lhs, rhs, lhs == rhs};
}

}  // namespace polybern
