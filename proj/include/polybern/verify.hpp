#pragma once

#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "polybern/congruence.hpp"
#include "polybern/parallel.hpp"
#include "polybern/polylog.hpp"
#include "polybern/star.hpp"

namespace polybern {

struct SuiteReport {
    std::string name;
    long cells = 0;
    std::vector<std::string> failures;
    double elapsed_ms = 0;
    std::string note;
    bool ok() const { return failures.empty(); }
};

namespace detail {

template <typename... Args>
std::string cat(Args&&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

inline void merge_congruence(SuiteReport& suite, const CongruenceReport& rep) {
    suite.cells += rep.cells;
    for (const auto& f : rep.failures) {
        std::ostringstream os;
        os << rep.statement << " indices(";
        for (size_t i = 0; i < f.indices.size(); ++i) os << (i ? "," : "") << f.indices[i];
        os << ") lhs=" << to_decimal(f.lhs) << " rhs=" << to_decimal(f.rhs);
        for (const auto& [k, v] : rep.params) os << " " << k << "=" << v;
        suite.failures.push_back(os.str());
    }
}

}  // namespace detail

/// Criterion 1: B_n^{(1)} is the classical Bernoulli number.
inline SuiteReport verify_classical_reduction(long max_n = 20) {
    detail::Stopwatch sw;
    SuiteReport rep{"classical-reduction", 0, {}, 0, {}};
    for (long n = 0; n <= max_n; ++n) {
        ++rep.cells;
        if (pb_single(n, 1) != bernoulli(n))
            rep.failures.push_back(detail::cat("pb_single(", n, ",1) != B_", n));
    }
    rep.elapsed_ms = sw.ms();
    return rep;
}

/// Criterion 2: single duality B_m^{(-k)} = B_k^{(-m)}.
inline SuiteReport verify_single_duality(int max_mk = 10) {
    detail::Stopwatch sw;
    SuiteReport rep{"single-duality", 0, {}, 0, {}};
    for (int m = 0; m <= max_mk; ++m)
        for (int k = 0; k <= max_mk; ++k) {
            ++rep.cells;
            if (pb_single(m, -k) != pb_single(k, -m))
                rep.failures.push_back(detail::cat("duality fails at m=", m, " k=", k));
        }
    rep.elapsed_ms = sw.ms();
    return rep;
}

/// Criterion 3: closed single formula vs generating-function extraction.
inline SuiteReport verify_single_routes(long max_n = 12, int kmin = -4, int kmax = 4) {
    detail::Stopwatch sw;
    SuiteReport rep{"single-route-equivalence", 0, {}, 0, {}};
    for (long n = 0; n <= max_n; ++n)
        for (int k = kmin; k <= kmax; ++k) {
            ++rep.cells;
            if (pb_single(n, k) != pb_single_gf_oracle(n, k, static_cast<int>(max_n)))
                rep.failures.push_back(detail::cat("routes differ at n=", n, " k=", k));
        }
    rep.elapsed_ms = sw.ms();
    return rep;
}

/// Criteria 4 and 13 share this: closed double formula vs the two-variable
/// generating function, with anchors pinned, at an optional cap surplus.
inline SuiteReport verify_double_routes(long lsum_max = 6, int kmin = -3, int kmax = 3,
                                        int extra_cap = 0) {
    detail::Stopwatch sw;
    SuiteReport rep{"double-route-equivalence", 0, {}, 0, {}};
    const int cap = static_cast<int>(lsum_max) + extra_cap;
    for (int k1 = kmin; k1 <= kmax; ++k1)
        for (int k2 = kmin; k2 <= kmax; ++k2) {
            PBTable t = multi_indexed_table(GFSpec({k1, k2}, 2), {cap, cap});
            for (const auto& v : t.entries) {
                const long l1 = v.indices[0], l2 = v.indices[1];
                if (l1 + l2 > lsum_max) continue;
                ++rep.cells;
                if (v.value != double_explicit(l1, l2, k1, k2))
                    rep.failures.push_back(
                        detail::cat("mismatch at l=(", l1, ",", l2, ") k=(", k1, ",", k2, ")"));
            }
        }
    // anchors
    struct Anchor {
        long l1, l2;
        int k1, k2;
        Rational expect;
    };
    const Anchor anchors[] = {{1, 1, -1, -1, Rational(26)},
                              {1, 0, 0, -1, Rational(3)},
                              {0, 0, -2, -3, Rational(8)},
                              {0, 0, 2, 2, Rational(1, 4)}};
    for (const auto& a : anchors) {
        ++rep.cells;
        PBValue v = multi_indexed({static_cast<int>(a.l1), static_cast<int>(a.l2)},
                                  GFSpec({a.k1, a.k2}, 2));
        if (v.value != a.expect || double_explicit(a.l1, a.l2, a.k1, a.k2) != a.expect)
            rep.failures.push_back(detail::cat("anchor (", a.l1, ",", a.l2, ") failed"));
    }
    rep.elapsed_ms = sw.ms();
    return rep;
}

/// Criterion 6: nonpositive weights give integers (r = 2, d = 2 grid).
inline SuiteReport verify_integrality(long lsum_max = 6, int kmax = 3) {
    detail::Stopwatch sw;
    SuiteReport rep{"integrality", 0, {}, 0, {}};
    for (int k1 = 0; k1 <= kmax; ++k1)
        for (int k2 = 0; k2 <= kmax; ++k2) {
            PBTable t = multi_indexed_table(GFSpec({-k1, -k2}, 2),
                                            {static_cast<int>(lsum_max), static_cast<int>(lsum_max)});
            for (const auto& v : t.entries) {
                if (v.indices[0] + v.indices[1] > lsum_max) continue;
                ++rep.cells;
                if (!v.value.is_integer())
                    rep.failures.push_back(detail::cat("non-integer at (", v.indices[0], ",",
                                                       v.indices[1], ") k=(", -k1, ",", -k2,
                                                       ")"));
            }
        }
    rep.elapsed_ms = sw.ms();
    return rep;
}

/// Criterion 5: multi-indexed duality at d = r.
inline SuiteReport verify_multi_duality(int max_r2 = 5, int max_r3 = 3) {
    detail::Stopwatch sw;
    SuiteReport rep{"multi-duality", 0, {}, 0, {}};

    {  // r = 2: one table per weight tuple, then compare transposed lookups
        const int n = max_r2;
        std::map<std::pair<int, int>, PBTable> tables;
        for (int k1 = 0; k1 <= n; ++k1)
            for (int k2 = 0; k2 <= n; ++k2)
                tables.emplace(std::pair{k1, k2},
                               multi_indexed_table(GFSpec({-k1, -k2}, 2), {n, n}));
        auto at = [&](int k1, int k2, int m1, int m2) -> const Rational& {
            const PBTable& t = tables.at({k1, k2});
            return t.entries[static_cast<size_t>(m1) * static_cast<size_t>(n + 1) +
                             static_cast<size_t>(m2)]
                .value;
        };
        for (int m1 = 0; m1 <= n; ++m1)
            for (int m2 = 0; m2 <= n; ++m2)
                for (int k1 = 0; k1 <= n; ++k1)
                    for (int k2 = 0; k2 <= n; ++k2) {
                        ++rep.cells;
                        if (at(k1, k2, m1, m2) != at(m1, m2, k1, k2))
                            rep.failures.push_back(detail::cat("r2 duality fails m=(", m1, ",",
                                                               m2, ") k=(", k1, ",", k2, ")"));
                    }
    }

    {  // r = 3
        const int n = max_r3;
        std::map<std::array<int, 3>, PBTable> tables;
        for (int k1 = 0; k1 <= n; ++k1)
            for (int k2 = 0; k2 <= n; ++k2)
                for (int k3 = 0; k3 <= n; ++k3)
                    tables.emplace(std::array{k1, k2, k3},
                                   multi_indexed_table(GFSpec({-k1, -k2, -k3}, 3), {n, n, n}));
        auto at = [&](std::array<int, 3> k, std::array<int, 3> m) -> const Rational& {
            const PBTable& t = tables.at(k);
            size_t idx = (static_cast<size_t>(m[0]) * static_cast<size_t>(n + 1) +
                          static_cast<size_t>(m[1])) *
                             static_cast<size_t>(n + 1) +
                         static_cast<size_t>(m[2]);
            return t.entries[idx].value;
        };
        for (int m1 = 0; m1 <= n; ++m1)
            for (int m2 = 0; m2 <= n; ++m2)
                for (int m3 = 0; m3 <= n; ++m3)
                    for (int k1 = 0; k1 <= n; ++k1)
                        for (int k2 = 0; k2 <= n; ++k2)
                            for (int k3 = 0; k3 <= n; ++k3) {
                                ++rep.cells;
                                if (at({k1, k2, k3}, {m1, m2, m3}) !=
                                    at({m1, m2, m3}, {k1, k2, k3}))
                                    rep.failures.push_back(
                                        detail::cat("r3 duality fails m=(", m1, ",", m2, ",", m3,
                                                    ") k=(", k1, ",", k2, ",", k3, ")"));
                            }
    }
    rep.elapsed_ms = sw.ms();
    return rep;
}

/// Criterion 7: closed star relation vs cleared-series extraction, plus the
/// x2-clearing zero layer.
inline SuiteReport verify_star_double(int mmax = 6, int smin = -3, int smax = 1,
                                      int extra_cap = 0) {
    detail::Stopwatch sw;
    SuiteReport rep{"star-double", 0, {}, 0, {}};
    const int c1 = mmax + extra_cap;
    const int c2 = mmax + 1 + extra_cap;
    for (int s1 = smin; s1 <= smax; ++s1)
        for (int s2 = smin; s2 <= smax; ++s2) {
            Series g = gf_star_double_cleared(s1, s2, Truncation({c1, c2}, c1 + c2));
            for (int m1 = 0; m1 <= c1; ++m1) {
                ++rep.cells;
                if (!g.coefficient({m1, 0}).is_zero())
                    rep.failures.push_back(
                        detail::cat("clearing layer nonzero at (", m1, ",0) s=(", s1, ",", s2, ")"));
            }
            for (int m1 = 0; m1 <= mmax; ++m1)
                for (int m2 = 0; m2 <= mmax; ++m2) {
                    ++rep.cells;
                    Rational from_gf =
                        g.normalized_coefficient({m1, m2 + 1}) / Rational(m2 + 1);
                    if (from_gf != star_double(m1, m2, s1, s2))
                        rep.failures.push_back(detail::cat("star routes differ at (", m1, ",", m2,
                                                           ") s=(", s1, ",", s2, ")"));
                }
        }
    rep.elapsed_ms = sw.ms();
    return rep;
}

/// Criterion 12: B_{m2+1} = 0 collapses the star value to the plain one,
/// checked against the generating-function route.
inline SuiteReport verify_odd_collapse(int mmax = 6, int smin = -3, int smax = 1) {
    detail::Stopwatch sw;
    SuiteReport rep{"odd-index-collapse", 0, {}, 0, {}};
    for (int s1 = smin; s1 <= smax; ++s1)
        for (int s2 = smin; s2 <= smax; ++s2) {
            PBTable t = multi_indexed_table(GFSpec({s1, s2}, 2), {mmax, mmax});
            for (const auto& v : t.entries) {
                const long m1 = v.indices[0], m2 = v.indices[1];
                if (!bernoulli(m2 + 1).is_zero()) continue;
                ++rep.cells;
                if (star_double(m1, m2, s1, s2) != v.value)
                    rep.failures.push_back(detail::cat("collapse fails at (", m1, ",", m2,
                                                       ") s=(", s1, ",", s2, ")"));
            }
        }
    rep.elapsed_ms = sw.ms();
    return rep;
}

/// Criterion 8: the triple-index relation on a full box for given weights.
/// The series-vs-value routes agree everywhere; the star reconstruction is
/// expected to expose the second-index-zero column (see note on the report).
inline SuiteReport verify_star_triple(int box = 4,
                                      std::vector<std::array<int, 3>> weight_sets = {
                                          {-1, -1, -1}, {-2, -1, 0}}) {
    detail::Stopwatch sw;
    SuiteReport rep{"star-triple", 0, {}, 0, {}};
    bool defect_only = true;
    for (const auto& s : weight_sets) {
        TripleRelationReport r = verify_triple_relation({box, box, box}, s[0], s[1], s[2]);
        rep.cells += r.cells;
        if (r.value_route_mismatches != 0)
            rep.failures.push_back(detail::cat("value-route vs series mismatch count ",
                                               r.value_route_mismatches, " at s=(", s[0], ",",
                                               s[1], ",", s[2], ")"));
        for (const auto& f : r.failures) {
            rep.failures.push_back(detail::cat(
                "relation fails at (", f.cell[0], ",", f.cell[1], ",", f.cell[2], ") s=(", s[0],
                ",", s[1], ",", s[2], "): star-side ", f.star_side.str(), " vs coefficient ",
                f.series_coeff.str()));
            if (!(f.cell[1] == 0 && f.cell[2] >= 2)) defect_only = false;
        }
    }
    if (!rep.failures.empty() && defect_only)
        rep.note =
            "all failing cells lie on the second-index-zero column (m2=0, m3>=2), where the "
            "relation over-determines the star values and is inconsistent; every other cell "
            "passes exactly";
    rep.elapsed_ms = sw.ms();
    return rep;
}

/// Criterion 9: matched-cutoff star decompositions for depths 2 and 3.
/// Configurations are independent, so they spread across `jobs` threads and
/// merge by index.
inline SuiteReport verify_polylog_star(long M = 30,
                                       std::vector<Rational> zs = {Rational(1, 2), Rational(1, 3),
                                                                   Rational(2, 5)},
                                       int smin = -2, int smax = 2, int jobs = 1) {
    detail::Stopwatch sw;
    SuiteReport rep{"polylog-star-decomposition", 0, {}, 0, {}};
    PolylogCutoff cut(M);
    struct Config {
        WeightTuple w;
        std::vector<Rational> z;
    };
    std::vector<Config> configs;
    for (const auto& z1 : zs)
        for (const auto& z2 : zs)
            for (int s1 = smin; s1 <= smax; ++s1)
                for (int s2 = smin; s2 <= smax; ++s2)
                    configs.push_back(Config{{s1, s2}, {z1, z2}});
    for (const auto& z1 : zs)
        for (const auto& z2 : zs)
            for (const auto& z3 : zs)
                for (int s1 = smin; s1 <= smax; ++s1)
                    for (int s2 = smin; s2 <= smax; ++s2)
                        for (int s3 = smin; s3 <= smax; ++s3)
                            configs.push_back(Config{{s1, s2, s3}, {z1, z2, z3}});
    std::vector<uint8_t> bad(configs.size(), 0);
    parallel_for(static_cast<long>(configs.size()), jobs, [&](long i) {
        const auto& c = configs[static_cast<size_t>(i)];
        if (!star_decomposition_check(c.w, c.z, cut).equal) bad[static_cast<size_t>(i)] = 1;
    });
    rep.cells = static_cast<long>(configs.size());
    for (size_t i = 0; i < configs.size(); ++i) {
        if (!bad[i]) continue;
        std::ostringstream os;
        os << "decomposition fails at s=(";
        for (size_t j = 0; j < configs[i].w.size(); ++j) os << (j ? "," : "") << configs[i].w[j];
        os << ") z=(";
        for (size_t j = 0; j < configs[i].z.size(); ++j)
            os << (j ? "," : "") << configs[i].z[j].str();
        os << ")";
        rep.failures.push_back(os.str());
    }
    rep.elapsed_ms = sw.ms();
    return rep;
}

/// Criterion 10: pairwise and window-sum periodicity plus the single-index
/// baseline and the odd-index star corollary.
inline SuiteReport verify_periodicity(std::vector<long> ps = {2, 3, 5},
                                      std::vector<int> Ns = {1, 2}, int kmax = 3,
                                      bool include_baseline = true,
                                      bool include_star_corollary = true) {
    detail::Stopwatch sw;
    SuiteReport rep{"periodicity", 0, {}, 0, {}};
    for (long p : ps)
        for (int N : Ns) {
            const long period = detail::phi_prime_power(p, N);
            const long lo = N;
            const long hi = N + 2 * period;
            for (int k1 = 1; k1 <= kmax; ++k1)
                for (int k2 = 1; k2 <= kmax; ++k2) {
                    for (const auto& r : check_pairwise(p, N, k1, k2, lo, hi))
                        detail::merge_congruence(rep, r);
                    for (const auto& r :
                         check_sum_vanishing_sweep(p, N, k1, k2, lo, lo + period))
                        detail::merge_congruence(rep, r);
                }
            if (include_baseline)
                for (int k = 1; k <= kmax; ++k)
                    for (const auto& r : check_single_index_baseline(p, N, k, lo, hi))
                        detail::merge_congruence(rep, r);
            if (include_star_corollary) {
                const long hi_star = std::min<long>(hi, N + period + 4);
                for (int k1 = 1; k1 <= std::min(kmax, 2); ++k1)
                    for (int k2 = 1; k2 <= std::min(kmax, 2); ++k2)
                        detail::merge_congruence(
                            rep, check_star_odd_index(p, N, k1, k2, lo, hi_star));
            }
        }
    bool second_only = !rep.failures.empty();
    for (const auto& f : rep.failures)
        if (f.rfind("thm2.3-second", 0) != 0) second_only = false;
    if (second_only)
        rep.note =
            "every failure is a thm2.3-second window (second-index shift, odd p); pairwise "
            "congruences, first-index windows, and the single-index baseline all pass";
    rep.elapsed_ms = sw.ms();
    return rep;
}

/// Criterion 11: composite-modulus window sums.
inline SuiteReport verify_composite(std::vector<long> Ms = {4, 6, 12}, int kmax = 2) {
    detail::Stopwatch sw;
    SuiteReport rep{"composite-windows", 0, {}, 0, {}};
    for (long M : Ms) {
        ResidueRing ring{Int(M)};
        const long n = ring.max_prime_exponent();
        for (int k1 = 1; k1 <= kmax; ++k1)
            for (int k2 = 1; k2 <= kmax; ++k2)
                for (const auto& r : check_composite(M, k1, k2, n, n))
                    detail::merge_congruence(rep, r);
    }
    bool second_only = !rep.failures.empty();
    for (const auto& f : rep.failures)
        if (f.rfind("cor2.4-second", 0) != 0) second_only = false;
    if (second_only)
        rep.note =
            "every failure is a cor2.4-second window (second-index shift, M with an odd prime "
            "factor); all first-index windows pass";
    rep.elapsed_ms = sw.ms();
    return rep;
}

/// Criterion 13: anchors of criteria 4 and 7 recomputed with caps + 2.
inline SuiteReport verify_truncation_robustness() {
    detail::Stopwatch sw;
    SuiteReport rep{"truncation-robustness", 0, {}, 0, {}};
    auto check_multi = [&](IndexTuple m, GFSpec spec, const Rational& expect) {
        ++rep.cells;
        Truncation base = truncation_for_index(m);
        std::vector<int> caps = base.per_var;
        for (int& c : caps) c += 2;
        Series big = gf_multi_indexed(spec, Truncation(caps, base.total + 4));
        MultiExponent e(m.begin(), m.end());
        if (big.normalized_coefficient(e) != expect ||
            multi_indexed(m, spec).value != expect)
            rep.failures.push_back("multi-indexed anchor shifts under extra caps");
    };
    check_multi({1, 1}, GFSpec({-1, -1}, 2), Rational(26));
    check_multi({1, 0}, GFSpec({0, -1}, 2), Rational(3));
    check_multi({0, 0}, GFSpec({-2, -3}, 2), Rational(8));

    ++rep.cells;
    Series base = gf_star_double_cleared(-1, -1, Truncation({1, 2}, 3));
    Series big = gf_star_double_cleared(-1, -1, Truncation({3, 4}, 7));
    if (base.normalized_coefficient({1, 1}) != Rational(8) ||
        big.normalized_coefficient({1, 1}) != Rational(8))
        rep.failures.push_back("star anchor shifts under extra caps");
    rep.elapsed_ms = sw.ms();
    return rep;
}

}  // namespace polybern
