#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polybern/combinatorics.hpp"
#include "polybern/bernoulli.hpp"
#include "polybern/rational.hpp"

namespace polybern {

/// Exponent vector of a monomial x_1^{e_1}...x_r^{e_r}.
using MultiExponent = std::vector<int>;

/// Retention policy of a truncated series: keep exponent e iff
/// e_j <= per_var[j] for all j and sum e_j <= total.
struct Truncation {
    int nvars = 0;
    std::vector<int> per_var;
    int total = 0;

    Truncation() = default;
    Truncation(std::vector<int> caps, int total_cap)
        : nvars(static_cast<int>(caps.size())), per_var(std::move(caps)), total(total_cap) {
        if (nvars < 1) throw std::invalid_argument("truncation needs at least one variable");
        for (int c : per_var)
            if (c < 0) throw std::invalid_argument("negative per-variable cap");
        if (total < 0) throw std::invalid_argument("negative total cap");
    }

    static Truncation uniform(int nvars, int cap, int total_cap) {
        return Truncation(std::vector<int>(static_cast<size_t>(nvars), cap), total_cap);
    }

    bool admits(const MultiExponent& e) const {
        if (static_cast<int>(e.size()) != nvars) return false;
        int sum = 0;
        for (int j = 0; j < nvars; ++j) {
            if (e[static_cast<size_t>(j)] < 0 || e[static_cast<size_t>(j)] > per_var[static_cast<size_t>(j)])
                return false;
            sum += e[static_cast<size_t>(j)];
        }
        return sum <= total;
    }

    /// this retains at most what other retains.
    bool within(const Truncation& other) const {
        if (nvars != other.nvars || total > other.total) return false;
        for (int j = 0; j < nvars; ++j)
            if (per_var[static_cast<size_t>(j)] > other.per_var[static_cast<size_t>(j)]) return false;
        return true;
    }

    friend bool operator==(const Truncation& a, const Truncation& b) {
        return a.nvars == b.nvars && a.per_var == b.per_var && a.total == b.total;
    }
};

/// a_1 x_1 + ... + a_r x_r.
struct LinearForm {
    std::vector<Rational> coeffs;

    LinearForm() = default;
    explicit LinearForm(std::vector<Rational> a) : coeffs(std::move(a)) {}

    static LinearForm var(int nvars, int j) {
        std::vector<Rational> a(static_cast<size_t>(nvars), Rational(0));
        a.at(static_cast<size_t>(j)) = Rational(1);
        return LinearForm(std::move(a));
    }

    /// x_j + x_{j+1} + ... + x_{r-1} (0-based j), the tail sums of Eq.-style
    /// generating function arguments.
    static LinearForm tail_sum(int nvars, int j) {
        std::vector<Rational> a(static_cast<size_t>(nvars), Rational(0));
        for (int v = j; v < nvars; ++v) a[static_cast<size_t>(v)] = Rational(1);
        return LinearForm(std::move(a));
    }

    int nvars() const { return static_cast<int>(coeffs.size()); }

    bool is_zero() const {
        return std::all_of(coeffs.begin(), coeffs.end(),
                           [](const Rational& c) { return c.is_zero(); });
    }
};

/// Sparse multivariate truncated formal power series over Rational.
/// Zero coefficients are never stored, so equality is map equality.
class Series {
public:
    using TermMap = std::map<MultiExponent, Rational>;

    explicit Series(Truncation trunc) : trunc_(std::move(trunc)) {}

    static Series zero(const Truncation& t) { return Series(t); }

    static Series one(const Truncation& t) {
        Series s(t);
        s.add_term(MultiExponent(static_cast<size_t>(t.nvars), 0), Rational(1));
        return s;
    }

    static Series monomial(const Truncation& t, const MultiExponent& e, const Rational& c) {
        Series s(t);
        s.add_term(e, c);
        return s;
    }

    /// The form itself as a degree-1 series.
    static Series from_linear_form(const LinearForm& f, const Truncation& t) {
        if (f.nvars() != t.nvars)
            throw std::invalid_argument("linear form/truncation variable count mismatch");
        Series s(t);
        for (int j = 0; j < t.nvars; ++j) {
            if (f.coeffs[static_cast<size_t>(j)].is_zero()) continue;
            MultiExponent e(static_cast<size_t>(t.nvars), 0);
            e[static_cast<size_t>(j)] = 1;
            s.add_term(e, f.coeffs[static_cast<size_t>(j)]);
        }
        return s;
    }

    const Truncation& truncation() const { return trunc_; }
    int nvars() const { return trunc_.nvars; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const MultiExponent& e, const Rational& c) {
        if (c.is_zero() || !trunc_.admits(e)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Series& operator+=(const Series& o) {
        check_same_trunc(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    Series& operator-=(const Series& o) {
        check_same_trunc(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    /// *this += q * o; the accumulation primitive of the ell-sum builders.
    Series& add_scaled(const Series& o, const Rational& q) {
        check_same_trunc(o);
        if (q.is_zero()) return *this;
        for (const auto& [e, c] : o.terms_) add_term(e, c * q);
        return *this;
    }

    friend Series operator+(Series a, const Series& b) { a += b; return a; }
    friend Series operator-(Series a, const Series& b) { a -= b; return a; }

    friend Series operator*(const Series& a, const Series& b) {
        a.check_same_trunc(b);
        Series r(a.trunc_);
        MultiExponent e(static_cast<size_t>(a.trunc_.nvars), 0);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                bool ok = true;
                int sum = 0;
                for (int j = 0; j < a.trunc_.nvars; ++j) {
                    int v = ea[static_cast<size_t>(j)] + eb[static_cast<size_t>(j)];
                    if (v > a.trunc_.per_var[static_cast<size_t>(j)]) { ok = false; break; }
                    e[static_cast<size_t>(j)] = v;
                    sum += v;
                }
                if (!ok || sum > a.trunc_.total) continue;
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    Series& operator*=(const Series& o) { return *this = *this * o; }

    Series scaled(const Rational& q) const {
        Series r(trunc_);
        if (q.is_zero()) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * q);
        return r;
    }

    /// Restriction to a finer truncation; basis of the monotonicity property.
    Series restricted(const Truncation& t) const {
        if (!t.within(trunc_))
            throw std::invalid_argument("restriction target is not within source truncation");
        Series r(t);
        for (const auto& [e, c] : terms_)
            if (t.admits(e)) r.terms_.emplace(e, c);
        return r;
    }

    const Rational& coefficient(const MultiExponent& e) const {
        if (!trunc_.admits(e))
            throw std::out_of_range("coefficient requested beyond truncation");
        auto it = terms_.find(e);
        return it == terms_.end() ? zero_coeff() : it->second;
    }

    /// coefficient(e) * prod_j e_j!, the poly-Bernoulli reading of Eq.-style
    /// expansions sum B x^m / m!.
    Rational normalized_coefficient(const MultiExponent& e) const {
        Rational c = coefficient(e);
        for (int d : e) c *= Rational(factorial(d));
        return c;
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

private:
    static const Rational& zero_coeff() {
        static const Rational z(0);
        return z;
    }

    void check_same_trunc(const Series& o) const {
        if (!(trunc_ == o.trunc_))
            throw std::invalid_argument("series truncation mismatch");
    }

    Truncation trunc_;
    TermMap terms_;
};

/// Truncation of 1 - e^{-f} = sum_{n>=1} (-1)^{n+1} f^n / n!.
/// Constant term is exactly zero; f = 0 gives the zero series.
inline Series one_minus_exp_neg(const LinearForm& f, const Truncation& trunc) {
    Series r(trunc);
    if (f.is_zero()) return r;
    Series fs = Series::from_linear_form(f, trunc);
    Series p = fs;
    Rational sign(1);
    Int fact(1);
    for (int n = 1; n <= trunc.total && !p.is_zero(); ++n) {
        fact *= n;
        r.add_scaled(p, sign / Rational(fact));
        sign = -sign;
        p *= fs;
    }
    return r;
}

/// a^e for a with zero constant term (or e = 0). Since ord(a) >= 1, the
/// result is zero once e exceeds the total cap.
inline Series pow_nilbase(const Series& a, int e, const Truncation& trunc) {
    if (!(a.truncation() == trunc)) throw std::invalid_argument("series truncation mismatch");
    if (e < 0) throw std::domain_error("pow_nilbase exponent must be nonnegative");
    if (e == 0) return Series::one(trunc);
    MultiExponent zero_exp(static_cast<size_t>(trunc.nvars), 0);
    if (!a.coefficient(zero_exp).is_zero())
        throw std::domain_error("pow_nilbase base has nonzero constant term");
    if (e > trunc.total) return Series::zero(trunc);
    Series r = a;
    for (int i = 1; i < e; ++i) {
        r *= a;
        if (r.is_zero()) break;
    }
    return r;
}

inline Series pow_nilbase(const Series& a, int e) { return pow_nilbase(a, e, a.truncation()); }

/// f/(1 - e^{-f}) = sum_n B_n f^n / n!, the only inverse of 1-e^{-f} the
/// suite ever needs (always pre-multiplied into a genuine series).
/// Multiplying the result by one_minus_exp_neg(f) recovers f exactly.
inline Series bernoulli_gf_of_linear_form(const LinearForm& f, const Truncation& trunc) {
    if (f.is_zero()) throw std::invalid_argument("bernoulli_gf_of_linear_form needs f != 0");
    Series fs = Series::from_linear_form(f, trunc);
    Series r = Series::zero(trunc);
    Series p = Series::one(trunc);
    Int fact(1);
    for (int n = 0; n <= trunc.total; ++n) {
        if (n > 0) {
            fact *= n;
            p *= fs;
            if (p.is_zero()) break;
        }
        Rational bn = bernoulli(n);
        if (!bn.is_zero()) r.add_scaled(p, bn / Rational(fact));
    }
    return r;
}

/// Exact product with the degree-1 polynomial f; exponents pushed past the
/// truncation are discarded, so callers size the truncation for what they
/// will read back.
inline Series mul_by_linear_form(const Series& a, const LinearForm& f) {
    return a * Series::from_linear_form(f, a.truncation());
}

}  // namespace polybern
