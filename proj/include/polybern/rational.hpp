#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace polybern {

/// Arbitrary-precision integer. GMP-backed; values exceed 64 bits routinely
/// (Stirling numbers, factorials), so nothing here assumes machine width.
using Int = mpz_class;

inline std::string to_decimal(const Int& v) { return v.get_str(10); }

inline Int int_from_decimal(const std::string& s) {
    Int v;
    if (v.set_str(s, 10) != 0)
        throw std::invalid_argument("not a decimal integer: '" + s + "'");
    return v;
}

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(int v) : q_(v) {}                 // NOLINT: implicit by design
    Rational(long v) : q_(static_cast<long>(v)) {}
    Rational(const Int& v) : q_(v) {}
    Rational(const Int& num, const Int& den) : q_(num, den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        q_.canonicalize();
    }
    Rational(long num, long den) : Rational(Int(num), Int(den)) {}

    /// Parses "n" or "n/d" (decimal, optional leading '-').
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(int_from_decimal(s));
        return Rational(int_from_decimal(s.substr(0, slash)),
                        int_from_decimal(s.substr(slash + 1)));
    }

    Int numerator() const { return Int(q_.get_num()); }
    Int denominator() const { return Int(q_.get_den()); }
    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("rational division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    Rational operator-() const { Rational r; r.q_ = -q_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    Rational abs() const { Rational r; r.q_ = ::abs(q_); return r; }

    /// "num/den", or just "num" when integral.
    std::string str() const {
        if (is_integer()) return q_.get_num().get_str(10);
        return q_.get_num().get_str(10) + "/" + q_.get_den().get_str(10);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    mpq_class q_;  // invariant: canonical (gcd(num,den)=1, den>0)
};

/// base^e for integer e of either sign; 0^0 = 1, but 1/0^e is rejected.
inline Rational rational_pow(const Int& base, long e) {
    if (e >= 0) {
        Int r;
        mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
        return Rational(r);
    }
    if (base == 0) throw std::domain_error("negative power of zero");
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(-e));
    return Rational(Int(1), r);
}

inline Rational rational_pow(const Rational& base, long e) {
    if (e < 0) {
        if (base.is_zero()) throw std::domain_error("negative power of zero");
        return rational_pow(Rational(1) / base, -e);
    }
    Rational acc(1), b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

}  // namespace polybern
