#pragma once

#include <atomic>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "polybern/combinatorics.hpp"
#include "polybern/rational.hpp"

namespace polybern {

/// Classical Bernoulli numbers in the convention with B_1 = +1/2
/// (generating function t/(1-e^{-t})), computed from the defining
/// triangular recurrence sum_{i<=n} C(n+1,i) B_i = n+1. Deliberately
/// independent of the power-series engine so it can act as its oracle.
/// Published entries are immutable; the deque keeps them address-stable
/// under concurrent growth.
class BernoulliCache {
public:
    const Rational& value(long n) {
        if (n < 0) throw std::domain_error("bernoulli index negative");
        if (n >= published_.load(std::memory_order_acquire)) ensure(n);
        return values_[static_cast<size_t>(n)];
    }

    long max_n() const { return published_.load(std::memory_order_acquire) - 1; }

private:
    void ensure(long n) {
        std::lock_guard<std::mutex> lock(mu_);
        if (values_.empty()) {
            values_.push_back(Rational(1));
            published_.store(1, std::memory_order_release);
        }
        while (static_cast<long>(values_.size()) <= n) {
            long m = static_cast<long>(values_.size());
            // B_m = (m+1 - sum_{i<m} C(m+1,i) B_i) / C(m+1,m)
            Rational acc(0);
            for (long i = 0; i < m; ++i)
                acc += Rational(binomial(m + 1, i)) * values_[static_cast<size_t>(i)];
            values_.push_back((Rational(m + 1) - acc) / Rational(m + 1));
            published_.store(static_cast<long>(values_.size()), std::memory_order_release);
        }
    }

    std::mutex mu_;
    std::deque<Rational> values_;
    std::atomic<long> published_{0};
};

inline BernoulliCache& bernoulli_cache() {
    static BernoulliCache cache;
    return cache;
}

inline const Rational& bernoulli(long n) { return bernoulli_cache().value(n); }

}  // namespace polybern
