#pragma once

#include <atomic>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "polybern/rational.hpp"

namespace polybern {

inline Int factorial(long n) {
    if (n < 0) throw std::domain_error("factorial of negative argument");
    Int r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

/// C(a,b), total: 0 whenever b < 0 or b > a. The double explicit formula
/// relies on C(l2, n-l1) vanishing outside range, so this must not throw.
inline Int binomial(long a, long b) {
    if (b < 0 || b > a) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return r;
}

/// Triangular table of Stirling numbers of the second kind, grown on demand.
/// entry(n,m): S(0,0)=1, S(n,0)=S(0,m)=0 for n,m != 0,
/// S(n+1,m) = S(n,m-1) + m S(n,m). Rows are immutable once published and the
/// deque keeps them stable, so concurrent readers never race with growth.
class StirlingTable {
public:
    const Int& entry(long n, long m) {
        if (n < 0 || m < 0) throw std::domain_error("stirling index negative");
        if (m > n) return zero_;
        if (n >= published_.load(std::memory_order_acquire)) ensure(n);
        return rows_[static_cast<size_t>(n)][static_cast<size_t>(m)];
    }

    long max_n() const { return published_.load(std::memory_order_acquire) - 1; }

private:
    void ensure(long n) {
        std::lock_guard<std::mutex> lock(mu_);
        if (rows_.empty()) {
            rows_.push_back({Int(1)});
            published_.store(1, std::memory_order_release);
        }
        while (static_cast<long>(rows_.size()) <= n) {
            const auto& prev = rows_.back();
            size_t k = rows_.size();
            std::vector<Int> row(k + 1);
            row[0] = 0;
            for (size_t m = 1; m <= k; ++m) {
                row[m] = (m < k ? prev[m] * static_cast<long>(m) : Int(0));
                row[m] += prev[m - 1];
            }
            rows_.push_back(std::move(row));
            published_.store(static_cast<long>(rows_.size()), std::memory_order_release);
        }
    }

    std::mutex mu_;
    std::deque<std::vector<Int>> rows_;
    std::atomic<long> published_{0};
    Int zero_{0};
};

inline StirlingTable& stirling_table() {
    static StirlingTable table;
    return table;
}

/// S(n,m), memoized in the shared table.
inline Int stirling2(long n, long m) {
    return stirling_table().entry(n, m);
}

}  // namespace polybern
