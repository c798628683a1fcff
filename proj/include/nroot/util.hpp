#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace nroot {

using Rat = mpq_class;

// Outcome of an exhaustive check: how many cases were examined and the
// first witness of a violation, if any.
struct SweepReport {
    std::string name;
    long long checked = 0;
    long long violations = 0;
    std::string first_witness;

    SweepReport() = default;
    explicit SweepReport(std::string n) : name(std::move(n)) {}

    bool pass() const { return violations == 0; }
    void fail(const std::string& witness) {
        if (violations == 0) first_witness = witness;
        ++violations;
    }
};

inline Rat make_rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string rat_str(long long n) { return std::to_string(n) + "/1"; }

// Zigzag (secant-tangent) numbers 1, 1, 1, 2, 5, 16, 61, 272, 1385, ...
// computed with the boustrophedon triangle.
inline std::vector<long long> zigzag_numbers(int count) {
    std::vector<long long> out;
    out.reserve(count);
    std::vector<long long> row{1};
    out.push_back(1);
    for (int n = 1; n < count; ++n) {
        std::vector<long long> next(n + 1, 0);
        for (int k = 1; k <= n; ++k) next[k] = next[k - 1] + row[n - k];
        out.push_back(next[n]);
        row = std::move(next);
    }
    return out;
}

inline long long catalan_number(int k) {
    long long c = 1;
    for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

inline long long double_factorial_odd(int m) {  // m!! for odd m
    long long r = 1;
    for (int i = m; i >= 1; i -= 2) r *= i;
    return r;
}

// Runs fn(i) for i in [0, total). Chunked across `workers` threads; outputs
// must be written to per-index slots so the schedule cannot change results.
template <typename Fn>
void parallel_for(int total, int workers, Fn&& fn) {
    if (workers <= 1 || total < 2 * workers) {
        for (int i = 0; i < total; ++i) fn(i);
        return;
    }
    int nthreads = std::min(workers, total);
    std::vector<std::thread> threads;
    threads.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
        int lo = int(int64_t(total) * t / nthreads);
        int hi = int(int64_t(total) * (t + 1) / nthreads);
        threads.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : threads) th.join();
}

inline int default_workers() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? int(hc) : 1;
}

// Enumerates k-subsets of {0,..,n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(const_cast<const std::vector<int>&>(idx));
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace nroot
