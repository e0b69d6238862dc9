#include "weyl/shifted_ball.hpp"

#include "weyl/parallel.hpp"

#include <stdexcept>

namespace weyl::lattice {

namespace {

void validate(const BallProblem& p) {
    if (p.n < 1 || p.k < 0 || p.k > p.n) throw std::invalid_argument("BallProblem: bad n/k");
    if (p.L < 1) throw std::invalid_argument("BallProblem: scale must be positive");
    if (static_cast<int>(p.s.size()) != p.n || static_cast<int>(p.min_index.size()) != p.k ||
        static_cast<int>(p.tables.size()) != p.k)
        throw std::invalid_argument("BallProblem: inconsistent array sizes");
}

// Exact weighted sum over coordinates level..n-1, rem >= 0 the remaining
// scaled squared budget.
BigInt sum_tail(const BallProblem& p, int level, long long rem) {
    long long r = isqrt_ll(rem);
    long long lo = div_ceil(-r - p.s[level], p.L);
    long long hi = div_floor(r - p.s[level], p.L);
    if (level < p.k && lo < p.min_index[level]) lo = p.min_index[level];
    if (lo > hi) return 0;
    if (level == p.n - 1) {
        if (level >= p.k) return BigInt(hi - lo + 1);
        BigInt acc = 0;
        const auto& tab = p.tables[level];
        for (long long m = lo; m <= hi; ++m) acc += tab[static_cast<std::size_t>(m - p.min_index[level])];
        return acc;
    }
    BigInt acc = 0;
    for (long long m = lo; m <= hi; ++m) {
        long long x = m * p.L + p.s[level];
        BigInt inner = sum_tail(p, level + 1, rem - x * x);
        if (level < p.k) inner *= p.tables[level][static_cast<std::size_t>(m - p.min_index[level])];
        acc += inner;
    }
    return acc;
}

void visit_tail(const BallProblem& p, int level, long long partial, long long lo_thr,
                long long hi_thr, std::vector<long long>& idx,
                const std::function<void(const std::vector<long long>&, long long)>& visitor) {
    long long rem = hi_thr - partial;
    if (rem < 0) return;
    long long r = isqrt_ll(rem);
    long long lo = div_ceil(-r - p.s[level], p.L);
    long long hi = div_floor(r - p.s[level], p.L);
    if (level < p.k && lo < p.min_index[level]) lo = p.min_index[level];
    for (long long m = lo; m <= hi; ++m) {
        long long x = m * p.L + p.s[level];
        long long ss = partial + x * x;
        idx[static_cast<std::size_t>(level)] = m;
        if (level == p.n - 1) {
            if (ss > lo_thr) visitor(idx, ss);
        } else {
            visit_tail(p, level + 1, ss, lo_thr, hi_thr, idx, visitor);
        }
    }
}

}  // namespace

long long table_upper_index(const BallProblem& p, int i, long long threshold) {
    if (threshold < 0) return p.min_index[static_cast<std::size_t>(i)] - 1;
    long long r = isqrt_ll(threshold);
    return div_floor(r - p.s[static_cast<std::size_t>(i)], p.L);
}

BigInt ball_sum_exact(const BallProblem& p, long long threshold, int workers) {
    validate(p);
    if (threshold < 0) return 0;
    if (p.n == 1) return sum_tail(p, 0, threshold);
    long long r = isqrt_ll(threshold);
    long long lo = div_ceil(-r - p.s[0], p.L);
    long long hi = div_floor(r - p.s[0], p.L);
    if (p.k > 0 && lo < p.min_index[0]) lo = p.min_index[0];
    if (lo > hi) return 0;
    auto parts = map_slabs<BigInt>(lo, hi, workers, [&](long long m) -> BigInt {
        long long x = m * p.L + p.s[0];
        long long rem = threshold - x * x;
        if (rem < 0) return 0;
        BigInt inner = sum_tail(p, 1, rem);
        if (p.k > 0) inner *= p.tables[0][static_cast<std::size_t>(m - p.min_index[0])];
        return inner;
    });
    BigInt total = 0;
    for (const auto& part : parts) total += part;
    return total;
}

void ball_visit_band(const BallProblem& p, long long lo_threshold, long long hi_threshold,
                     const std::function<void(const std::vector<long long>&, long long)>& visitor) {
    validate(p);
    if (hi_threshold < 0 || hi_threshold <= lo_threshold) return;
    std::vector<long long> idx(static_cast<std::size_t>(p.n), 0);
    visit_tail(p, 0, 0, lo_threshold, hi_threshold, idx, visitor);
}

}  // namespace weyl::lattice
