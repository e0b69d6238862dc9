#pragma once

#include "weyl/types.hpp"

#include <functional>
#include <vector>

namespace weyl::lattice {

// Lattice points m in Z^n, m_i >= min_index[i] for the first k coordinates,
// unrestricted beyond. The membership test is exact: with the common scale L
// and integer offsets s_i = shift_i * L, a point is inside iff
// sum_i (m_i L + s_i)^2 <= threshold. All thresholds are inclusive scaled
// squared radii; a negative threshold means the empty set.
struct BallProblem {
    int n = 0;
    int k = 0;
    long long L = 1;
    std::vector<long long> s;
    std::vector<long long> min_index;
    // Weight tables for coordinates i < k: tables[i][m_i - min_index[i]].
    // Coordinates i >= k carry weight one.
    std::vector<std::vector<BigInt>> tables;
};

// Largest m_i the tables must cover for a given threshold.
long long table_upper_index(const BallProblem& p, int i, long long threshold);

// Exact sum of the weight products over ball points. Slabs of the leading
// coordinate may be computed by several workers; the reduction always runs
// in ascending slab order, so the result is identical for any worker count.
BigInt ball_sum_exact(const BallProblem& p, long long threshold, int workers = 1);

// Visits every point with lo_threshold < |x|^2_scaled <= hi_threshold in a
// fixed deterministic order. The visitor receives the integer index vector
// and the scaled squared norm.
void ball_visit_band(const BallProblem& p, long long lo_threshold, long long hi_threshold,
                     const std::function<void(const std::vector<long long>&, long long)>& visitor);

inline long long div_floor(long long a, long long b) {
    long long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline long long div_ceil(long long a, long long b) { return -div_floor(-a, b); }

}  // namespace weyl::lattice
