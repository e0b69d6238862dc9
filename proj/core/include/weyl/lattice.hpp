#pragma once

#include "weyl/types.hpp"

#include <vector>

namespace weyl::lattice {

// Weighted lattice-point counting data: the sum runs over
// m in (Z^n + y) with the first k coordinates restricted to [0, inf),
// each point weighted by prod_{i<k} m_i^(d_i - 1). Coordinates beyond k
// are unweighted (d_i = 1).
struct WeightSpec {
    std::vector<int> d;
    int k = 0;
    std::vector<Rational> y;

    WeightSpec() = default;
    WeightSpec(std::vector<int> dims, std::vector<Rational> shifts);

    int n() const { return static_cast<int>(d.size()); }
    int total_degree() const;  // |d|
};

struct WeightedCountResult {
    double lambda = 0.0;
    double value = 0.0;
    double main_term = 0.0;
    double error = 0.0;
    Rational exact = 0;  // the sum as an exact rational
};

// Sum over the closed ball |m| <= lambda; exact rational accumulation.
WeightedCountResult weighted_count(const WeightSpec& w, double lambda, int workers = 1);

// Sum over the closed annulus lambda <= |m| <= lambda + c/lambda.
double annulus_sum(const WeightSpec& w, double lambda, double c, int workers = 1);

// The coefficient of lambda^|d| in the main term:
// 2^-k pi^((n-k)/2) prod Gamma(d_i/2) / Gamma(1 + |d|/2).
double main_term_constant(const WeightSpec& w);

// Smooth bump cutoff rho(x) = Z_n^-1 exp(-1/(1-|x|^2)) on |x| < 1,
// normalized to unit mass in R^n.
double bump_normalizer(int n);
double bump_density(int n, double r);

struct MollifierSpec {
    double epsilon = 0.1;
    int profile_nodes = 2048;
    double quad_tol = 1e-9;
};

// The optimized width lambda^(-(n-1)/(n+1)).
double default_epsilon(int n, double lambda);

// Fraction of the sphere of radius s centred at distance r from the origin
// lying inside the ball of radius lambda (dimension n).
double cap_fraction(int n, double r, double s, double lambda);

// (chi_{lambda B} * rho_eps)(x) at |x| = r, by one-dimensional radial
// quadrature; exact 1 / 0 outside the transition band.
double mollified_indicator(int n, double lambda, double eps, double r, double quad_tol = 1e-10);

// I_eps(lambda) = sum of (chi_{lambda B} * rho_eps)(m) F(m): exact interior
// count plus a compensated transition-band sum using a precomputed radial
// profile (profile_nodes nodes, monotone cubic interpolation).
double mollified_count(const WeightSpec& w, double lambda, const MollifierSpec& moll,
                       int workers = 1);

// The swapped form sum of ((chi_{lambda B} F) * rho_eps)(m), evaluated by
// per-point quadrature. Supported for n <= 2 (any k) and n = 3 with k = 0.
double mollified_count_swapped(const WeightSpec& w, double lambda, const MollifierSpec& moll);

}  // namespace weyl::lattice
