#pragma once

#include "weyl/lattice.hpp"
#include "weyl/spectra.hpp"
#include "weyl/types.hpp"

#include <vector>

namespace weyl::counting {

// A product of model factors. Non-circle factors are moved in front of the
// circle factors so the weighted lattice coordinates come first;
// source_index[i] remembers where coordinate i sat in the input order.
struct ProductSpec {
    std::vector<spectra::FactorSpec> factors;
    std::vector<int> source_index;
    int n = 0;
    int k = 0;
    int total_degree = 0;
    std::vector<int> dims;
    std::vector<Rational> shifts;
    bool has_zoll = false;
    bool all_circles = true;

    static ProductSpec make(std::vector<spectra::FactorSpec> fs);
};

lattice::WeightSpec weight_spec_of(const ProductSpec& spec);

// Coefficient of lambda^total_degree in the eigenvalue counting function.
double weyl_main_coefficient(const ProductSpec& spec);

// Exact spectral count for sphere/circle products by recursing over
// per-factor spectra with an integer budget. Rejects synthetic factors.
BigInt product_count_tensor(const ProductSpec& spec, double lambda);

// SpectrumExact counts eigenvalues <= lambda via the shifted-ball identity
// sum (k_i + y_i)^2 <= lambda^2 + |y|^2; CenterBall keeps the plain ball
// |m + y| <= lambda of cluster centers.
enum class BallCondition { SpectrumExact, CenterBall };

BigInt sphere_product_count(const ProductSpec& spec, double lambda,
                            BallCondition cond = BallCondition::SpectrumExact, int workers = 1);

// Counting for products with synthetic factors: cells of the cluster grid are
// classified against the ball by their near/far corners, and only straddling
// cells are resolved eigenvalue by eigenvalue. `total` re-counts the whole
// spectrum independently and must equal certain + straddle.
struct ClusterCountBreakdown {
    double lambda = 0;
    BigInt certain;
    BigInt straddle;
    BigInt straddle_population;
    BigInt total;
};

ClusterCountBreakdown zoll_product_count(const ProductSpec& spec, double lambda,
                                         long long k_max = -1);

// Weighted counts over the cluster lattice. Weights are per-factor cluster
// sizes (multiplicities or synthetic populations); the monomial variants use
// the leading-term weight C_i (m_i + y_i)^(d_i - 1) instead. `from` bounds the
// weighted indices below; monomial_count_full starts at m_i + y_i >= 0.
double cluster_count(const ProductSpec& spec, double lambda, int workers = 1);
double cluster_count_from(const ProductSpec& spec, double lambda, long long from, int workers = 1);
double monomial_count_from(const ProductSpec& spec, double lambda, long long from,
                           int workers = 1);
double monomial_count_full(const ProductSpec& spec, double lambda, int workers = 1);

// Weighted cluster mass with centers in the closed annulus
// [lambda, lambda + c / lambda].
double cluster_annulus_count(const ProductSpec& spec, double lambda, double c, int workers = 1);

}  // namespace weyl::counting
