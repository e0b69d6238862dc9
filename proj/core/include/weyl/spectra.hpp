#pragma once

#include "weyl/types.hpp"

#include <cstdint>
#include <vector>

namespace weyl::spectra {

enum class Placement { AtCenter, Equispaced, SeededUniform };

enum class FactorType { Sphere, Circle, Zoll };

// One factor of a product manifold. Spheres and circles are exact models;
// Zoll is the synthetic band-cluster model driven by the parameters below.
struct FactorSpec {
    FactorType type = FactorType::Sphere;
    int dim = 2;

    // Zoll parameters. alpha is kept rational so the band-center shift
    // alpha/4 stays exact; C scales the cluster population C * t^(dim-1);
    // c_width/k is the cluster half width; correction bounds the magnitude
    // of the seeded lower-order population term (<= correction * t^(dim-3)).
    Rational alpha = 0;
    double C = 1.0;
    double c_width = 0.25;
    double correction = 0.0;
    Placement placement = Placement::AtCenter;
    std::uint64_t seed = 0;
    std::vector<double> low_eigenvalues;  // counted verbatim below the bands

    static FactorSpec sphere(int dim);
    static FactorSpec circle();
    static FactorSpec zoll(int dim, Rational alpha, double C, double c_width,
                           double correction = 0.0, Placement placement = Placement::AtCenter,
                           std::uint64_t seed = 0);

    // Band-center shift alpha/4 (zero for circles).
    Rational shift() const;
    // Leading population coefficient: 2/(dim-1)! for spheres, C for Zoll.
    Rational leading_rational() const;  // valid for Sphere
    double leading() const;
};

struct Cluster {
    long long k = 0;
    double center = 0.0;
    Rational center_exact = 0;
    double half_width = 0.0;
    long long population = 0;
    std::vector<double> eigenvalues;  // sorted ascending
};

// sqrt(k (k + d - 1)), the k-th distinct sphere eigenvalue.
double sphere_eigenvalue(int dim, long long k);

// binom(d+k, d) - binom(d+k-2, d), exact.
BigInt sphere_multiplicity(int dim, long long k);

// The cluster polynomial (2/(d-1)!) t (k+d-2)!/k! at t = k + (d-1)/2,
// as an exact rational. Requires k >= 2.
Rational sphere_cluster_poly(int dim, long long k);

// Population of band k of a Zoll factor: round-half-even of
// C t^(d-1) + e(t) with t = k + alpha/4, clamped at zero. The correction
// e(t) is a seeded deterministic value with |e(t)| <= correction * t^(d-3).
long long zoll_population(const FactorSpec& f, long long k);

// Bands k = 1..k_max with centers, widths, populations and placed
// eigenvalues. Deterministic given the factor fields (including seed).
std::vector<Cluster> zoll_clusters(const FactorSpec& f, long long k_max);

// #{m in Z^dim : |m| <= lambda}, exact.
long long torus_spectrum_count(int dim, double lambda);

}  // namespace weyl::spectra
