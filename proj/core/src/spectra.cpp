#include "weyl/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace weyl::spectra {

FactorSpec FactorSpec::sphere(int dim) {
    if (dim < 2) throw std::invalid_argument("sphere factor needs dim >= 2");
    FactorSpec f;
    f.type = FactorType::Sphere;
    f.dim = dim;
    f.alpha = Rational(2 * (dim - 1));
    return f;
}

FactorSpec FactorSpec::circle() {
    FactorSpec f;
    f.type = FactorType::Circle;
    f.dim = 1;
    f.alpha = 0;
    return f;
}

FactorSpec FactorSpec::zoll(int dim, Rational alpha, double C, double c_width, double correction,
                            Placement placement, std::uint64_t seed) {
    if (dim < 2) throw std::invalid_argument("zoll factor needs dim >= 2");
    if (C <= 0 || c_width <= 0 || correction < 0)
        throw std::invalid_argument("zoll factor needs C > 0, c_width > 0, correction >= 0");
    FactorSpec f;
    f.type = FactorType::Zoll;
    f.dim = dim;
    f.alpha = std::move(alpha);
    f.C = C;
    f.c_width = c_width;
    f.correction = correction;
    f.placement = placement;
    f.seed = seed;
    return f;
}

Rational FactorSpec::shift() const {
    if (type == FactorType::Circle) return 0;
    return alpha / 4;
}

Rational FactorSpec::leading_rational() const {
    if (type == FactorType::Circle) return 1;
    if (type == FactorType::Sphere) {
        Rational fact = 1;
        for (int i = 2; i < dim; ++i) fact *= i;
        return Rational(2) / fact;
    }
    throw std::logic_error("leading_rational: zoll factors carry a floating-point coefficient");
}

double FactorSpec::leading() const {
    if (type == FactorType::Zoll) return C;
    return to_double(leading_rational());
}

double sphere_eigenvalue(int dim, long long k) {
    if (dim < 2 || k < 0) throw std::invalid_argument("sphere_eigenvalue: dim >= 2, k >= 0");
    return std::sqrt(static_cast<double>(k) * (k + dim - 1));
}

BigInt sphere_multiplicity(int dim, long long k) {
    if (dim < 2 || k < 0) throw std::invalid_argument("sphere_multiplicity: dim >= 2, k >= 0");
    return binomial(dim + k, dim) - binomial(dim + k - 2, dim);
}

Rational sphere_cluster_poly(int dim, long long k) {
    if (dim < 2) throw std::invalid_argument("sphere_cluster_poly: dim >= 2");
    if (k < 2) throw std::invalid_argument("sphere_cluster_poly: defined for k >= 2");
    BigInt fact = 1;
    for (int i = 2; i < dim; ++i) fact *= i;
    BigInt rising = 1;  // (k+d-2)!/k! = (k+1)...(k+d-2)
    for (int i = 1; i <= dim - 2; ++i) rising *= BigInt(k + i);
    Rational t = Rational(k) + Rational(dim - 1) / 2;
    return Rational(2) * t * Rational(rising) / Rational(fact);
}

namespace {

double round_half_even(double x) {
    // nearbyint honours the prevailing IEEE round-to-nearest-even mode.
    return std::nearbyint(x);
}

double seeded_signed_unit(std::uint64_t seed, std::uint64_t k, std::uint64_t tag) {
    std::uint64_t bits = mix64(seed ^ mix64(k ^ (tag << 32)));
    return 2.0 * unit_double(bits) - 1.0;
}

}  // namespace

long long zoll_population(const FactorSpec& f, long long k) {
    if (f.type != FactorType::Zoll) throw std::invalid_argument("zoll_population: not a zoll factor");
    if (k < 1) return 0;
    double t = static_cast<double>(k) + to_double(f.shift());
    double main = f.C * std::pow(t, f.dim - 1);
    double e = 0.0;
    if (f.correction > 0)
        e = f.correction * std::pow(t, f.dim - 3) * seeded_signed_unit(f.seed, k, 0xe0);
    double p = round_half_even(main + e);
    return p > 0 ? static_cast<long long>(p) : 0;
}

std::vector<Cluster> zoll_clusters(const FactorSpec& f, long long k_max) {
    if (f.type != FactorType::Zoll) throw std::invalid_argument("zoll_clusters: not a zoll factor");
    if (k_max < 1) throw std::invalid_argument("zoll_clusters: k_max >= 1");
    std::vector<Cluster> out;
    out.reserve(k_max);
    for (long long k = 1; k <= k_max; ++k) {
        Cluster cl;
        cl.k = k;
        cl.center_exact = Rational(k) + f.shift();
        cl.center = to_double(cl.center_exact);
        cl.half_width = f.c_width / static_cast<double>(k);
        cl.population = zoll_population(f, k);
        cl.eigenvalues.reserve(cl.population);
        switch (f.placement) {
            case Placement::AtCenter:
                cl.eigenvalues.assign(cl.population, cl.center);
                break;
            case Placement::Equispaced:
                for (long long j = 0; j < cl.population; ++j)
                    cl.eigenvalues.push_back(cl.center +
                                             cl.half_width * (2.0 * j + 1.0 - cl.population) /
                                                 static_cast<double>(cl.population));
                break;
            case Placement::SeededUniform:
                for (long long j = 0; j < cl.population; ++j) {
                    double u = unit_double(mix64(f.seed ^ mix64(static_cast<std::uint64_t>(k) ^
                                                                (static_cast<std::uint64_t>(j) << 20))));
                    cl.eigenvalues.push_back(cl.center + cl.half_width * (2.0 * u - 1.0));
                }
                std::sort(cl.eigenvalues.begin(), cl.eigenvalues.end());
                break;
        }
        out.push_back(std::move(cl));
    }
    return out;
}

long long torus_spectrum_count(int dim, double lambda) {
    if (dim < 1) throw std::invalid_argument("torus_spectrum_count: dim >= 1");
    if (lambda < 0) return 0;
    // Exact test against floor(lambda^2): sum of integer squares <= lambda^2.
    BigInt sq = rational_floor(Rational(lambda) * Rational(lambda));
    long long budget = checked_ll(sq, "torus_spectrum_count threshold");
    // Recursive coordinate sweep; the innermost coordinate count is closed
    // form via integer sqrt.
    std::function<long long(int, long long)> count = [&](int level, long long rem) -> long long {
        long long r = isqrt_ll(rem);
        if (level == dim - 1) return 2 * r + 1;
        long long total = count(level + 1, rem);  // m = 0
        for (long long m = 1; m <= r; ++m) total += 2 * count(level + 1, rem - m * m);
        return total;
    };
    return count(0, budget);
}

}  // namespace weyl::spectra
