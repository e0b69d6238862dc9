#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weyl/counting.hpp"
#include "weyl/spectra.hpp"

#include <cmath>
#include <functional>
#include <vector>

using namespace weyl;
using namespace weyl::counting;
using spectra::FactorSpec;
using spectra::Placement;

namespace {

ProductSpec sphere_product(std::initializer_list<int> dims) {
    std::vector<FactorSpec> fs;
    for (int d : dims) fs.push_back(d == 1 ? FactorSpec::circle() : FactorSpec::sphere(d));
    return ProductSpec::make(std::move(fs));
}

// Brute-force spectral count: enumerate every factor eigenvalue (with
// multiplicity) and count tuples with sum of squares <= lambda^2. Only for
// tiny lambda.
BigInt brute_product_count(const ProductSpec& spec, double lambda) {
    std::vector<std::vector<std::pair<double, long long>>> vals(spec.factors.size());
    for (std::size_t i = 0; i < spec.factors.size(); ++i) {
        const auto& f = spec.factors[i];
        if (f.type == spectra::FactorType::Circle) {
            vals[i].push_back({0.0, 1});
            for (long long m = 1; m <= static_cast<long long>(lambda) + 1; ++m)
                vals[i].push_back({static_cast<double>(m), 2});
        } else {
            for (long long k = 0;; ++k) {
                double e = spectra::sphere_eigenvalue(f.dim, k);
                if (e > lambda + 1.0) break;
                vals[i].push_back({e, checked_ll(spectra::sphere_multiplicity(f.dim, k), "mult")});
            }
        }
    }
    double lam2 = lambda * lambda;
    BigInt total = 0;
    std::function<void(std::size_t, double, BigInt)> rec = [&](std::size_t lvl, double acc,
                                                               BigInt weight) {
        if (lvl == vals.size()) {
            total += weight;
            return;
        }
        for (const auto& [e, m] : vals[lvl]) {
            double s = acc + e * e;
            if (s > lam2) continue;
            rec(lvl + 1, s, weight * m);
        }
    };
    rec(0, 0.0, 1);
    return total;
}

}  // namespace

TEST_CASE("tensor counts hit frozen values") {
    CHECK(product_count_tensor(sphere_product({2}), 10.0) == 100);
    CHECK(product_count_tensor(sphere_product({2}), 0.0) == 1);
    // first nonzero S^3 level sits at sqrt(3); sqrt(3.0) squared rounds just
    // below 3, so probe barely above it
    CHECK(product_count_tensor(sphere_product({3}), 1.74) == 5);
    CHECK(product_count_tensor(sphere_product({3}), 1.73) == 1);
    CHECK(product_count_tensor(sphere_product({1, 1}), 1.0) == 5);
    CHECK(product_count_tensor(sphere_product({1}), 2.5) == 5);
    // S^2 x S^1 at lambda = 2: pairs (k, m) with k(k+1) + m^2 <= 4:
    // k=0: m in {0,±1,±2} -> 5; k=1 (mult 3): m in {0,±1} -> 9; total 14
    CHECK(product_count_tensor(sphere_product({2, 1}), 2.0) == 14);
}

TEST_CASE("tensor recursion agrees with brute force on small products") {
    for (double lam : {0.5, 1.0, 2.3, 3.0, 4.75}) {
        for (auto dims : std::vector<std::vector<int>>{{2}, {3}, {2, 1}, {2, 2}, {1, 1, 1}}) {
            std::vector<FactorSpec> fs;
            for (int d : dims) fs.push_back(d == 1 ? FactorSpec::circle() : FactorSpec::sphere(d));
            auto spec = ProductSpec::make(fs);
            CHECK(product_count_tensor(spec, lam) == brute_product_count(spec, lam));
        }
    }
}

TEST_CASE("lattice path reproduces the tensor count exactly") {
    for (auto dims : std::vector<std::vector<int>>{{2}, {3}, {2, 1}, {2, 2}, {3, 1}, {1, 1}}) {
        std::vector<FactorSpec> fs;
        for (int d : dims) fs.push_back(d == 1 ? FactorSpec::circle() : FactorSpec::sphere(d));
        auto spec = ProductSpec::make(fs);
        for (double lam = 0.25; lam <= 12.0; lam += 0.75) {
            CAPTURE(lam);
            CHECK(sphere_product_count(spec, lam) == product_count_tensor(spec, lam));
        }
    }
}

TEST_CASE("the two ball conditions differ but stay close") {
    auto spec = sphere_product({2});
    // center ball counts cluster centers k + 1/2 <= lambda
    CHECK(sphere_product_count(spec, 10.5, BallCondition::CenterBall) == 121);
    CHECK(sphere_product_count(spec, 10.49, BallCondition::CenterBall) == 100);
    // spectral condition counts sqrt(k(k+1)) <= lambda
    CHECK(sphere_product_count(spec, 10.49, BallCondition::SpectrumExact) == 121);
    for (double lam = 1.0; lam < 30.0; lam += 1.37) {
        BigInt a = sphere_product_count(spec, lam, BallCondition::SpectrumExact);
        BigInt b = sphere_product_count(spec, lam, BallCondition::CenterBall);
        CHECK(abs(a - b) <= BigInt(2 * static_cast<long long>(lam) + 3));
    }
}

TEST_CASE("worker count never changes an exact count") {
    auto spec = sphere_product({2, 2});
    for (double lam : {5.0, 12.5, 20.0}) {
        auto one = sphere_product_count(spec, lam, BallCondition::SpectrumExact, 1);
        auto eight = sphere_product_count(spec, lam, BallCondition::SpectrumExact, 8);
        CHECK(one == eight);
    }
}

TEST_CASE("main coefficient matches sphere volumes") {
    // S^2: N(lambda) ~ lambda^2
    CHECK(weyl_main_coefficient(sphere_product({2})) == doctest::Approx(1.0).epsilon(1e-12));
    // torus: area of the unit disc
    CHECK(weyl_main_coefficient(sphere_product({1, 1})) ==
          doctest::Approx(3.14159265358979324).epsilon(1e-12));
    // S^2 x S^2: frozen coefficient 1/2
    CHECK(weyl_main_coefficient(sphere_product({2, 2})) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cluster-center counts follow the shifted lattice") {
    auto spec = sphere_product({2});
    CHECK(cluster_count(spec, 10.5) == doctest::Approx(121.0).epsilon(1e-12));
    CHECK(cluster_count(spec, 10.4) == doctest::Approx(100.0).epsilon(1e-12));
    // annulus [10.5, 10.5 + 1/10.5] catches exactly the k = 10 cluster
    CHECK(cluster_annulus_count(spec, 10.5, 1.0) == doctest::Approx(21.0).epsilon(1e-12));
    // empty annulus just below the next center
    CHECK(cluster_annulus_count(spec, 10.6, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("monomial weights reproduce the leading cluster polynomial mass") {
    auto spec = sphere_product({2});
    // full monomial sum: 2 sum_{k: k+1/2 <= lam} (k + 1/2)
    double lam = 20.5;
    double expect = 0;
    for (long long k = 0; k + 0.5 <= lam; ++k) expect += 2.0 * (k + 0.5);
    CHECK(monomial_count_full(spec, lam) == doctest::Approx(expect).epsilon(1e-12));
    // cutting below M drops exactly the first M terms
    double tail = 0;
    for (long long k = 3; k + 0.5 <= lam; ++k) tail += 2.0 * (k + 0.5);
    CHECK(monomial_count_from(spec, lam, 3) == doctest::Approx(tail).epsilon(1e-12));
    double cl_tail = 0;
    for (long long k = 3; k + 0.5 <= lam; ++k) cl_tail += 2.0 * k + 1.0;
    CHECK(cluster_count_from(spec, lam, 3) == doctest::Approx(cl_tail).epsilon(1e-12));
}

TEST_CASE("synthetic product counts split into certain and straddle parts") {
    auto z = FactorSpec::zoll(2, Rational(1), 2.0, 0.25, 0.5, Placement::SeededUniform, 11);
    for (auto second : {FactorSpec::circle(), FactorSpec::sphere(2)}) {
        auto spec = ProductSpec::make({z, second});
        BigInt prev_total = -1;
        for (double lam : {3.0, 5.5, 8.0, 12.25, 16.0}) {
            auto b = zoll_product_count(spec, lam);
            CAPTURE(lam);
            CHECK(b.total == b.certain + b.straddle);
            CHECK(b.certain <= b.total);
            CHECK(b.total <= b.certain + b.straddle_population);
            CHECK(b.total >= prev_total);
            prev_total = b.total;
        }
    }
}

TEST_CASE("synthetic counts agree with direct eigenvalue enumeration") {
    for (auto placement : {Placement::AtCenter, Placement::Equispaced, Placement::SeededUniform}) {
        auto z = FactorSpec::zoll(2, Rational(1), 2.0, 0.25, 0.5, placement, 23);
        z.low_eigenvalues = {0.4, 0.9};
        auto spec = ProductSpec::make({z, FactorSpec::circle()});
        for (double lam : {2.0, 4.5, 7.0, 10.3}) {
            // enumerate the model spectrum directly
            auto cls = spectra::zoll_clusters(z, 2 * static_cast<long long>(lam) + 3);
            std::vector<double> zvals = z.low_eigenvalues;
            for (const auto& cl : cls)
                zvals.insert(zvals.end(), cl.eigenvalues.begin(), cl.eigenvalues.end());
            // same left-to-right float accumulation the cell walk uses
            double lam2 = lam * lam;
            long long brute = 0;
            for (double e : zvals) {
                double ee = e * e;
                if (ee > lam2) continue;
                long long r = static_cast<long long>(std::sqrt(std::max(lam2 - ee, 0.0))) + 2;
                while (r > 0 && ee + static_cast<double>(r) * r > lam2) --r;
                brute += 2 * r + 1;
            }
            CAPTURE(lam);
            auto b = zoll_product_count(spec, lam);
            CHECK(b.total == BigInt(brute));
        }
    }
}

TEST_CASE("pure sphere products pass through the band machinery unchanged") {
    for (auto dims : std::vector<std::vector<int>>{{2}, {2, 1}, {2, 2}}) {
        std::vector<FactorSpec> fs;
        for (int d : dims) fs.push_back(d == 1 ? FactorSpec::circle() : FactorSpec::sphere(d));
        auto spec = ProductSpec::make(fs);
        for (double lam : {3.3, 7.0, 11.8}) {
            auto b = zoll_product_count(spec, lam);
            CHECK(b.total == b.certain + b.straddle);
            CHECK(b.total == product_count_tensor(spec, lam));
        }
    }
}

TEST_CASE("undersized cluster covers are rejected") {
    auto z = FactorSpec::zoll(2, Rational(1), 2.0, 0.25);
    auto spec = ProductSpec::make({z});
    CHECK_THROWS(zoll_product_count(spec, 20.0, 5));
    // a sufficient explicit cover works
    auto b = zoll_product_count(spec, 20.0, 40);
    CHECK(b.total == b.certain + b.straddle);
}

TEST_CASE("factor reordering keeps circles in trailing coordinates") {
    auto spec = ProductSpec::make(
        {FactorSpec::circle(), FactorSpec::sphere(2), FactorSpec::circle(), FactorSpec::sphere(3)});
    CHECK(spec.n == 4);
    CHECK(spec.k == 2);
    CHECK(spec.dims == std::vector<int>{2, 3, 1, 1});
    CHECK(spec.source_index == std::vector<int>{1, 3, 0, 2});
    CHECK(spec.total_degree == 7);
}
