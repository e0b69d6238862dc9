#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weyl/lattice.hpp"
#include "weyl/quadrature.hpp"

#include <cmath>
#include <functional>
#include <vector>

using namespace weyl;
using namespace weyl::lattice;

namespace {

WeightSpec make_spec(std::vector<int> d, std::vector<Rational> y = {}) {
    if (y.empty()) y.assign(d.size(), Rational(0));
    return WeightSpec(std::move(d), std::move(y));
}

// Exact rational brute force over a bounding box.
Rational brute_weighted(const WeightSpec& w, double lambda) {
    Rational lam2 = Rational(lambda) * Rational(lambda);
    long long box = static_cast<long long>(lambda) + 2;
    Rational total = 0;
    std::vector<long long> m(w.d.size());
    std::function<void(std::size_t, Rational, Rational)> rec = [&](std::size_t lvl, Rational acc,
                                                                   Rational weight) {
        if (acc > lam2) return;
        if (lvl == w.d.size()) {
            total += weight;
            return;
        }
        for (long long mi = -box; mi <= box; ++mi) {
            Rational x = Rational(mi) + w.y[lvl];
            if (static_cast<int>(lvl) < w.k && x < 0) continue;
            Rational wloc = 1;
            for (int p = 0; p < w.d[lvl] - 1; ++p) wloc *= x;
            rec(lvl + 1, acc + x * x, weight * wloc);
        }
    };
    rec(0, Rational(0), Rational(1));
    return total;
}

}  // namespace

TEST_CASE("weighted counts hit frozen small values") {
    CHECK(weighted_count(make_spec({2}), 3.0).exact == Rational(6));
    CHECK(weighted_count(make_spec({2, 1}), 2.0).exact == Rational(5));
    CHECK(weighted_count(make_spec({1, 1}), 1.0).exact == Rational(5));
    CHECK(weighted_count(make_spec({2}), 0.0).exact == Rational(0));  // weight 0 at the origin
    CHECK(weighted_count(make_spec({1}), 4.5).exact == Rational(9));
}

TEST_CASE("weighted counts match the exact rational brute force") {
    std::vector<WeightSpec> specs = {
        make_spec({2}),
        make_spec({2, 1}),
        make_spec({3, 1}),
        make_spec({2, 2}),
        make_spec({1, 1}),
        make_spec({2, 1}, {Rational(1, 4), Rational(0)}),
        make_spec({2}, {Rational(1, 2)}),
        make_spec({3, 1, 1}, {Rational(1), Rational(0), Rational(0)}),
        make_spec({2, 2}, {Rational(1, 2), Rational(1, 2)}),
    };
    for (const auto& w : specs) {
        for (double lam : {0.75, 1.5, 2.0, 3.25, 5.0}) {
            CAPTURE(lam);
            CAPTURE(w.d.size());
            CHECK(weighted_count(w, lam).exact == brute_weighted(w, lam));
        }
    }
}

TEST_CASE("integer-shift results are integers and error wires up") {
    auto w = make_spec({2, 1});
    auto r = weighted_count(w, 10.0);
    CHECK(Rational(rational_floor(r.exact)) == r.exact);
    CHECK(r.error == doctest::Approx(r.value - r.main_term).epsilon(1e-15));
    CHECK(r.main_term == doctest::Approx(main_term_constant(w) * 1000.0).epsilon(1e-12));
}

TEST_CASE("weighted counts are monotone in lambda and workers-invariant") {
    auto w = make_spec({2, 1}, {Rational(1, 4), Rational(0)});
    double prev = -1;
    for (double lam = 0.5; lam < 25.0; lam += 0.7) {
        double v = weighted_count(w, lam).value;
        CHECK(v >= prev);
        prev = v;
    }
    for (double lam : {7.3, 19.0}) {
        CHECK(weighted_count(w, lam, 1).exact == weighted_count(w, lam, 8).exact);
    }
}

TEST_CASE("annulus sums follow the closed-annulus convention") {
    auto w = make_spec({1, 1});
    // annulus [1, sqrt(2)] keeps both boundary circles: 4 + 4 points
    double c = std::sqrt(2.0) - 1.0;
    CHECK(annulus_sum(w, 1.0, c) == doctest::Approx(8.0).epsilon(1e-12));
    // pushing the outer radius just below sqrt(2) drops the corner points
    CHECK(annulus_sum(w, 1.0, c * 0.999) == doctest::Approx(4.0).epsilon(1e-12));
    // empty annulus
    CHECK(annulus_sum(w, 2.1, 0.1) == doctest::Approx(0.0).epsilon(1e-12));
    // subset of the full ball
    auto w21 = make_spec({2, 1});
    for (double lam : {3.0, 7.5}) {
        double ann = annulus_sum(w21, lam, 1.0);
        CHECK(ann >= 0.0);
        CHECK(ann <= weighted_count(w21, lam + 1.0 / lam).value + 1e-12);
    }
    // consistency: closed outer ball minus strict inner ball via brute force
    auto wsh = make_spec({2, 1}, {Rational(1, 4), Rational(0)});
    double lam = 4.0, cc = 2.0;
    Rational outer = brute_weighted(wsh, lam + cc / lam);
    Rational inner_closed = brute_weighted(wsh, lam);
    // no shifted point sits exactly on |m| = 4 (norms are sqrt(int)/4 here,
    // 256 a perfect square of 16 requires (4a+1)^2 + 16 b^2 = 256, impossible)
    CHECK(annulus_sum(wsh, lam, cc) ==
          doctest::Approx(to_double(outer - inner_closed)).epsilon(1e-12));
}

TEST_CASE("main-term constants match the closed form and quadrature") {
    CHECK(main_term_constant(make_spec({2, 1})) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(main_term_constant(make_spec({2})) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(main_term_constant(make_spec({1, 1})) ==
          doctest::Approx(3.14159265358979324).epsilon(1e-14));
    CHECK(main_term_constant(make_spec({2, 2})) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));

    // quadrature oracle: integrate F over the unit ball intersected with the
    // orthant of the weighted coordinates; x = sin(theta) keeps the integrand
    // smooth at the rim
    auto oracle2 = [](int d0, int d1) {
        auto slice = [&](double th) {
            double x = std::sin(th), h = std::cos(th);
            // inner integral of y^(d1-1) over the admissible y range
            double inner = d1 == 1 ? 2.0 * h : std::pow(h, d1) / d1;
            return std::pow(x, d0 - 1) * inner * h;  // h = dx/dtheta
        };
        return gl_panels(slice, 0.0, 1.5707963267948966, 64);
    };
    CHECK(main_term_constant(make_spec({2, 1})) == doctest::Approx(oracle2(2, 1)).epsilon(1e-8));
    CHECK(main_term_constant(make_spec({2, 2})) == doctest::Approx(oracle2(2, 2)).epsilon(1e-8));
    CHECK(main_term_constant(make_spec({3, 2})) == doctest::Approx(oracle2(3, 2)).epsilon(1e-8));
    // homogeneity of the main term
    auto w = make_spec({2, 1});
    double c_d = main_term_constant(w);
    CHECK(weighted_count(w, 8.0).main_term ==
          doctest::Approx(8.0 * weighted_count(w, 4.0).main_term).epsilon(1e-12));
    CHECK(weighted_count(w, 4.0).main_term == doctest::Approx(c_d * 64.0).epsilon(1e-12));
}

TEST_CASE("bump profile is a unit-mass mollifier") {
    for (int n : {1, 2, 3}) {
        // total mass: surface measure times radial integral
        double surface = n == 1 ? 2.0 : (n == 2 ? 2.0 * 3.14159265358979324 : 4.0 * 3.14159265358979324);
        double mass = gl_panels(
            [&](double r) { return surface * std::pow(r, n - 1) * bump_density(n, r); }, 0.0, 1.0,
            64);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(bump_density(n, 1.0) == 0.0);
        CHECK(bump_density(n, 1.5) == 0.0);
        CHECK(bump_density(n, 0.0) > bump_density(n, 0.9));
    }
}

TEST_CASE("default width follows the optimized exponent") {
    CHECK(default_epsilon(1, 100.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(default_epsilon(2, 100.0) == doctest::Approx(std::pow(100.0, -1.0 / 3.0)).epsilon(1e-15));
    CHECK(default_epsilon(3, 50.0) == doctest::Approx(std::pow(50.0, -0.5)).epsilon(1e-15));
}

TEST_CASE("cap fractions interpolate between empty and full") {
    for (int n : {1, 2, 3, 4, 5}) {
        CHECK(cap_fraction(n, 3.0, 1.0, 5.0) == 1.0);   // sphere fully inside
        CHECK(cap_fraction(n, 8.0, 1.0, 5.0) == 0.0);   // fully outside
        // exactly half the sphere is inside when r^2 + s^2 = lambda^2
        double half = cap_fraction(n, std::sqrt(24.0), 1.0, 5.0);
        CHECK(half == doctest::Approx(0.5).epsilon(1e-9));
        // monotone in r
        double prev = 1.0;
        for (double r = 4.2; r <= 6.0; r += 0.1) {
            double f = cap_fraction(n, r, 1.0, 5.0);
            CHECK(f <= prev + 1e-12);
            CHECK(f >= -1e-15);
            CHECK(f <= 1.0 + 1e-15);
            prev = f;
        }
    }
}

TEST_CASE("mollified indicator is a smooth sandwich of the ball indicator") {
    int n = 2;
    double lam = 6.0, eps = 0.25;
    CHECK(mollified_indicator(n, lam, eps, lam - eps) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mollified_indicator(n, lam, eps, lam + eps) == doctest::Approx(0.0).epsilon(1e-12));
    double prev = 1.0;
    for (double r = lam - eps; r <= lam + eps + 1e-9; r += eps / 16) {
        double v = mollified_indicator(n, lam, eps, r);
        CHECK(v >= -1e-12);
        CHECK(v <= 1.0 + 1e-12);
        CHECK(v <= prev + 1e-10);
        prev = v;
    }
    // at the boundary radius the value sits just below one half: the ball
    // surface curves away from the bump's center
    double at_boundary = mollified_indicator(n, lam, eps, lam);
    CHECK(at_boundary < 0.5 + 1e-12);
    CHECK(at_boundary > 0.46);
}

TEST_CASE("mollified counts keep the sandwich and the small-width limit") {
    auto w = make_spec({1, 1});
    MollifierSpec moll;
    moll.epsilon = 1e-3;
    // the four boundary points at |m| = 1 carry weight 1/2 each
    CHECK(mollified_count(w, 1.0, moll) == doctest::Approx(3.0).epsilon(1e-2));

    for (auto spec : {make_spec({2, 1}), make_spec({2, 1}, {Rational(1, 4), Rational(0)})}) {
        for (double lam : {5.0, 9.3}) {
            for (double eps : {0.5, 0.2}) {
                MollifierSpec m2;
                m2.epsilon = eps;
                double mid = mollified_count(spec, lam, m2);
                double lower = weighted_count(spec, lam - eps).value;
                double upper = weighted_count(spec, lam + eps).value;
                CAPTURE(lam);
                CAPTURE(eps);
                CHECK(lower - 1e-7 * (1 + std::abs(mid)) <= mid);
                CHECK(mid <= upper + 1e-7 * (1 + std::abs(mid)));
            }
        }
    }
}

TEST_CASE("swapping convolution and weight changes little") {
    // unweighted: swapped and plain agree exactly up to quadrature
    auto w = make_spec({1, 1});
    MollifierSpec moll;
    moll.epsilon = 0.3;
    for (double lam : {2.0, 4.5}) {
        double a = mollified_count(w, lam, moll);
        double b = mollified_count_swapped(w, lam, moll);
        CHECK(a == doctest::Approx(b).epsilon(1e-6));
    }
    // weighted: the gap is bounded by the Lipschitz scale eps * lam^(|d|-1)
    auto wsh = make_spec({2, 1});
    for (double lam : {4.0, 8.0}) {
        for (double eps : {0.4, 0.2}) {
            MollifierSpec m2;
            m2.epsilon = eps;
            double gap = std::abs(mollified_count(wsh, lam, m2) -
                                  mollified_count_swapped(wsh, lam, m2));
            CHECK(gap <= 8.0 * eps * std::pow(lam, 2));
        }
    }
    // one-dimensional weighted case has its own branch
    auto w1 = make_spec({3});
    MollifierSpec m1;
    m1.epsilon = 0.25;
    double a1 = mollified_count(w1, 3.0, m1);
    double b1 = mollified_count_swapped(w1, 3.0, m1);
    CHECK(std::abs(a1 - b1) <= 2.0 * 0.25 * 2.0 * 3.0 + 1.0);
    // dimension guard
    auto w4 = make_spec({1, 1, 1, 1});
    MollifierSpec m4;
    CHECK_THROWS(mollified_count_swapped(w4, 2.0, m4));
    auto w3k1 = make_spec({2, 1, 1});
    CHECK_THROWS(mollified_count_swapped(w3k1, 2.0, m4));
}

TEST_CASE("three-dimensional unweighted swap matches the radial profile") {
    auto w3 = make_spec({1, 1, 1});
    MollifierSpec moll;
    moll.epsilon = 0.35;
    double a = mollified_count(w3, 2.5, moll);
    double b = mollified_count_swapped(w3, 2.5, moll);
    CHECK(a == doctest::Approx(b).epsilon(1e-6));
}
