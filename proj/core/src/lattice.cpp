#include "weyl/lattice.hpp"

#include "weyl/interp.hpp"
#include "weyl/parallel.hpp"
#include "weyl/quadrature.hpp"
#include "weyl/shifted_ball.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace weyl::lattice {

namespace {

constexpr double kPi = 3.14159265358979323846;

long long ll_of(const BigInt& v, const char* what) { return checked_ll(v, what); }

struct Scaled {
    BallProblem prob;                 // without tables
    std::vector<long long> q, pnum;   // per-coordinate shift p/q, reduced
    BigInt weight_denominator = 1;    // prod q_i^(d_i - 1)
};

Scaled scale_problem(const WeightSpec& w) {
    Scaled sc;
    sc.prob.n = w.n();
    sc.prob.k = w.k;
    sc.q.resize(w.n());
    sc.pnum.resize(w.n());
    long long L = 1;
    for (int i = 0; i < w.n(); ++i) {
        sc.q[i] = ll_of(BigInt(denominator(w.y[i])), "shift denominator");
        sc.pnum[i] = ll_of(BigInt(numerator(w.y[i])), "shift numerator");
        L = std::lcm(L, sc.q[i]);
    }
    sc.prob.L = L;
    sc.prob.s.resize(w.n());
    for (int i = 0; i < w.n(); ++i) sc.prob.s[i] = sc.pnum[i] * (L / sc.q[i]);
    sc.prob.min_index.resize(w.k);
    for (int i = 0; i < w.k; ++i) {
        sc.prob.min_index[i] = -ll_of(rational_floor(w.y[i]), "shift floor");
        sc.weight_denominator *= bigint_pow(BigInt(sc.q[i]), w.d[i] - 1);
    }
    return sc;
}

// Inclusive scaled threshold for |m| <= lambda: floor(lambda^2 L^2).
long long closed_threshold(double lambda, long long L) {
    if (lambda < 0) return -1;
    Rational t = Rational(lambda) * Rational(lambda) * L * L;
    return ll_of(rational_floor(t), "ball threshold");
}

// Largest scaled square strictly below lambda^2 L^2, so that points with
// |m| >= lambda survive a subtraction.
long long strict_threshold(double lambda, long long L) {
    if (lambda < 0) return -1;
    Rational t = Rational(lambda) * Rational(lambda) * L * L;
    BigInt f = rational_floor(t);
    if (Rational(f) == t) --f;
    return ll_of(f, "ball threshold");
}

void fill_monomial_tables(const WeightSpec& w, Scaled& sc, long long threshold) {
    sc.prob.tables.assign(w.k, {});
    for (int i = 0; i < w.k; ++i) {
        long long hi = table_upper_index(sc.prob, i, threshold);
        long long lo = sc.prob.min_index[i];
        auto& tab = sc.prob.tables[i];
        for (long long m = lo; m <= hi; ++m)
            tab.push_back(bigint_pow(BigInt(m * sc.q[i] + sc.pnum[i]), w.d[i] - 1));
    }
}

Rational exact_ball_sum(const WeightSpec& w, long long threshold, int workers) {
    Scaled sc = scale_problem(w);
    fill_monomial_tables(w, sc, threshold);
    BigInt raw = ball_sum_exact(sc.prob, threshold, workers);
    return Rational(raw) / Rational(sc.weight_denominator);
}

}  // namespace

WeightSpec::WeightSpec(std::vector<int> dims, std::vector<Rational> shifts) : d(std::move(dims)) {
    if (d.empty()) throw std::invalid_argument("WeightSpec: empty dimension vector");
    k = 0;
    while (k < n() && d[k] >= 2) ++k;
    for (int i = 0; i < n(); ++i) {
        if (d[i] < 1) throw std::invalid_argument("WeightSpec: dimensions must be >= 1");
        if (i >= k && d[i] != 1)
            throw std::invalid_argument("WeightSpec: weighted coordinates must come first");
    }
    y = std::move(shifts);
    if (y.empty()) y.assign(d.size(), Rational(0));
    if (y.size() != d.size()) throw std::invalid_argument("WeightSpec: shift size mismatch");
}

int WeightSpec::total_degree() const {
    int t = 0;
    for (int di : d) t += di;
    return t;
}

WeightedCountResult weighted_count(const WeightSpec& w, double lambda, int workers) {
    if (!(lambda >= 0)) throw std::invalid_argument("weighted_count: lambda must be >= 0");
    Scaled sc = scale_problem(w);
    long long thr = closed_threshold(lambda, sc.prob.L);
    WeightedCountResult res;
    res.lambda = lambda;
    res.exact = exact_ball_sum(w, thr, workers);
    res.value = to_double(res.exact);
    res.main_term = main_term_constant(w) * std::pow(lambda, w.total_degree());
    res.error = res.value - res.main_term;
    return res;
}

double annulus_sum(const WeightSpec& w, double lambda, double c, int workers) {
    if (!(lambda > 0)) throw std::invalid_argument("annulus_sum: lambda must be > 0");
    if (c < 0) throw std::invalid_argument("annulus_sum: c must be >= 0");
    Scaled sc = scale_problem(w);
    double hi = lambda + c / lambda;
    Rational outer = exact_ball_sum(w, closed_threshold(hi, sc.prob.L), workers);
    Rational inner = exact_ball_sum(w, strict_threshold(lambda, sc.prob.L), workers);
    return to_double(outer - inner);
}

double main_term_constant(const WeightSpec& w) {
    double v = std::pow(2.0, -w.k) * std::pow(kPi, 0.5 * (w.n() - w.k));
    for (int i = 0; i < w.k; ++i) v *= std::tgamma(0.5 * w.d[i]);
    return v / std::tgamma(1.0 + 0.5 * w.total_degree());
}

double bump_normalizer(int n) {
    if (n < 1 || n > 16) throw std::invalid_argument("bump_normalizer: 1 <= n <= 16");
    static double cache[17] = {0};
    if (cache[n] == 0.0) {
        double surface = 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
        cache[n] = surface * integrate(
                                 [n](double s) {
                                     double t = 1.0 - s * s;
                                     if (t <= 0) return 0.0;
                                     return std::pow(s, n - 1) * std::exp(-1.0 / t);
                                 },
                                 0.0, 1.0, 1e-14);
    }
    return cache[n];
}

double bump_density(int n, double r) {
    double t = 1.0 - r * r;
    if (t <= 0) return 0.0;
    return std::exp(-1.0 / t) / bump_normalizer(n);
}

double default_epsilon(int n, double lambda) {
    if (!(lambda > 0)) throw std::invalid_argument("default_epsilon: lambda must be > 0");
    double expo = static_cast<double>(n - 1) / (n + 1);
    return std::pow(lambda, -expo);
}

double cap_fraction(int n, double r, double s, double lambda) {
    if (s < 0 || lambda < 0) throw std::invalid_argument("cap_fraction: negative radius");
    if (s == 0.0 || r == 0.0) return (r + s <= lambda) ? 1.0 : 0.0;
    if (r + s <= lambda) return 1.0;
    if (r - s >= lambda) return 0.0;
    double cs = (r * r + s * s - lambda * lambda) / (2.0 * r * s);
    cs = std::clamp(cs, -1.0, 1.0);
    switch (n) {
        case 1:
            return 0.5;
        case 2:
            return std::acos(cs) / kPi;
        case 3:
            return 0.5 * (1.0 - cs);
        default: {
            double psi = std::acos(cs);
            double num = integrate([n](double t) { return std::pow(std::sin(t), n - 2); }, 0.0,
                                   psi, 1e-12);
            double den = std::sqrt(kPi) * std::tgamma(0.5 * (n - 1)) / std::tgamma(0.5 * n);
            return num / den;
        }
    }
}

double mollified_indicator(int n, double lambda, double eps, double r, double quad_tol) {
    if (!(eps > 0) || !(lambda > 0)) throw std::invalid_argument("mollified_indicator: bad widths");
    if (r <= lambda - eps) return 1.0;
    if (r >= lambda + eps) return 0.0;
    double surface = 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
    double norm = bump_normalizer(n);
    auto integrand = [&](double u) {
        double t = 1.0 - u * u;
        if (t <= 0 || u <= 0) return 0.0;
        return surface / norm * std::pow(u, n - 1) * std::exp(-1.0 / t) *
               cap_fraction(n, r, eps * u, lambda);
    };
    double split = std::clamp(std::abs(lambda - r) / eps, 0.0, 1.0);
    double v = 0.0;
    if (split > 1e-12) v += integrate(integrand, 0.0, split, quad_tol);
    if (split < 1.0 - 1e-12) v += integrate(integrand, split, 1.0, quad_tol);
    return std::clamp(v, 0.0, 1.0);
}

double mollified_count(const WeightSpec& w, double lambda, const MollifierSpec& moll,
                       int workers) {
    double eps = moll.epsilon;
    if (!(eps > 0) || !(eps < lambda))
        throw std::invalid_argument("mollified_count: need 0 < epsilon < lambda");
    Scaled sc = scale_problem(w);
    double r_in = lambda - eps, r_out = lambda + eps;
    long long thr_in = closed_threshold(r_in, sc.prob.L);
    long long thr_out = closed_threshold(r_out, sc.prob.L);

    Rational interior = exact_ball_sum(w, thr_in, workers);

    // Radial transition profile, interpolated monotonically so values stay
    // within [0, 1] and the sandwich inequalities survive rounding. Nodes are
    // independent, so the parallel fill is deterministic.
    std::vector<double> nodes(moll.profile_nodes);
    for (int j = 0; j < moll.profile_nodes; ++j)
        nodes[j] = r_in + (r_out - r_in) * j / (moll.profile_nodes - 1.0);
    std::vector<double> vals = map_slabs<double>(
        0, moll.profile_nodes - 1, workers,
        [&](long long j) { return mollified_indicator(w.n(), lambda, eps, nodes[j], moll.quad_tol); });
    MonotoneCubic profile(std::move(nodes), std::move(vals));

    sc.prob.tables.assign(w.k, {});
    NeumaierSum band;
    double L = static_cast<double>(sc.prob.L);
    ball_visit_band(sc.prob, thr_in, thr_out,
                    [&](const std::vector<long long>& idx, long long ss) {
                        double r = std::sqrt(static_cast<double>(ss)) / L;
                        double phi = std::clamp(profile(r), 0.0, 1.0);
                        if (phi == 0.0) return;
                        double f = 1.0;
                        for (int i = 0; i < w.k; ++i) {
                            double xi = (static_cast<double>(idx[i]) * sc.q[i] + sc.pnum[i]) /
                                        static_cast<double>(sc.q[i]);
                            for (int e = 1; e < w.d[i]; ++e) f *= xi;
                        }
                        band.add(phi * f);
                    });
    return to_double(interior) + band.value();
}

namespace {

// Intervals on the circle, represented as [a, b] with b - a <= 2 pi after
// normalization; used to intersect the mollifier disc with the ball and the
// orthant half-planes.
using ArcList = std::vector<std::pair<double, double>>;

ArcList full_circle() { return {{-kPi, kPi}}; }

ArcList intersect_arc(const ArcList& arcs, double lo, double hi) {
    // Intersects with the arc [lo, hi] (already normalized so that
    // hi - lo <= 2 pi). Every stored arc lives in [-pi, pi] pieces.
    ArcList pieces;
    if (hi - lo >= 2.0 * kPi - 1e-15) return arcs;
    auto wrap = [](double a) {
        while (a > kPi) a -= 2.0 * kPi;
        while (a < -kPi) a += 2.0 * kPi;
        return a;
    };
    double a = wrap(lo), b = wrap(hi);
    ArcList target;
    if (a <= b)
        target.push_back({a, b});
    else {
        target.push_back({-kPi, b});
        target.push_back({a, kPi});
    }
    for (const auto& piece : arcs)
        for (const auto& t : target) {
            double s = std::max(piece.first, t.first);
            double e = std::min(piece.second, t.second);
            if (e > s) pieces.push_back({s, e});
        }
    return pieces;
}

}  // namespace

double mollified_count_swapped(const WeightSpec& w, double lambda, const MollifierSpec& moll) {
    int n = w.n();
    double eps = moll.epsilon;
    if (n > 3) throw std::invalid_argument("mollified_count_swapped: dimension > 3 not supported");
    if (n == 3 && w.k > 0)
        throw std::invalid_argument("mollified_count_swapped: weighted 3-dimensional case not supported");
    if (!(eps > 0) || !(eps < lambda))
        throw std::invalid_argument("mollified_count_swapped: need 0 < epsilon < lambda");

    Scaled sc = scale_problem(w);
    long long thr = closed_threshold(lambda + eps, sc.prob.L);
    sc.prob.tables.assign(w.k, {});
    // Points just below an orthant wall still see mollifier mass; widen the
    // index range when the shift places one within eps of it.
    for (int i = 0; i < w.k; ++i) {
        Rational frac = w.y[i] - Rational(rational_floor(w.y[i]));
        if (frac != 0 && to_double(frac) > 1.0 - eps) --sc.prob.min_index[i];
    }

    NeumaierSum total;
    ball_visit_band(sc.prob, -1, thr, [&](const std::vector<long long>& idx, long long) {
        std::vector<double> x(n);
        for (int i = 0; i < n; ++i)
            x[i] = (static_cast<double>(idx[i]) * sc.q[i] + sc.pnum[i]) /
                   static_cast<double>(sc.q[i]);
        double term = 0.0;
        if (n == 1) {
            double b = x[0];
            double lo = std::max(-eps, b - lambda);
            double hi = std::min(eps, b + lambda);
            if (w.k == 1) hi = std::min(hi, b);
            if (hi > lo)
                term = integrate(
                    [&](double u) {
                        double val = bump_density(1, u / eps) / eps;
                        double arg = b - u;
                        for (int e = 1; e < w.d[0]; ++e) val *= arg;
                        return val;
                    },
                    lo, hi, moll.quad_tol);
        } else if (n == 2) {
            double R = std::hypot(x[0], x[1]);
            double phi_x = (R > 0) ? std::atan2(x[1], x[0]) : 0.0;
            auto theta_integral = [&](double s) {
                ArcList arcs = full_circle();
                if (R > 1e-14) {
                    double cs = (R * R + s * s - lambda * lambda) / (2.0 * R * s);
                    if (cs > 1.0) return 0.0;
                    if (cs >= -1.0) {
                        double psi = std::acos(cs);
                        arcs = intersect_arc(arcs, phi_x - psi, phi_x + psi);
                    }
                }
                for (int i = 0; i < w.k; ++i) {
                    // u_i <= x_i with u = s (cos theta, sin theta).
                    double v = x[i] / s;
                    if (v >= 1.0) continue;
                    if (v < -1.0) return 0.0;
                    double g = std::acos(std::clamp(v, -1.0, 1.0));
                    // cos(theta - axis_i) >= ... is the excluded arc; keep its
                    // complement around the opposite direction.
                    double axis = (i == 0) ? 0.0 : 0.5 * kPi;
                    arcs = intersect_arc(arcs, axis + g, axis + 2.0 * kPi - g);
                    if (arcs.empty()) return 0.0;
                }
                double acc = 0.0;
                for (const auto& arc : arcs)
                    acc += gl_panels(
                        [&](double th) {
                            double f = 1.0;
                            double c = std::cos(th), sn = std::sin(th);
                            double xx = x[0] - s * c, yy = x[1] - s * sn;
                            double coord[2] = {xx, yy};
                            for (int i = 0; i < w.k; ++i) {
                                double base = std::max(coord[i], 0.0);
                                for (int e = 1; e < w.d[i]; ++e) f *= base;
                            }
                            return f;
                        },
                        arc.first, arc.second, 4);
                return acc;
            };
            term = integrate(
                [&](double s) {
                    if (s <= 0) return 0.0;
                    return s * bump_density(2, s / eps) / (eps * eps) * theta_integral(s);
                },
                0.0, eps, std::max(moll.quad_tol, 1e-7 * std::abs(lambda)));
        } else {
            double R = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
            term = mollified_indicator(3, lambda, eps, R, moll.quad_tol);
        }
        total.add(term);
    });
    return total.value();
}

}  // namespace weyl::lattice
