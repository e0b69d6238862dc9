#include "weyl/counting.hpp"

#include "weyl/shifted_ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace weyl::counting {

using spectra::FactorSpec;
using spectra::FactorType;
using lattice::BallProblem;
using lattice::ball_sum_exact;
using lattice::table_upper_index;

ProductSpec ProductSpec::make(std::vector<FactorSpec> fs) {
    if (fs.empty()) throw std::invalid_argument("ProductSpec: at least one factor");
    ProductSpec spec;
    for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
            bool circle = fs[i].type == FactorType::Circle;
            if ((pass == 0) == circle) continue;
            spec.factors.push_back(fs[i]);
            spec.source_index.push_back(i);
        }
    spec.n = static_cast<int>(spec.factors.size());
    for (const auto& f : spec.factors) {
        bool circle = f.type == FactorType::Circle;
        if (!circle) ++spec.k;
        spec.dims.push_back(circle ? 1 : f.dim);
        spec.shifts.push_back(f.shift());
        spec.total_degree += circle ? 1 : f.dim;
        if (f.type == FactorType::Zoll) spec.has_zoll = true;
        if (!circle) spec.all_circles = false;
    }
    return spec;
}

lattice::WeightSpec weight_spec_of(const ProductSpec& spec) {
    return lattice::WeightSpec(spec.dims, spec.shifts);
}

double weyl_main_coefficient(const ProductSpec& spec) {
    double v = lattice::main_term_constant(weight_spec_of(spec));
    for (int i = 0; i < spec.k; ++i) v *= spec.factors[i].leading();
    return v;
}

namespace {

long long sphere_index_bound(int d, long long budget) {
    // Largest k with k (k + d - 1) <= budget.
    if (budget < 0) return -1;
    double disc = std::sqrt(static_cast<double>((d - 1)) * (d - 1) + 4.0 * budget);
    long long k = static_cast<long long>((disc - (d - 1)) / 2.0);
    while (k > 0 && k * (k + d - 1) > budget) --k;
    while ((k + 1) * (k + d) <= budget) ++k;
    return std::max(k, -1ll);
}

BigInt sphere_cumulative(int d, long long K) {
    // sum_{k=0}^{K} multiplicity(d, k); telescopes to two binomials.
    if (K < 0) return 0;
    return binomial(d + K, d) + binomial(d + K - 1, d);
}

BigInt tensor_rec(const ProductSpec& spec, int level, long long budget) {
    const FactorSpec& f = spec.factors[level];
    bool last = level + 1 == spec.n;
    if (f.type == FactorType::Circle) {
        if (last) return budget < 0 ? BigInt(0) : BigInt(2 * isqrt_ll(budget) + 1);
        BigInt acc = tensor_rec(spec, level + 1, budget);
        for (long long m = 1; m * m <= budget; ++m)
            acc += 2 * tensor_rec(spec, level + 1, budget - m * m);
        return acc;
    }
    long long K = sphere_index_bound(f.dim, budget);
    if (last) return sphere_cumulative(f.dim, K);
    BigInt acc = 0;
    for (long long k = 0; k <= K; ++k)
        acc += spectra::sphere_multiplicity(f.dim, k) *
               tensor_rec(spec, level + 1, budget - k * (k + f.dim - 1));
    return acc;
}

}  // namespace

BigInt product_count_tensor(const ProductSpec& spec, double lambda) {
    if (spec.has_zoll)
        throw std::invalid_argument("product_count_tensor: synthetic factors not supported");
    if (!(lambda >= 0)) throw std::invalid_argument("product_count_tensor: lambda must be >= 0");
    long long budget =
        checked_ll(rational_floor(Rational(lambda) * Rational(lambda)), "tensor budget");
    return tensor_rec(spec, 0, budget);
}

namespace {

struct CenterLattice {
    BallProblem prob;
    std::vector<long long> q, pnum;  // reduced shift fractions per coordinate
    BigInt denominator = 1;          // for monomial weights
};

CenterLattice center_lattice(const ProductSpec& spec) {
    CenterLattice cl;
    cl.prob.n = spec.n;
    cl.prob.k = spec.k;
    cl.q.resize(spec.n);
    cl.pnum.resize(spec.n);
    long long L = 1;
    for (int i = 0; i < spec.n; ++i) {
        cl.q[i] = checked_ll(BigInt(denominator(spec.shifts[i])), "shift denominator");
        cl.pnum[i] = checked_ll(BigInt(numerator(spec.shifts[i])), "shift numerator");
        L = std::lcm(L, cl.q[i]);
    }
    cl.prob.L = L;
    cl.prob.s.resize(spec.n);
    for (int i = 0; i < spec.n; ++i) cl.prob.s[i] = cl.pnum[i] * (L / cl.q[i]);
    return cl;
}

long long center_threshold(double lambda, long long L, bool strict) {
    if (lambda < 0) return -1;
    Rational t = Rational(lambda) * Rational(lambda) * L * L;
    BigInt f = rational_floor(t);
    if (strict && Rational(f) == t) --f;
    return checked_ll(f, "ball threshold");
}

enum class WeightMode { Size, Monomial };

double cluster_ball_sum(const ProductSpec& spec, long long threshold, WeightMode mode,
                        long long from, int workers) {
    CenterLattice cl = center_lattice(spec);
    cl.prob.min_index.resize(spec.k);
    cl.prob.tables.resize(spec.k);
    Rational scale = 1;
    for (int i = 0; i < spec.k; ++i) {
        const FactorSpec& f = spec.factors[i];
        if (mode == WeightMode::Size) {
            cl.prob.min_index[i] = std::max(from, 0ll);
        } else {
            long long base = -checked_ll(rational_floor(spec.shifts[i]), "shift floor");
            cl.prob.min_index[i] = std::max(from, base);
            cl.denominator *= bigint_pow(BigInt(cl.q[i]), spec.dims[i] - 1);
            scale *= f.type == FactorType::Sphere ? f.leading_rational() : Rational(f.C);
        }
        long long hi = table_upper_index(cl.prob, i, threshold);
        auto& tab = cl.prob.tables[i];
        for (long long m = cl.prob.min_index[i]; m <= hi; ++m) {
            if (mode == WeightMode::Size)
                tab.push_back(f.type == FactorType::Sphere
                                  ? spectra::sphere_multiplicity(f.dim, m)
                                  : BigInt(spectra::zoll_population(f, m)));
            else
                tab.push_back(bigint_pow(BigInt(m * cl.q[i] + cl.pnum[i]), spec.dims[i] - 1));
        }
    }
    BigInt raw = ball_sum_exact(cl.prob, threshold, workers);
    return to_double(Rational(raw) / Rational(cl.denominator) * scale);
}

}  // namespace

BigInt sphere_product_count(const ProductSpec& spec, double lambda, BallCondition cond,
                            int workers) {
    if (spec.has_zoll)
        throw std::invalid_argument("sphere_product_count: synthetic factors not supported");
    if (!(lambda >= 0)) throw std::invalid_argument("sphere_product_count: lambda must be >= 0");
    CenterLattice cl = center_lattice(spec);
    long long thr = center_threshold(lambda, cl.prob.L, false);
    if (cond == BallCondition::SpectrumExact)
        for (int i = 0; i < spec.n; ++i) thr += cl.prob.s[i] * cl.prob.s[i];
    cl.prob.min_index.assign(spec.k, 0);
    cl.prob.tables.resize(spec.k);
    for (int i = 0; i < spec.k; ++i) {
        long long hi = table_upper_index(cl.prob, i, thr);
        for (long long m = 0; m <= hi; ++m)
            cl.prob.tables[i].push_back(spectra::sphere_multiplicity(spec.factors[i].dim, m));
    }
    return ball_sum_exact(cl.prob, thr, workers);
}

double cluster_count(const ProductSpec& spec, double lambda, int workers) {
    CenterLattice cl = center_lattice(spec);
    return cluster_ball_sum(spec, center_threshold(lambda, cl.prob.L, false), WeightMode::Size, 0,
                            workers);
}

double cluster_count_from(const ProductSpec& spec, double lambda, long long from, int workers) {
    CenterLattice cl = center_lattice(spec);
    return cluster_ball_sum(spec, center_threshold(lambda, cl.prob.L, false), WeightMode::Size,
                            from, workers);
}

double monomial_count_from(const ProductSpec& spec, double lambda, long long from, int workers) {
    CenterLattice cl = center_lattice(spec);
    return cluster_ball_sum(spec, center_threshold(lambda, cl.prob.L, false), WeightMode::Monomial,
                            from, workers);
}

double monomial_count_full(const ProductSpec& spec, double lambda, int workers) {
    CenterLattice cl = center_lattice(spec);
    return cluster_ball_sum(spec, center_threshold(lambda, cl.prob.L, false), WeightMode::Monomial,
                            std::numeric_limits<long long>::min(), workers);
}

double cluster_annulus_count(const ProductSpec& spec, double lambda, double c, int workers) {
    if (!(lambda > 0)) throw std::invalid_argument("cluster_annulus_count: lambda must be > 0");
    CenterLattice cl = center_lattice(spec);
    double outer = cluster_ball_sum(spec, center_threshold(lambda + c / lambda, cl.prob.L, false),
                                    WeightMode::Size, 0, workers);
    double inner = cluster_ball_sum(spec, center_threshold(lambda, cl.prob.L, true),
                                    WeightMode::Size, 0, workers);
    return outer - inner;
}

namespace {

struct BandValue {
    double e;
    long long mult;
};

struct Band {
    double near2 = 0;  // squared distance of the nearest possible eigenvalue
    double far = 0;    // largest possible eigenvalue
    BigInt population;
    std::vector<BandValue> values;
};

std::vector<Band> factor_bands(const FactorSpec& f, double lambda, long long k_max) {
    std::vector<Band> bands;
    auto push_point = [&](double e, long long mult) {
        Band b;
        double lo = std::max(e, 0.0);
        b.near2 = lo * lo;
        b.far = e;
        b.population = mult;
        b.values = {{e, mult}};
        bands.push_back(std::move(b));
    };
    double y = to_double(f.shift());
    double width_at_1 = f.type == FactorType::Sphere ? 0.5 * y * y : f.c_width;
    long long cover = static_cast<long long>(std::ceil(lambda + width_at_1 + 1.0)) + 1;
    if (k_max >= 0) {
        double near_last = k_max + y - width_at_1 / std::max<double>(k_max, 1);
        if (near_last <= lambda)
            throw std::invalid_argument("factor_bands: k_max does not cover lambda");
        cover = k_max;
    }
    switch (f.type) {
        case FactorType::Circle:
            push_point(0.0, 1);
            for (long long m = 1; m <= cover; ++m) push_point(static_cast<double>(m), 2);
            break;
        case FactorType::Sphere: {
            push_point(0.0, 1);
            for (long long k = 1; k <= cover; ++k) {
                Band b;
                double t = k + y;
                double delta = 0.5 * y * y / k;
                double lo = std::max(t - delta, 0.0);
                b.near2 = lo * lo;
                b.far = t + delta;
                long long mult = checked_ll(spectra::sphere_multiplicity(f.dim, k), "multiplicity");
                b.population = mult;
                b.values = {{spectra::sphere_eigenvalue(f.dim, k), mult}};
                bands.push_back(std::move(b));
            }
            break;
        }
        case FactorType::Zoll: {
            for (double e : f.low_eigenvalues) push_point(e, 1);
            for (const auto& cl : spectra::zoll_clusters(f, cover)) {
                if (cl.population == 0) continue;
                Band b;
                double lo = std::max(cl.center - cl.half_width, 0.0);
                b.near2 = lo * lo;
                b.far = cl.center + cl.half_width;
                b.population = cl.population;
                for (double e : cl.eigenvalues) b.values.push_back({e, 1});
                bands.push_back(std::move(b));
            }
            break;
        }
    }
    std::sort(bands.begin(), bands.end(),
              [](const Band& a, const Band& b) { return a.near2 < b.near2; });
    return bands;
}

struct CellWalk {
    const std::vector<std::vector<Band>>& bands;
    double lam2;
    double lo_margin, hi_margin;
    ClusterCountBreakdown* out;
    std::vector<const Band*> chosen;

    // Counts eigenvalue tuples of the chosen cell, accumulating squares left
    // to right exactly like the independent total does.
    BigInt count_cell(std::size_t level, double acc) {
        if (level == chosen.size()) return 1;
        BigInt c = 0;
        for (const auto& v : chosen[level]->values) {
            double s = acc + v.e * v.e;
            if (s > lam2) continue;
            c += BigInt(v.mult) * count_cell(level + 1, s);
        }
        return c;
    }

    void walk(std::size_t level, double near2, double far_acc2) {
        if (level == bands.size()) {
            BigInt pop = 1;
            for (const Band* b : chosen) pop *= b->population;
            if (far_acc2 <= lam2 * lo_margin) {
                out->certain += pop;
            } else {
                out->straddle_population += pop;
                out->straddle += count_cell(0, 0.0);
            }
            return;
        }
        for (const Band& b : bands[level]) {
            double n2 = near2 + b.near2;
            if (n2 > lam2 * hi_margin) break;
            chosen[level] = &b;
            walk(level + 1, n2, far_acc2 + b.far * b.far);
        }
    }

    BigInt total(std::size_t level, double acc) {
        BigInt t = 0;
        for (const Band& b : bands[level]) {
            if (acc + b.near2 > lam2 * hi_margin) break;
            for (const auto& v : b.values) {
                double s = acc + v.e * v.e;
                if (s > lam2) continue;
                if (level + 1 == bands.size())
                    t += v.mult;
                else
                    t += BigInt(v.mult) * total(level + 1, s);
            }
        }
        return t;
    }
};

}  // namespace

ClusterCountBreakdown zoll_product_count(const ProductSpec& spec, double lambda, long long k_max) {
    if (!(lambda >= 0)) throw std::invalid_argument("zoll_product_count: lambda must be >= 0");
    std::vector<std::vector<Band>> bands;
    for (const auto& f : spec.factors) bands.push_back(factor_bands(f, lambda, k_max));
    ClusterCountBreakdown out;
    out.lambda = lambda;
    CellWalk w{bands, lambda * lambda, 1.0 - 1e-9, 1.0 + 1e-9, &out, {}};
    w.chosen.resize(bands.size());
    w.walk(0, 0.0, 0.0);
    out.total = w.total(0, 0.0);
    return out;
}

}  // namespace weyl::counting
