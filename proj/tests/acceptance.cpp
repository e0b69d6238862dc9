// End-to-end acceptance gate. Each criterion prints exactly one PASS/FAIL
// line with its measured numbers; the process exits nonzero if any fail.
// Tolerances and wall-clock budgets are pinned here on purpose.

#include "runner.hpp"
#include "weyl/analysis.hpp"
#include "weyl/counting.hpp"
#include "weyl/fourier.hpp"
#include "weyl/lattice.hpp"
#include "weyl/quadrature.hpp"
#include "weyl/spectra.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <numbers>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace weyl;
using counting::ProductSpec;
using spectra::FactorSpec;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& label, const std::string& detail,
            double seconds) {
    if (!pass) ++failures;
    std::printf("C%02d %s %s (%s; %.1fs)\n", id, pass ? "PASS" : "FAIL", label.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
}

void criterion(int id, const std::string& label,
               const std::function<std::pair<bool, std::string>()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        auto [p, d] = body();
        pass = p;
        detail = d;
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, pass, label, detail, secs);
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

lattice::WeightSpec weight_of(std::vector<int> d, std::vector<Rational> y = {}) {
    if (y.empty()) y.assign(d.size(), Rational(0));
    return lattice::WeightSpec(std::move(d), std::move(y));
}

double envelope_slope(const std::vector<std::pair<double, double>>& entries, int windows) {
    analysis::ErrorSeries s;
    s.entries = entries;
    return analysis::fit_envelope_exponent(s, windows).slope;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- criteria ----

std::pair<bool, std::string> cross_oracle_counts() {
    std::vector<ProductSpec> specs = {
        ProductSpec::make({FactorSpec::sphere(2)}),
        ProductSpec::make({FactorSpec::sphere(3)}),
        ProductSpec::make({FactorSpec::sphere(2), FactorSpec::circle()}),
        ProductSpec::make({FactorSpec::sphere(2), FactorSpec::sphere(2)}),
    };
    auto t0 = std::chrono::steady_clock::now();
    long long checked = 0, equal = 0;
    for (const auto& spec : specs) {
        for (int i = 0; i <= 500; ++i) {
            double lam = 0.1 * i;
            if (counting::product_count_tensor(spec, lam) ==
                counting::sphere_product_count(spec, lam))
                ++equal;
            ++checked;
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = equal == checked && secs < 10.0;
    return {pass, fmt("%lld/%lld exact matches across 4 products, lambda <= 50 step 0.1, "
                      "budget 10s", equal, checked)};
}

std::pair<bool, std::string> multiplicity_closed_forms() {
    long long bad = 0;
    for (long long k = 0; k <= 100; ++k) {
        if (spectra::sphere_multiplicity(2, k) != BigInt(2 * k + 1)) ++bad;
        if (spectra::sphere_multiplicity(3, k) != BigInt((k + 1) * (k + 1))) ++bad;
    }
    for (int d : {2, 3, 4})
        for (long long k = 2; k <= 50; ++k)
            if (spectra::sphere_cluster_poly(d, k) != Rational(spectra::sphere_multiplicity(d, k)))
                ++bad;
    return {bad == 0, fmt("closed forms k <= 100, cluster polynomial k in [2,50], d in {2,3,4}, "
                          "%lld mismatches", bad)};
}

std::pair<bool, std::string> torus_remainder_exponent() {
    auto t0 = std::chrono::steady_clock::now();
    auto w = weight_of({1, 1});
    double coeff = lattice::main_term_constant(w);
    auto grid = analysis::geometric_grid(100.0, 5000.0, 600);
    std::vector<std::pair<double, double>> entries;
    for (double lam : grid) {
        entries.emplace_back(lam, lattice::weighted_count(w, lam).value - coeff * lam * lam);
    }
    int windows = analysis::default_window_count(100.0, 5000.0);
    double slope = envelope_slope(entries, windows);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = slope <= 0.70 && windows >= 16 && secs < 60.0;
    return {pass, fmt("slope %.4f <= 0.70, %d windows over [1e2,5e3], 600 points, budget 60s",
                      slope, windows)};
}

std::pair<bool, std::string> weighted_lattice_exponent() {
    auto t0 = std::chrono::steady_clock::now();
    double c_d = lattice::main_term_constant(weight_of({2, 1}));
    double oracle = gl_panels(
        [](double th) {
            double x = std::sin(th), h = std::cos(th);
            return x * 2.0 * h * h;
        },
        0.0, 1.5707963267948966, 64);
    bool coeff_ok = std::abs(c_d - 2.0 / 3.0) < 1e-12 && std::abs(c_d - oracle) < 1e-8;

    auto grid = analysis::geometric_grid(100.0, 3000.0, 320);
    int windows = analysis::default_window_count(100.0, 3000.0);
    double bound = 5.0 / 3.0 + 0.1;
    std::vector<double> slopes;
    for (auto y : std::vector<std::vector<Rational>>{{Rational(0), Rational(0)},
                                                     {Rational(1, 4), Rational(0)}}) {
        auto w = weight_of({2, 1}, y);
        std::vector<std::pair<double, double>> entries;
        for (double lam : grid) {
            auto r = lattice::weighted_count(w, lam);
            entries.emplace_back(lam, r.error);
        }
        slopes.push_back(envelope_slope(entries, windows));
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = coeff_ok && slopes[0] <= bound && slopes[1] <= bound && secs < 120.0;
    return {pass, fmt("slopes %.4f, %.4f <= %.4f for shifts 0 and (1/4,0); coefficient 2/3 "
                      "matches quadrature to 1e-8: %s; budget 120s",
                      slopes[0], slopes[1], bound, coeff_ok ? "yes" : "no")};
}

std::pair<bool, std::string> annulus_exponents() {
    // 1200 points: the window maxima of these spiky shell sums need a dense
    // grid before they stabilize; sparser grids under-sample some windows and
    // the fitted slope jumps around.
    auto grid = analysis::geometric_grid(100.0, 3000.0, 1200);
    int windows = analysis::default_window_count(100.0, 3000.0);
    double bound = 3.0 - 2.0 + 0.15;

    auto w = weight_of({2, 1}, {Rational(1, 4), Rational(0)});
    std::vector<std::pair<double, double>> ann;
    for (double lam : grid) ann.emplace_back(lam, lattice::annulus_sum(w, lam, 1.0));
    double ann_slope = envelope_slope(ann, windows);

    auto spec = ProductSpec::make({FactorSpec::sphere(2), FactorSpec::circle()});
    std::vector<std::pair<double, double>> diff;
    for (double lam : grid) {
        double v = counting::cluster_count(spec, lam) -
                   counting::cluster_count(spec, lam - 1.0 / lam);
        diff.emplace_back(lam, v);
    }
    double diff_slope = envelope_slope(diff, windows);
    bool pass = ann_slope <= bound && diff_slope <= bound;
    return {pass, fmt("annulus slope %.4f, cluster-sum annulus-difference slope %.4f, both <= "
                      "%.2f over [1e2,3e3], 1200-point grid",
                      ann_slope, diff_slope, bound)};
}

std::pair<bool, std::string> reduction_chain_exponents() {
    auto spec = ProductSpec::make({FactorSpec::sphere(2)});
    auto grid = analysis::geometric_grid(100.0, 3000.0, 200);
    int windows = analysis::default_window_count(100.0, 3000.0);
    double bound = 2.0 - 2.0 + 0.15;
    long long M = 10;

    std::vector<std::pair<double, double>> restrict_gap, leading_gap, unrestrict_gap;
    for (double lam : grid) {
        double full = counting::cluster_count(spec, lam);
        double restricted = counting::cluster_count_from(spec, lam, M);
        double leading = counting::monomial_count_from(spec, lam, M);
        double unrestricted = counting::monomial_count_full(spec, lam);
        restrict_gap.emplace_back(lam, full - restricted);
        leading_gap.emplace_back(lam, std::abs(restricted - leading));
        unrestrict_gap.emplace_back(lam, unrestricted - leading);
    }

    auto slope_or_trivial = [&](const std::vector<std::pair<double, double>>& entries,
                                double& slope_out) {
        double biggest = 0;
        for (auto [lam, v] : entries) biggest = std::max(biggest, std::abs(v));
        if (biggest <= 1e-9) {
            slope_out = 0.0;
            return std::string("identically zero, trivially within bound");
        }
        slope_out = envelope_slope(entries, windows);
        return fmt("slope %.4f", slope_out);
    };
    double s1, s2, s3;
    auto d1 = slope_or_trivial(restrict_gap, s1);
    auto d2 = slope_or_trivial(leading_gap, s2);
    auto d3 = slope_or_trivial(unrestrict_gap, s3);
    bool pass = s1 <= bound && s2 <= bound && s3 <= bound;
    return {pass, fmt("index cutoff M=10: full-minus-restricted %s; restricted-minus-leading "
                      "%s; unrestricted-minus-leading %s; bound %.2f",
                      d1.c_str(), d2.c_str(), d3.c_str(), bound)};
}

std::pair<bool, std::string> mollifier_sandwich() {
    long long violations = 0, checks = 0;
    std::vector<lattice::WeightSpec> specs = {
        weight_of({1, 1}),
        weight_of({2, 1}, {Rational(1, 2), Rational(0)}),
    };
    for (const auto& w : specs) {
        for (double lam : analysis::geometric_grid(3.0, 40.0, 50)) {
            double mid = lattice::weighted_count(w, lam).value;
            double auto_eps = lattice::default_epsilon(w.n(), lam);
            for (double mult : {1.0, 0.5, 2.0}) {
                lattice::MollifierSpec moll;
                moll.epsilon = mult * auto_eps;
                // Coarse profile: the sandwich is structural (interior term
                // exact, band weights clamped to [0,1]); node count and node
                // tolerance only set value accuracy, not the inequalities.
                moll.profile_nodes = 257;
                moll.quad_tol = 1e-8;
                double lower = lattice::mollified_count(w, lam - moll.epsilon, moll);
                double upper = lattice::mollified_count(w, lam + moll.epsilon, moll);
                double slack = 1e-7 * (1.0 + std::abs(mid));
                if (!(lower <= mid + slack && mid <= upper + slack)) ++violations;
                ++checks;
            }
        }
    }
    return {violations == 0, fmt("%lld violations in %lld smoothed-count sandwiches, 50-point "
                                 "grid, widths {auto, auto/2, 2*auto}, two weight models",
                                 violations, checks)};
}

std::pair<bool, std::string> frequency_identity() {
    auto t0 = std::chrono::steady_clock::now();
    auto w = weight_of({1, 1});
    lattice::MollifierSpec moll;
    moll.epsilon = 0.2;
    fourier::TruncationSpec trunc;
    trunc.tail_tolerance = 0.1;
    double coeff = lattice::main_term_constant(w);
    bool pass = std::abs(coeff - 3.14159265358979324) < 1e-13;
    std::string detail;
    for (double lam : {10.0, 20.0, 40.0}) {
        auto r = fourier::poisson_error_sum(w, lam, moll, trunc);
        double target = lattice::mollified_count_swapped(w, lam, moll);
        double miss = std::abs(coeff * lam * lam + r.value - target);
        double allowed = std::max(1e-3 * std::abs(target), r.tail_bound);
        if (!(miss <= allowed)) pass = false;
        detail += fmt("lam=%g miss %.2e vs %.2e; ", lam, miss, allowed);
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 60.0) pass = false;
    return {pass, detail + "tolerance max(1e-3 rel, certified tail), budget 60s"};
}

std::pair<bool, std::string> transform_decay() {
    bool volumes_ok = true;
    for (int n : {1, 2, 3})
        if (std::abs(fourier::ball_chi_hat(n, 0.0) - fourier::ball_volume(n)) >= 1e-8)
            volumes_ok = false;

    auto grid = [](int count) {
        std::vector<double> r(count);
        for (int i = 0; i < count; ++i)
            r[i] = std::exp(std::log(50.0) * i / (count - 1.0));
        return r;
    };
    bool sup_ok = true;
    double worst_drift = 0;
    for (int n : {1, 2, 3}) {
        double coarse = fourier::decay_ratio_sup(n, grid(201));
        double fine = fourier::decay_ratio_sup(n, grid(403));
        double drift = std::abs(fine - coarse) / coarse;
        worst_drift = std::max(worst_drift, drift);
        if (drift > 0.05) sup_ok = false;
    }

    lattice::MollifierSpec moll;
    moll.epsilon = 0.4;
    auto dy = fourier::dyadic_sum_check(weight_of({1, 1}), 5.0, moll, 4);
    bool shells_ok = dy.shells.size() >= 3;
    for (std::size_t j = 1; j + 1 < dy.shells.size(); ++j)
        if (!(dy.shells[j + 1].abs_sum < dy.shells[j].abs_sum)) shells_ok = false;

    bool pass = volumes_ok && sup_ok && shells_ok;
    return {pass, fmt("zero-frequency volumes to 1e-8: %s; decay-ratio sup drift %.2f%% <= 5%%; "
                      "dyadic shells decreasing beyond the first: %s",
                      volumes_ok ? "yes" : "no", 100.0 * worst_drift, shells_ok ? "yes" : "no")};
}

std::pair<bool, std::string> product_main_coefficient() {
    auto t0 = std::chrono::steady_clock::now();
    auto spec = ProductSpec::make({FactorSpec::sphere(2), FactorSpec::sphere(2)});
    // Geometric path: |B_4| vol(S^2 x S^2) / (2 pi)^4 = 0.5 exactly.
    double pi = std::numbers::pi;
    double vol = 4.0 * pi * 4.0 * pi;
    double geo = fourier::ball_volume(4) * vol / std::pow(2.0 * pi, 4);
    // Cross-check path: weighted-lattice ball constant times the cluster
    // polynomial leading coefficients (2 per sphere factor).
    double cross = lattice::main_term_constant(counting::weight_spec_of(spec));
    for (int i = 0; i < spec.k; ++i) cross *= spec.factors[i].leading();
    double coeff = counting::weyl_main_coefficient(spec);
    bool coeff_ok = std::abs(geo - 0.5) < 1e-12 && std::abs(coeff - geo) < 1e-12 &&
                    std::abs(cross - geo) < 1e-12;

    double r200 = to_double(counting::sphere_product_count(spec, 200.0)) / std::pow(200.0, 4);
    double r400 = to_double(counting::sphere_product_count(spec, 400.0)) / std::pow(400.0, 4);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = coeff_ok && std::abs(r200 - 0.5) <= 0.02 * 0.5 && std::abs(r400 - 0.5) <= 0.01 * 0.5 &&
                secs < 120.0;
    return {pass, fmt("N/lambda^4 = %.5f at 200 (within 2%%), %.5f at 400 (within 1%%) of 0.5; "
                      "coefficient matches the weighted-lattice constant; budget 120s",
                      r200, r400)};
}

std::pair<bool, std::string> determinism_across_workers() {
    namespace fs = std::filesystem;
    auto dir_of = [](const std::string& tag) {
        auto p = fs::temp_directory_path() / ("weyl_acceptance_" + tag);
        fs::remove_all(p);
        fs::create_directories(p);
        return p.string();
    };
    long long mismatches = 0;
    std::string checked;

    auto compare = [&](const std::string& name, config::RunConfig cfg,
                       int (*run)(const config::RunConfig&), const std::string& csv) {
        auto one = cfg;
        one.workers = 1;
        one.out_dir = dir_of(name + "_w1");
        auto eight = cfg;
        eight.workers = 8;
        eight.out_dir = dir_of(name + "_w8");
        if (run(one) != 0 || run(eight) != 0) {
            ++mismatches;
            return;
        }
        if (slurp(one.out_dir + "/" + csv) != slurp(eight.out_dir + "/" + csv)) ++mismatches;
        checked += name + " ";
    };

    config::RunConfig lat;
    lat.dims = {2, 1};
    lat.shifts = {Rational(1, 4), Rational(0)};
    lat.lambda_grid = {50.5, 120.25, 301.0};
    compare("lattice", lat, cli::run_lattice, "lattice.csv");

    config::RunConfig mol;
    mol.dims = {1, 1};
    mol.lambda_grid = {30.0, 45.5};
    compare("mollify", mol, cli::run_mollify, "mollify.csv");

    config::RunConfig cnt;
    cnt.factors = {FactorSpec::zoll(3, Rational(2), 0.8, 0.25, 0.1,
                                    spectra::Placement::SeededUniform, 5),
                   FactorSpec::circle()};
    cnt.lambda_grid = {20.5, 35.5};
    compare("count", cnt, cli::run_count, "count.csv");

    return {mismatches == 0, fmt("byte-identical CSV for workers {1,8}: %s(%lld mismatches)",
                                 checked.c_str(), mismatches)};
}

}  // namespace

int main() {
    std::printf("acceptance: exact counting, remainder exponents, smoothing, frequency side\n");
    criterion(1, "two independent product counters agree exactly", cross_oracle_counts);
    criterion(2, "sphere multiplicity closed forms and cluster polynomial", multiplicity_closed_forms);
    criterion(3, "plain torus remainder exponent", torus_remainder_exponent);
    criterion(4, "weighted plane count: coefficient and remainder exponent", weighted_lattice_exponent);
    criterion(5, "thin-annulus sums stay one order below the main term", annulus_exponents);
    criterion(6, "cluster-sum reduction steps stay low order", reduction_chain_exponents);
    criterion(7, "smoothed counts sandwich the sharp count", mollifier_sandwich);
    criterion(8, "frequency-side sum closes the smoothed count identity", frequency_identity);
    criterion(9, "ball transform decay and dyadic shell behaviour", transform_decay);
    criterion(10, "four-dimensional product matches its main coefficient", product_main_coefficient);
    criterion(11, "worker count never changes CSV bytes", determinism_across_workers);
    if (failures == 0) {
        std::printf("acceptance: all 11 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria failed\n", failures);
    return 1;
}
