#include "weyl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace weyl::analysis {

ErrorSeries error_series(const std::function<double(double)>& counter, double main_coefficient,
                         int total_degree, const std::vector<double>& grid,
                         std::string description) {
    ErrorSeries s;
    s.description = std::move(description);
    s.main_coefficient = main_coefficient;
    s.total_degree = total_degree;
    double prev = -1.0;
    for (double lam : grid) {
        if (lam <= prev) throw std::invalid_argument("error_series: grid must increase");
        prev = lam;
        double main = main_coefficient * std::pow(lam, total_degree);
        s.entries.push_back({lam, counter(lam) - main});
    }
    return s;
}

int default_window_count(double lambda_lo, double lambda_hi) {
    if (!(lambda_hi > lambda_lo) || !(lambda_lo > 0))
        throw std::invalid_argument("default_window_count: need 0 < lo < hi");
    double decades = std::log10(lambda_hi / lambda_lo);
    return std::max(4, static_cast<int>(std::ceil(16.0 * decades / 1.5)));
}

ExponentFit fit_envelope_exponent(const ErrorSeries& series, int window_count) {
    if (series.entries.size() < 3)
        throw std::invalid_argument("fit_envelope_exponent: need at least 3 entries");
    if (window_count < 1) throw std::invalid_argument("fit_envelope_exponent: window_count >= 1");
    double lo = series.entries.front().first;
    double hi = series.entries.back().first;
    if (!(lo > 0) || !(hi > lo))
        throw std::invalid_argument("fit_envelope_exponent: need increasing positive lambdas");

    double lratio = std::log(hi / lo);
    std::vector<double> maxima(window_count, -1.0);  // -1 marks an empty window
    for (const auto& [lam, err] : series.entries) {
        int idx = static_cast<int>(window_count * std::log(lam / lo) / lratio);
        idx = std::clamp(idx, 0, window_count - 1);
        maxima[idx] = std::max(maxima[idx], std::abs(err));
    }

    ExponentFit fit;
    std::vector<double> xs, ys;
    for (int i = 0; i < window_count; ++i) {
        if (maxima[i] < 0) continue;  // no samples landed here
        double mid = lo * std::exp(lratio * (i + 0.5) / window_count);
        if (maxima[i] == 0.0) {
            ++fit.dropped_zero_count;
            continue;
        }
        fit.windows.push_back({mid, maxima[i]});
        xs.push_back(std::log(mid));
        ys.push_back(std::log(maxima[i]));
    }
    if (xs.size() < 3)
        throw std::runtime_error("fit_envelope_exponent: fewer than 3 usable windows");

    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    if (!(std::abs(denom) > 1e-12))
        throw std::runtime_error("fit_envelope_exponent: degenerate window midpoints");
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    if (!std::isfinite(fit.slope)) throw std::runtime_error("fit_envelope_exponent: slope not finite");
    return fit;
}

ExponentReport exponent_report(const ExponentFit& fit, int total_degree, int n, double tolerance) {
    ExponentReport rep;
    rep.slope = fit.slope;
    rep.classical_exponent = total_degree - 1.0;
    rep.improved_exponent = total_degree - 1.0 - static_cast<double>(n - 1) / (n + 1);
    rep.tolerance = tolerance;
    rep.passes_classical = fit.slope <= rep.classical_exponent + tolerance;
    rep.passes_improved = fit.slope <= rep.improved_exponent + tolerance;
    return rep;
}

std::vector<double> geometric_grid(double a, double b, int count) {
    if (!(a > 0) || !(b > a) || count < 2)
        throw std::invalid_argument("geometric_grid: need 0 < a < b and count >= 2");
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) g[i] = a * std::pow(b / a, static_cast<double>(i) / (count - 1));
    g.front() = a;
    g.back() = b;
    return g;
}

}  // namespace weyl::analysis
