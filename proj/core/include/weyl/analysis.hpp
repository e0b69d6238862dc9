#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace weyl::analysis {

struct ErrorSeries {
    std::vector<std::pair<double, double>> entries;  // (lambda, error), lambda increasing
    std::string description;
    double main_coefficient = 0;
    int total_degree = 0;
};

ErrorSeries error_series(const std::function<double(double)>& counter, double main_coefficient,
                         int total_degree, const std::vector<double>& grid,
                         std::string description = {});

struct Window {
    double lambda_mid = 0;
    double max_abs_error = 0;
};

struct ExponentFit {
    double slope = 0;
    double intercept = 0;
    double rms_residual = 0;
    std::vector<Window> windows;
    int dropped_zero_count = 0;
};

// 16 geometric windows per decade-and-a-half of lambda range.
int default_window_count(double lambda_lo, double lambda_hi);

// Splits the lambda range into geometric windows, takes max|error| per
// window, and least-squares fits log(max) against log(lambda_mid). Windows
// whose max is zero are dropped and counted; throws if fewer than 3 usable
// windows remain.
ExponentFit fit_envelope_exponent(const ErrorSeries& series, int window_count);

struct ExponentReport {
    double slope = 0;
    double classical_exponent = 0;  // |d| - 1
    double improved_exponent = 0;   // |d| - 1 - (n-1)/(n+1)
    double tolerance = 0;
    bool passes_classical = false;
    bool passes_improved = false;
};

ExponentReport exponent_report(const ExponentFit& fit, int total_degree, int n, double tolerance);

std::vector<double> geometric_grid(double a, double b, int count);

}  // namespace weyl::analysis
