#pragma once

#include "weyl/spectra.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace weyl::config {

// Parsed run description: one or more [factor] sections followed by an
// optional [run] section. Flags may override individual fields afterwards.
struct RunConfig {
    std::vector<spectra::FactorSpec> factors;
    std::string lambda_grid_text;
    std::vector<double> lambda_grid;
    bool epsilon_auto = true;
    double epsilon = 0.1;
    double c = 1.0;
    long long cutoff_M = 10;
    int workers = 1;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    double tolerance = 0.1;
    int windows = 0;  // 0: pick from the lambda range
    bool shifted_ball = true;
    std::string in_path;  // input CSV for refitting recorded error series
    // Direct weight overrides for lattice-level runs. When dims is nonempty
    // the lattice, annulus, mollify and fourier-check commands use these
    // instead of deriving the weight from the factor list.
    std::vector<int> dims;
    std::vector<Rational> shifts;
    std::string raw_text;  // config contents verbatim, echoed into JSON output
};

// "geometric:a:b:count"
std::vector<double> parse_lambda_grid(const std::string& text);

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace weyl::config
