#pragma once

#include "weyl/config.hpp"

#include <string>

namespace weyl::cli {

// Each command reads the run description, writes its CSV/JSON (and SVG where
// plots make sense) into config.out_dir, and returns the process exit code:
// 0 on success, 1 on configuration or runtime errors, 2 when the run's own
// assertion fails (slope above tolerance, sandwich violation, identity miss).
int run_spectrum(const config::RunConfig& cfg);
int run_count(const config::RunConfig& cfg);
int run_weyl(const config::RunConfig& cfg);
int run_lattice(const config::RunConfig& cfg);
int run_annulus(const config::RunConfig& cfg);
int run_mollify(const config::RunConfig& cfg);
int run_fourier_check(const config::RunConfig& cfg);
int run_fit(const config::RunConfig& cfg);

// Writes one line to stderr when the WEYL_LOG environment variable is set
// to anything but "0".
void log_line(const std::string& msg);

}  // namespace weyl::cli
