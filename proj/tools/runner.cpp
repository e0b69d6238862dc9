#include "runner.hpp"

#include "weyl/analysis.hpp"
#include "weyl/counting.hpp"
#include "weyl/fourier.hpp"
#include "weyl/io.hpp"
#include "weyl/lattice.hpp"
#include "weyl/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace weyl::cli {

using config::RunConfig;
using io::csv_cell;
using io::CsvWriter;
using io::JsonValue;

void log_line(const std::string& msg) {
    const char* lvl = std::getenv("WEYL_LOG");
    if (!lvl || std::string(lvl) == "0") return;
    std::fprintf(stderr, "[weyl] %s\n", msg.c_str());
}

namespace {

std::string out_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

// Every JSON output carries the run description verbatim so the file alone
// reproduces the run.
JsonValue base_json(const RunConfig& cfg) {
    JsonValue j = JsonValue::object();
    j.set("config", JsonValue::str(cfg.raw_text));
    j.set("seed", JsonValue::integer(static_cast<long long>(cfg.seed)));
    j.set("workers", JsonValue::integer(cfg.workers));
    return j;
}

const std::vector<double>& grid_of(const RunConfig& cfg) {
    if (cfg.lambda_grid.empty())
        throw std::invalid_argument("this command needs lambda_grid (or --lambda-grid)");
    return cfg.lambda_grid;
}

counting::ProductSpec product_of(const RunConfig& cfg) {
    if (cfg.factors.empty())
        throw std::invalid_argument("this command needs at least one [factor] section");
    return counting::ProductSpec::make(cfg.factors);
}

// Weight for the lattice-level commands: explicit dims/shift when given,
// otherwise derived from the factor list.
lattice::WeightSpec weight_of(const RunConfig& cfg) {
    if (!cfg.dims.empty()) {
        std::vector<Rational> y = cfg.shifts;
        if (y.size() > cfg.dims.size())
            throw std::invalid_argument("shift has more entries than dims");
        y.resize(cfg.dims.size(), Rational(0));
        return lattice::WeightSpec(cfg.dims, y);
    }
    return counting::weight_spec_of(product_of(cfg));
}

double epsilon_of(const RunConfig& cfg, int n, double lambda) {
    return cfg.epsilon_auto ? lattice::default_epsilon(n, lambda) : cfg.epsilon;
}

std::string spec_label(const RunConfig& cfg) {
    if (!cfg.dims.empty()) {
        std::string s = "d=(";
        for (std::size_t i = 0; i < cfg.dims.size(); ++i)
            s += (i ? "," : "") + std::to_string(cfg.dims[i]);
        return s + ")";
    }
    std::string s;
    for (const auto& f : cfg.factors) {
        if (!s.empty()) s += " x ";
        switch (f.type) {
            case spectra::FactorType::Sphere: s += "S^" + std::to_string(f.dim); break;
            case spectra::FactorType::Circle: s += "S^1"; break;
            case spectra::FactorType::Zoll: s += "Z^" + std::to_string(f.dim); break;
        }
    }
    return s.empty() ? "(empty)" : s;
}

// Same binning the envelope fitter uses, so window ids in the CSV line up
// with the fitted windows.
int window_id(double lam, double lo, double hi, int count) {
    int idx = static_cast<int>(count * std::log(lam / lo) / std::log(hi / lo));
    return std::clamp(idx, 0, count - 1);
}

JsonValue windows_json(const analysis::ExponentFit& fit) {
    JsonValue arr = JsonValue::array();
    for (const auto& w : fit.windows) {
        JsonValue e = JsonValue::object();
        e.set("lambda_mid", JsonValue::number(w.lambda_mid));
        e.set("max_abs_error", JsonValue::number(w.max_abs_error));
        arr.push(std::move(e));
    }
    return arr;
}

int guarded(const char* name, const std::function<int()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "weyl %s: %s\n", name, e.what());
        return 1;
    }
}

}  // namespace

int run_spectrum(const RunConfig& cfg) {
    return guarded("spectrum", [&] {
        if (cfg.factors.empty())
            throw std::invalid_argument("spectrum needs at least one [factor] section");
        double lam_max = cfg.lambda_grid.empty() ? 10.0 : cfg.lambda_grid.back();
        long long k_max = static_cast<long long>(std::ceil(lam_max)) + 1;

        CsvWriter csv({"factor_index", "factor_type", "k", "center", "eigenvalue", "count"});
        JsonValue factors = JsonValue::array();
        for (std::size_t fi = 0; fi < cfg.factors.size(); ++fi) {
            const auto& f = cfg.factors[fi];
            JsonValue jf = JsonValue::object();
            long long idx = static_cast<long long>(fi);
            switch (f.type) {
                case spectra::FactorType::Circle:
                    jf.set("type", JsonValue::str("circle"));
                    for (long long m = 0; m <= k_max; ++m)
                        csv.row({csv_cell(idx), "circle", csv_cell(m), csv_cell(double(m)),
                                 csv_cell(double(m)), csv_cell(m == 0 ? 1ll : 2ll)});
                    break;
                case spectra::FactorType::Sphere: {
                    jf.set("type", JsonValue::str("sphere"));
                    jf.set("dim", JsonValue::integer(f.dim));
                    double y = to_double(f.shift());
                    for (long long k = 0; k <= k_max; ++k)
                        csv.row({csv_cell(idx), "sphere", csv_cell(k), csv_cell(k + y),
                                 csv_cell(spectra::sphere_eigenvalue(f.dim, k)),
                                 csv_cell(checked_ll(spectra::sphere_multiplicity(f.dim, k),
                                                     "multiplicity"))});
                    break;
                }
                case spectra::FactorType::Zoll: {
                    jf.set("type", JsonValue::str("zoll"));
                    jf.set("dim", JsonValue::integer(f.dim));
                    jf.set("C", JsonValue::number(f.C));
                    jf.set("c_width", JsonValue::number(f.c_width));
                    for (std::size_t li = 0; li < f.low_eigenvalues.size(); ++li)
                        csv.row({csv_cell(idx), "zoll_low", csv_cell(-1ll),
                                 csv_cell(f.low_eigenvalues[li]), csv_cell(f.low_eigenvalues[li]),
                                 csv_cell(1ll)});
                    auto clusters = spectra::zoll_clusters(f, k_max);
                    JsonValue bands = JsonValue::array();
                    for (const auto& cl : clusters) {
                        csv.row({csv_cell(idx), "zoll", csv_cell(cl.k), csv_cell(cl.center),
                                 csv_cell(cl.eigenvalues.empty() ? cl.center
                                                                 : cl.eigenvalues.front()),
                                 csv_cell(cl.population)});
                        JsonValue jb = JsonValue::object();
                        jb.set("k", JsonValue::integer(cl.k));
                        jb.set("center", JsonValue::number(cl.center));
                        jb.set("half_width", JsonValue::number(cl.half_width));
                        jb.set("population", JsonValue::integer(cl.population));
                        bands.push(std::move(jb));
                    }
                    jf.set("bands", std::move(bands));
                    break;
                }
            }
            factors.push(std::move(jf));
        }
        csv.write(out_path(cfg, "spectrum.csv"));
        JsonValue j = base_json(cfg);
        j.set("k_max", JsonValue::integer(k_max));
        j.set("factors", std::move(factors));
        io::write_text_file(out_path(cfg, "spectrum.json"), j.dump());
        log_line("spectrum: wrote " + out_path(cfg, "spectrum.csv"));
        return 0;
    });
}

int run_count(const RunConfig& cfg) {
    return guarded("count", [&] {
        auto spec = product_of(cfg);
        const auto& grid = grid_of(cfg);
        CsvWriter csv({"lambda", "total", "interior", "boundary"});
        JsonValue rows = JsonValue::array();
        bool invariants_ok = true;
        for (double lam : grid) {
            auto b = counting::zoll_product_count(spec, lam);
            // The straddle resolution must reproduce the independent total.
            bool ok = b.certain <= b.total && b.total <= b.certain + b.straddle_population &&
                      b.total == b.certain + b.straddle;
            invariants_ok = invariants_ok && ok;
            csv.row({csv_cell(lam), csv_cell(checked_ll(b.total, "total")),
                     csv_cell(checked_ll(b.certain, "interior")),
                     csv_cell(checked_ll(b.straddle, "boundary"))});
            JsonValue r = JsonValue::object();
            r.set("lambda", JsonValue::number(lam));
            r.set("total", JsonValue::integer(checked_ll(b.total, "total")));
            r.set("interior", JsonValue::integer(checked_ll(b.certain, "interior")));
            r.set("boundary", JsonValue::integer(checked_ll(b.straddle, "boundary")));
            r.set("straddle_population",
                  JsonValue::integer(checked_ll(b.straddle_population, "straddle population")));
            if (!spec.has_zoll) {
                auto exact = counting::sphere_product_count(
                    spec, lam,
                    cfg.shifted_ball ? counting::BallCondition::SpectrumExact
                                     : counting::BallCondition::CenterBall,
                    cfg.workers);
                r.set("exact", JsonValue::integer(checked_ll(exact, "exact count")));
            }
            r.set("invariants_ok", JsonValue::boolean(ok));
            rows.push(std::move(r));
        }
        csv.write(out_path(cfg, "count.csv"));
        JsonValue j = base_json(cfg);
        j.set("spec", JsonValue::str(spec_label(cfg)));
        j.set("shifted_ball", JsonValue::boolean(cfg.shifted_ball));
        j.set("invariants_ok", JsonValue::boolean(invariants_ok));
        j.set("rows", std::move(rows));
        io::write_text_file(out_path(cfg, "count.json"), j.dump());
        log_line("count: wrote " + out_path(cfg, "count.csv"));
        return invariants_ok ? 0 : 2;
    });
}

namespace {

int emit_exponent_run(const RunConfig& cfg, const analysis::ErrorSeries& series, int total_degree,
                      int n, const std::string& stem) {
    int wc = cfg.windows > 0
                 ? cfg.windows
                 : analysis::default_window_count(series.entries.front().first,
                                                  series.entries.back().first);
    auto fit = analysis::fit_envelope_exponent(series, wc);
    auto rep = analysis::exponent_report(fit, total_degree, n, cfg.tolerance);
    bool pass = rep.passes_improved;

    double lo = series.entries.front().first, hi = series.entries.back().first;
    CsvWriter csv({"lambda", "error", "window_id"});
    for (const auto& [lam, err] : series.entries)
        csv.row({csv_cell(lam), csv_cell(err),
                 csv_cell(static_cast<long long>(window_id(lam, lo, hi, wc)))});
    csv.write(out_path(cfg, stem + ".csv"));

    JsonValue j = base_json(cfg);
    j.set("spec", JsonValue::str(series.description));
    j.set("slope", JsonValue::number(rep.slope));
    j.set("classical_exponent", JsonValue::number(rep.classical_exponent));
    j.set("improved_exponent", JsonValue::number(rep.improved_exponent));
    j.set("tolerance", JsonValue::number(rep.tolerance));
    j.set("pass", JsonValue::boolean(pass));
    j.set("windows", windows_json(fit));
    j.set("window_count", JsonValue::integer(wc));
    j.set("dropped_zero_count", JsonValue::integer(fit.dropped_zero_count));
    j.set("rms_residual", JsonValue::number(fit.rms_residual));
    j.set("main_coefficient", JsonValue::number(series.main_coefficient));
    j.set("total_degree", JsonValue::integer(total_degree));
    io::write_text_file(out_path(cfg, stem + ".json"), j.dump());

    io::write_text_file(out_path(cfg, stem + ".svg"),
                        io::loglog_plot_svg(fit.windows, fit, rep.classical_exponent,
                                            rep.improved_exponent,
                                            series.description + " error envelope"));
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s: slope %.4f vs improved %.4f + %.2f -> %s", stem.c_str(),
                  rep.slope, rep.improved_exponent, rep.tolerance, pass ? "pass" : "FAIL");
    log_line(buf);
    return pass ? 0 : 2;
}

}  // namespace

int run_weyl(const RunConfig& cfg) {
    return guarded("weyl", [&] {
        auto spec = product_of(cfg);
        const auto& grid = grid_of(cfg);
        double coeff = counting::weyl_main_coefficient(spec);
        auto cond = cfg.shifted_ball ? counting::BallCondition::SpectrumExact
                                     : counting::BallCondition::CenterBall;
        std::function<double(double)> counter;
        if (spec.has_zoll) {
            counter = [&spec](double lam) {
                auto b = counting::zoll_product_count(spec, lam);
                return to_double(b.total);
            };
        } else {
            counter = [&spec, cond, &cfg](double lam) {
                return to_double(counting::sphere_product_count(spec, lam, cond, cfg.workers));
            };
        }
        auto series = analysis::error_series(counter, coeff, spec.total_degree, grid,
                                             spec_label(cfg));
        return emit_exponent_run(cfg, series, spec.total_degree, spec.n, "weyl");
    });
}

int run_lattice(const RunConfig& cfg) {
    return guarded("lattice", [&] {
        auto w = weight_of(cfg);
        const auto& grid = grid_of(cfg);
        double cd = lattice::main_term_constant(w);
        CsvWriter csv({"lambda", "value", "main_term", "error"});
        for (double lam : grid) {
            auto r = lattice::weighted_count(w, lam, cfg.workers);
            csv.row({csv_cell(r.lambda), csv_cell(r.value), csv_cell(r.main_term),
                     csv_cell(r.error)});
        }
        csv.write(out_path(cfg, "lattice.csv"));
        JsonValue j = base_json(cfg);
        j.set("spec", JsonValue::str(spec_label(cfg)));
        j.set("main_term_constant", JsonValue::number(cd));
        j.set("total_degree", JsonValue::integer(w.total_degree()));
        j.set("points", JsonValue::integer(static_cast<long long>(grid.size())));
        io::write_text_file(out_path(cfg, "lattice.json"), j.dump());
        log_line("lattice: wrote " + out_path(cfg, "lattice.csv"));
        return 0;
    });
}

int run_annulus(const RunConfig& cfg) {
    return guarded("annulus", [&] {
        auto w = weight_of(cfg);
        const auto& grid = grid_of(cfg);
        CsvWriter csv({"lambda", "value"});
        analysis::ErrorSeries series;
        series.description = spec_label(cfg) + " annulus";
        series.total_degree = w.total_degree();
        for (double lam : grid) {
            double v = lattice::annulus_sum(w, lam, cfg.c, cfg.workers);
            csv.row({csv_cell(lam), csv_cell(v)});
            series.entries.push_back({lam, v});
        }
        csv.write(out_path(cfg, "annulus.csv"));

        JsonValue j = base_json(cfg);
        j.set("spec", JsonValue::str(spec_label(cfg)));
        j.set("c", JsonValue::number(cfg.c));
        // envelope slope of the annulus mass itself (no main term here)
        int wc = cfg.windows > 0 ? cfg.windows
                                 : analysis::default_window_count(grid.front(), grid.back());
        auto fit = analysis::fit_envelope_exponent(series, wc);
        j.set("slope", JsonValue::number(fit.slope));
        j.set("windows", windows_json(fit));
        io::write_text_file(out_path(cfg, "annulus.json"), j.dump());
        log_line("annulus: wrote " + out_path(cfg, "annulus.csv"));
        return 0;
    });
}

int run_mollify(const RunConfig& cfg) {
    return guarded("mollify", [&] {
        auto w = weight_of(cfg);
        const auto& grid = grid_of(cfg);
        CsvWriter csv({"lambda", "epsilon", "lower", "mollified", "upper", "ok"});
        long long violations = 0;
        for (double lam : grid) {
            double eps = epsilon_of(cfg, w.n(), lam);
            if (!(lam - eps > 0)) throw std::invalid_argument("mollify: lambda - epsilon <= 0");
            lattice::MollifierSpec moll;
            moll.epsilon = eps;
            double lower = lattice::weighted_count(w, lam - eps, cfg.workers).value;
            double upper = lattice::weighted_count(w, lam + eps, cfg.workers).value;
            double mid = lattice::mollified_count(w, lam, moll, cfg.workers);
            double slack = 1e-7 * (1.0 + std::abs(mid));
            bool ok = lower - slack <= mid && mid <= upper + slack;
            if (!ok) ++violations;
            csv.row({csv_cell(lam), csv_cell(eps), csv_cell(lower), csv_cell(mid),
                     csv_cell(upper), csv_cell(static_cast<long long>(ok ? 1 : 0))});
        }
        csv.write(out_path(cfg, "mollify.csv"));
        JsonValue j = base_json(cfg);
        j.set("spec", JsonValue::str(spec_label(cfg)));
        j.set("epsilon_mode",
              JsonValue::str(cfg.epsilon_auto ? "auto" : io::format_double(cfg.epsilon)));
        j.set("violations", JsonValue::integer(violations));
        j.set("points", JsonValue::integer(static_cast<long long>(grid.size())));
        io::write_text_file(out_path(cfg, "mollify.json"), j.dump());
        log_line("mollify: " + std::to_string(violations) + " sandwich violations");
        return violations == 0 ? 0 : 2;
    });
}

int run_fourier_check(const RunConfig& cfg) {
    return guarded("fourier-check", [&] {
        auto w = weight_of(cfg);
        int n = w.n();
        double lam = cfg.lambda_grid.empty() ? 10.0 : cfg.lambda_grid.back();
        double eps = epsilon_of(cfg, n, lam);
        lattice::MollifierSpec moll;
        moll.epsilon = eps;

        // radial decay table of the ball transform
        auto radii = analysis::geometric_grid(1.0, 100.0, 201);
        CsvWriter csv({"xi_norm", "chi_hat", "ratio"});
        for (double t : radii) {
            double v = fourier::ball_chi_hat(n, t);
            double ratio = std::abs(v) * std::pow(1.0 + t * t, 0.25 * (n + 1));
            csv.row({csv_cell(t), csv_cell(v), csv_cell(ratio)});
        }
        csv.write(out_path(cfg, "fourier.csv"));

        double sup = fourier::decay_ratio_sup(n, radii);

        fourier::TruncationSpec trunc;
        trunc.tail_tolerance = std::max(cfg.tolerance, 1e-6);
        auto ps = fourier::poisson_error_sum(w, lam, moll, trunc);
        double main = lattice::main_term_constant(w) * std::pow(lam, w.total_degree());
        double target = lattice::mollified_count_swapped(w, lam, moll);
        double miss = std::abs(main + ps.value - target);
        double allowed = std::max(1e-3 * std::abs(target), ps.tail_bound + 1e-6 * std::abs(target));
        bool ok = miss <= allowed;

        auto dy = fourier::dyadic_sum_check(w, lam, moll, trunc.dyadic_levels);
        JsonValue shells = JsonValue::array();
        {
            JsonValue c = JsonValue::object();
            c.set("level", JsonValue::integer(-1ll));
            c.set("abs_sum", JsonValue::number(dy.center_abs));
            c.set("signed_sum", JsonValue::number(dy.center_signed));
            c.set("terms", JsonValue::integer(dy.center_terms));
            shells.push(std::move(c));
        }
        for (const auto& sh : dy.shells) {
            JsonValue s = JsonValue::object();
            s.set("level", JsonValue::integer(sh.level));
            s.set("abs_sum", JsonValue::number(sh.abs_sum));
            s.set("signed_sum", JsonValue::number(sh.signed_sum));
            s.set("terms", JsonValue::integer(sh.terms));
            shells.push(std::move(s));
        }

        JsonValue j = base_json(cfg);
        j.set("spec", JsonValue::str(spec_label(cfg)));
        j.set("lambda", JsonValue::number(lam));
        j.set("epsilon", JsonValue::number(eps));
        j.set("sup_ratio", JsonValue::number(sup));
        j.set("tail_bound", JsonValue::number(ps.tail_bound));
        j.set("poisson_sum", JsonValue::number(ps.value));
        j.set("poisson_abs_sum", JsonValue::number(ps.abs_sum));
        j.set("poisson_terms", JsonValue::integer(ps.terms));
        j.set("imag_residual", JsonValue::number(ps.imag_residual));
        j.set("main_term", JsonValue::number(main));
        j.set("mollified_target", JsonValue::number(target));
        j.set("identity_miss", JsonValue::number(miss));
        j.set("identity_allowed", JsonValue::number(allowed));
        j.set("identity_ok", JsonValue::boolean(ok));
        j.set("shells", std::move(shells));
        io::write_text_file(out_path(cfg, "fourier.json"), j.dump());
        char buf[160];
        std::snprintf(buf, sizeof(buf), "fourier-check: miss %.3e allowed %.3e -> %s", miss,
                      allowed, ok ? "pass" : "FAIL");
        log_line(buf);
        return ok ? 0 : 2;
    });
}

int run_fit(const RunConfig& cfg) {
    return guarded("fit", [&] {
        if (cfg.in_path.empty()) throw std::invalid_argument("fit needs --in <csv>");
        auto w = weight_of(cfg);  // reference exponents need the weight shape
        std::ifstream in(cfg.in_path);
        if (!in) throw std::runtime_error("cannot open '" + cfg.in_path + "'");
        std::string line;
        if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
        // locate lambda and error columns in the header
        int lam_col = -1, err_col = -1, col = 0;
        {
            std::stringstream hs(line);
            std::string cell;
            while (std::getline(hs, cell, ',')) {
                if (cell == "lambda") lam_col = col;
                if (cell == "error" || cell == "value") err_col = col;
                ++col;
            }
        }
        if (lam_col < 0 || err_col < 0)
            throw std::runtime_error("CSV needs 'lambda' and 'error' (or 'value') columns");
        analysis::ErrorSeries series;
        series.description = "refit " + cfg.in_path;
        series.total_degree = w.total_degree();
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::stringstream ls(line);
            std::string cell;
            double lam = 0, err = 0;
            for (int c = 0; std::getline(ls, cell, ','); ++c) {
                if (c == lam_col) lam = std::stod(cell);
                if (c == err_col) err = std::stod(cell);
            }
            series.entries.push_back({lam, err});
        }
        std::sort(series.entries.begin(), series.entries.end());
        return emit_exponent_run(cfg, series, w.total_degree(), w.n(), "fit");
    });
}

}  // namespace weyl::cli
