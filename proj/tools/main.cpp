#include "runner.hpp"

#include "weyl/config.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace {

struct Overrides {
    std::string config_path, out_dir, lambda_grid, epsilon, dims, shift, in_path;
    int workers = -1, windows = -1;
    long long seed = -1, cutoff_M = -1;
    double c = -1, tolerance = -1;
    int shifted_ball = -1;
};

void add_common(CLI::App* app, Overrides& ov) {
    app->add_option("--config", ov.config_path, "run description file");
    app->add_option("--out", ov.out_dir, "output directory");
    app->add_option("--workers", ov.workers, "worker threads")->check(CLI::Range(1, 1024));
    app->add_option("--seed", ov.seed, "seed recorded with the run");
    app->add_option("--lambda-grid", ov.lambda_grid, "geometric:a:b:count");
    app->add_option("--epsilon", ov.epsilon, "mollifier width: auto or a number");
    app->add_option("--c", ov.c, "annulus width parameter");
    app->add_option("--cutoff-M", ov.cutoff_M, "low-index cutoff");
    app->add_option("--tolerance", ov.tolerance, "slope/identity tolerance");
    app->add_option("--windows", ov.windows, "envelope window count");
    app->add_option("--dims", ov.dims, "weight multi-index, e.g. 2,1");
    app->add_option("--shift", ov.shift, "shift vector, e.g. 1/4,0");
    app->add_option("--in", ov.in_path, "input CSV (fit)");
    app->add_flag("--shifted-ball,!--no-shifted-ball", ov.shifted_ball,
                  "spectral ball condition vs plain center ball");
}

weyl::config::RunConfig assemble(const Overrides& ov) {
    weyl::config::RunConfig cfg;
    if (!ov.config_path.empty()) cfg = weyl::config::parse_config_file(ov.config_path);
    if (!ov.out_dir.empty()) cfg.out_dir = ov.out_dir;
    if (ov.workers > 0) cfg.workers = ov.workers;
    if (ov.seed >= 0) cfg.seed = static_cast<std::uint64_t>(ov.seed);
    if (!ov.lambda_grid.empty()) {
        cfg.lambda_grid = weyl::config::parse_lambda_grid(ov.lambda_grid);
        cfg.lambda_grid_text = ov.lambda_grid;
    }
    if (!ov.epsilon.empty()) {
        if (ov.epsilon == "auto") {
            cfg.epsilon_auto = true;
        } else {
            cfg.epsilon_auto = false;
            cfg.epsilon = std::stod(ov.epsilon);
            if (!(cfg.epsilon > 0)) throw std::invalid_argument("--epsilon must be positive");
        }
    }
    if (ov.c >= 0) cfg.c = ov.c;
    if (ov.cutoff_M >= 0) cfg.cutoff_M = ov.cutoff_M;
    if (ov.tolerance >= 0) cfg.tolerance = ov.tolerance;
    if (ov.windows >= 0) cfg.windows = ov.windows;
    if (ov.shifted_ball >= 0) cfg.shifted_ball = ov.shifted_ball != 0;
    if (!ov.in_path.empty()) cfg.in_path = ov.in_path;
    if (!ov.dims.empty()) {
        cfg.dims.clear();
        std::string item;
        std::stringstream ss(ov.dims);
        while (std::getline(ss, item, ',')) cfg.dims.push_back(std::stoi(item));
    }
    if (!ov.shift.empty()) {
        cfg.shifts.clear();
        std::string item;
        std::stringstream ss(ov.shift);
        while (std::getline(ss, item, ',')) cfg.shifts.push_back(weyl::parse_rational(item));
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral counting laboratory"};
    app.require_subcommand(1);

    struct Cmd {
        const char* name;
        const char* help;
        int (*fn)(const weyl::config::RunConfig&);
    };
    const Cmd cmds[] = {
        {"spectrum", "emit per-factor spectra and cluster tables", weyl::cli::run_spectrum},
        {"count", "exact eigenvalue counts with interior/boundary breakdown",
         weyl::cli::run_count},
        {"weyl", "error series against the main term, envelope slope and plot",
         weyl::cli::run_weyl},
        {"lattice", "weighted lattice count over a lambda grid", weyl::cli::run_lattice},
        {"annulus", "weighted annulus mass over a lambda grid", weyl::cli::run_annulus},
        {"mollify", "sandwich check of the mollified count", weyl::cli::run_mollify},
        {"fourier-check", "transform decay table and frequency-side identity check",
         weyl::cli::run_fourier_check},
        {"fit", "refit a recorded error CSV", weyl::cli::run_fit},
    };

    std::vector<Overrides> ovs(std::size(cmds));
    int picked = -1;
    for (std::size_t i = 0; i < std::size(cmds); ++i) {
        auto* sub = app.add_subcommand(cmds[i].name, cmds[i].help);
        add_common(sub, ovs[i]);
        sub->callback([&picked, i] { picked = static_cast<int>(i); });
    }

    CLI11_PARSE(app, argc, argv);
    if (picked < 0) {
        std::fprintf(stderr, "no subcommand selected\n");
        return 1;
    }
    try {
        auto cfg = assemble(ovs[static_cast<std::size_t>(picked)]);
        return cmds[static_cast<std::size_t>(picked)].fn(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "weyl %s: %s\n", cmds[static_cast<std::size_t>(picked)].name,
                     e.what());
        return 1;
    }
}
