#include "weyl/config.hpp"

#include "weyl/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace weyl {

Rational parse_rational(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw std::invalid_argument("parse_rational: empty value");
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    auto digits_ok = [](const std::string& t) {
        return !t.empty() && std::all_of(t.begin(), t.end(),
                                         [](unsigned char c) { return std::isdigit(c); });
    };
    Rational v;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!digits_ok(num) || !digits_ok(den))
            throw std::invalid_argument("parse_rational: bad fraction '" + text + "'");
        BigInt d(den);
        if (d == 0) throw std::invalid_argument("parse_rational: zero denominator");
        v = Rational(BigInt(num), d);
    } else if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (!digits_ok(ip) || (!fp.empty() && !digits_ok(fp)))
            throw std::invalid_argument("parse_rational: bad decimal '" + text + "'");
        BigInt scale = bigint_pow(BigInt(10), fp.size());
        v = Rational(BigInt(ip) * scale + (fp.empty() ? BigInt(0) : BigInt(fp)), scale);
    } else {
        if (!digits_ok(s)) throw std::invalid_argument("parse_rational: bad integer '" + text + "'");
        v = Rational(BigInt(s));
    }
    return neg ? -v : v;
}

}  // namespace weyl

namespace weyl::config {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::runtime_error("config line " + std::to_string(line) + ": " + msg);
}

double to_double(int line, const std::string& v) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters in number '" + v + "'");
        return x;
    } catch (const std::logic_error&) {
        fail(line, "expected a number, got '" + v + "'");
    }
}

long long to_ll(int line, const std::string& v) {
    try {
        std::size_t pos = 0;
        long long x = std::stoll(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters in integer '" + v + "'");
        return x;
    } catch (const std::logic_error&) {
        fail(line, "expected an integer, got '" + v + "'");
    }
}

bool to_bool(int line, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(line, "expected true/false, got '" + v + "'");
}

struct PendingFactor {
    int line = 0;  // section header line, for error messages
    std::vector<std::pair<int, std::pair<std::string, std::string>>> keys;
};

spectra::FactorSpec build_factor(const PendingFactor& pf) {
    std::string type;
    for (const auto& [line, kv] : pf.keys)
        if (kv.first == "type") type = kv.second;
    if (type.empty()) fail(pf.line, "[factor] section needs a 'type' key");

    spectra::FactorSpec f;
    if (type == "sphere")
        f = spectra::FactorSpec::sphere(2);
    else if (type == "circle")
        f = spectra::FactorSpec::circle();
    else if (type == "zoll")
        f = spectra::FactorSpec::zoll(2, Rational(0), 1.0, 0.25);
    else
        fail(pf.line, "unknown factor type '" + type + "'");

    bool zoll = type == "zoll";
    for (const auto& [line, kv] : pf.keys) {
        const auto& [key, value] = kv;
        if (key == "type") continue;
        if (key == "dim") {
            if (type == "circle") fail(line, "circle factors have no 'dim'");
            long long d = to_ll(line, value);
            if (d < 2 || d > 32) fail(line, "dim must be in [2, 32]");
            f.dim = static_cast<int>(d);
        } else if (key == "alpha" && zoll) {
            try {
                f.alpha = parse_rational(value);
            } catch (const std::invalid_argument& e) {
                fail(line, e.what());
            }
        } else if (key == "C" && zoll) {
            f.C = to_double(line, value);
            if (!(f.C > 0)) fail(line, "C must be positive");
        } else if (key == "c_width" && zoll) {
            f.c_width = to_double(line, value);
            if (!(f.c_width >= 0)) fail(line, "c_width must be >= 0");
        } else if (key == "correction" && zoll) {
            f.correction = to_double(line, value);
            if (!(f.correction >= 0)) fail(line, "correction must be >= 0");
        } else if (key == "placement" && zoll) {
            if (value == "at_center")
                f.placement = spectra::Placement::AtCenter;
            else if (value == "equispaced")
                f.placement = spectra::Placement::Equispaced;
            else if (value == "seeded_uniform")
                f.placement = spectra::Placement::SeededUniform;
            else
                fail(line, "unknown placement '" + value + "'");
        } else if (key == "seed" && zoll) {
            f.seed = static_cast<std::uint64_t>(to_ll(line, value));
        } else if (key == "low" && zoll) {
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) f.low_eigenvalues.push_back(to_double(line, trim(item)));
            std::sort(f.low_eigenvalues.begin(), f.low_eigenvalues.end());
        } else {
            fail(line, "unknown " + std::string(zoll ? "zoll" : type) + " factor key '" + key + "'");
        }
    }
    if (type == "sphere") f.alpha = Rational(2 * (f.dim - 1));  // dim may have changed
    return f;
}

}  // namespace

std::vector<double> parse_lambda_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4 || parts[0] != "geometric")
        throw std::runtime_error("lambda grid must look like geometric:a:b:count, got '" + text +
                                 "'");
    double a, b;
    long long count;
    try {
        std::size_t p1 = 0, p2 = 0, p3 = 0;
        a = std::stod(parts[1], &p1);
        b = std::stod(parts[2], &p2);
        count = std::stoll(parts[3], &p3);
        if (p1 != parts[1].size() || p2 != parts[2].size() || p3 != parts[3].size())
            throw std::invalid_argument("trailing characters");
    } catch (const std::logic_error&) {
        throw std::runtime_error("lambda grid has non-numeric pieces: '" + text + "'");
    }
    if (count < 2 || count > 1000000) throw std::runtime_error("lambda grid count out of range");
    return analysis::geometric_grid(a, b, static_cast<int>(count));
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    cfg.raw_text = text;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::string section;
    PendingFactor pending;
    bool have_pending = false;
    auto flush_factor = [&] {
        if (have_pending) cfg.factors.push_back(build_factor(pending));
        have_pending = false;
        pending = {};
    };
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, "unterminated section header");
            flush_factor();
            section = trim(line.substr(1, line.size() - 2));
            if (section == "factor") {
                have_pending = true;
                pending.line = lineno;
            } else if (section != "run") {
                fail(lineno, "unknown section [" + section + "]");
            }
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) fail(lineno, "empty key or value");
        if (section == "factor") {
            pending.keys.push_back({lineno, {key, value}});
        } else if (section == "run") {
            if (key == "lambda_grid") {
                try {
                    cfg.lambda_grid = parse_lambda_grid(value);
                } catch (const std::exception& e) {
                    fail(lineno, e.what());
                }
                cfg.lambda_grid_text = value;
            } else if (key == "epsilon") {
                if (value == "auto") {
                    cfg.epsilon_auto = true;
                } else {
                    cfg.epsilon_auto = false;
                    cfg.epsilon = to_double(lineno, value);
                    if (!(cfg.epsilon > 0)) fail(lineno, "epsilon must be positive");
                }
            } else if (key == "c") {
                cfg.c = to_double(lineno, value);
                if (!(cfg.c >= 0)) fail(lineno, "c must be >= 0");
            } else if (key == "cutoff_M") {
                cfg.cutoff_M = to_ll(lineno, value);
                if (cfg.cutoff_M < 0) fail(lineno, "cutoff_M must be >= 0");
            } else if (key == "workers") {
                long long wkr = to_ll(lineno, value);
                if (wkr < 1 || wkr > 1024) fail(lineno, "workers must be in [1, 1024]");
                cfg.workers = static_cast<int>(wkr);
            } else if (key == "seed") {
                cfg.seed = static_cast<std::uint64_t>(to_ll(lineno, value));
            } else if (key == "out") {
                cfg.out_dir = value;
            } else if (key == "tolerance") {
                cfg.tolerance = to_double(lineno, value);
                if (!(cfg.tolerance > 0)) fail(lineno, "tolerance must be positive");
            } else if (key == "windows") {
                long long wnd = to_ll(lineno, value);
                if (wnd < 0 || wnd > 10000) fail(lineno, "windows out of range");
                cfg.windows = static_cast<int>(wnd);
            } else if (key == "shifted_ball") {
                cfg.shifted_ball = to_bool(lineno, value);
            } else if (key == "in") {
                cfg.in_path = value;
            } else if (key == "dims") {
                std::stringstream ss(value);
                std::string item;
                cfg.dims.clear();
                while (std::getline(ss, item, ',')) {
                    long long d = to_ll(lineno, trim(item));
                    if (d < 1 || d > 64) fail(lineno, "dims entries must be in [1, 64]");
                    cfg.dims.push_back(static_cast<int>(d));
                }
                if (cfg.dims.empty()) fail(lineno, "dims must list at least one entry");
            } else if (key == "shift") {
                std::stringstream ss(value);
                std::string item;
                cfg.shifts.clear();
                while (std::getline(ss, item, ',')) {
                    try {
                        cfg.shifts.push_back(parse_rational(trim(item)));
                    } catch (const std::invalid_argument& e) {
                        fail(lineno, e.what());
                    }
                }
            } else {
                fail(lineno, "unknown [run] key '" + key + "'");
            }
        } else {
            fail(lineno, "key outside of any section");
        }
    }
    flush_factor();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace weyl::config
