#include "weyl/fourier.hpp"

#include "weyl/bessel.hpp"
#include "weyl/quadrature.hpp"
#include "weyl/types.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>

namespace weyl::fourier {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

using cd = std::complex<double>;
}  // namespace

double ball_volume(int n) {
    if (n < 0) throw std::invalid_argument("ball_volume: n >= 0");
    return std::pow(kPi, 0.5 * n) / std::tgamma(1.0 + 0.5 * n);
}

double ball_chi_hat(int n, double xi_norm) {
    if (n < 1 || n > 4) throw std::invalid_argument("ball_chi_hat: n in [1,4]");
    double t = std::abs(xi_norm);
    if (t < 1e-10) return ball_volume(n);
    return std::pow(t, -0.5 * n) * bessel_j_half(n, kTwoPi * t);
}

double ball_chi_hat_quadrature(int n, double xi_norm) {
    if (n < 1 || n > 4) throw std::invalid_argument("ball_chi_hat_quadrature: n in [1,4]");
    double t = std::abs(xi_norm);
    double slice = ball_volume(n - 1);
    // One-dimensional slices: integral over [-1,1] of V_{n-1} (1-s^2)^((n-1)/2)
    // cos(2 pi t s) ds, with s = cos(theta) so the integrand is smooth.
    int panels = 8 + static_cast<int>(std::ceil(t));
    return integrate(
        [&](double th) {
            double sn = std::sin(th);
            return slice * std::pow(sn, n) * std::cos(kTwoPi * t * std::cos(th));
        },
        0.0, kPi, 1e-12, panels);
}

double decay_ratio_sup(int n, const std::vector<double>& radii) {
    double sup = 0.0;
    for (double t : radii) {
        if (t < 1.0) throw std::invalid_argument("decay_ratio_sup: radii >= 1");
        double r = std::abs(ball_chi_hat(n, t)) * std::pow(1.0 + t * t, 0.25 * (n + 1));
        sup = std::max(sup, r);
    }
    return sup;
}

double cutoff_beta(double t) {
    double a = std::abs(t);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    double s = a - 1.0;
    auto h = [](double x) { return std::exp(-1.0 / x); };
    return h(1.0 - s) / (h(1.0 - s) + h(s));
}

std::complex<double> axis_weight_hat(int degree, bool halfline, double xi, double tol) {
    double lo = halfline ? 0.0 : -2.0;
    int panels = 4 + static_cast<int>(std::ceil(2.0 * std::abs(xi)));
    auto part = [&](bool imag) {
        return integrate(
            [&](double x) {
                double v = cutoff_beta(x);
                for (int e = 0; e < degree; ++e) v *= x;
                double ph = kTwoPi * x * xi;
                return imag ? -v * std::sin(ph) : v * std::cos(ph);
            },
            lo, 2.0, tol, panels);
    };
    return {part(false), part(true)};
}

std::complex<double> f_tilde_hat(const lattice::WeightSpec& w, const CutoffSpec& cut,
                                 const std::vector<double>& xi) {
    if (static_cast<int>(xi.size()) != w.n())
        throw std::invalid_argument("f_tilde_hat: frequency dimension mismatch");
    cd prod = 1.0;
    for (int i = 0; i < w.n(); ++i)
        prod *= axis_weight_hat(w.d[i] - 1, i < w.k, xi[i], cut.quad_tol);
    return prod;
}

namespace {

// integral over [0,1] of s^p e^{-i omega s} ds.
cd radial_moment(int p, double omega) {
    cd a(0.0, -omega);
    if (std::abs(omega) <= 12.0) {
        cd term = 1.0, sum = 0.0;
        for (int j = 0;; ++j) {
            sum += term / static_cast<double>(p + j + 1);
            term *= a / static_cast<double>(j + 1);
            if (std::abs(term) < 1e-18 && j > 2) break;
            if (j > 200) throw std::runtime_error("radial_moment: series stall");
        }
        return sum;
    }
    double fact = 1.0;
    cd apow = a, sum = 0.0, last_pow = a;
    double sign = 1.0;
    for (int j = 0; j <= p; ++j) {
        sum += sign * fact / apow;
        last_pow = apow;  // a^{p+1} once the loop finishes
        fact *= p - j;    // p! / (p-j-1)! after this step
        apow *= a;
        sign = -sign;
    }
    double pfact = 1.0;
    for (int j = 2; j <= p; ++j) pfact *= j;
    return std::exp(a) * sum - (p % 2 ? -1.0 : 1.0) * pfact / last_pow;
}

}  // namespace

std::complex<double> ball_weight_hat(const lattice::WeightSpec& w, const std::vector<double>& xi) {
    int n = w.n();
    if (static_cast<int>(xi.size()) != n)
        throw std::invalid_argument("ball_weight_hat: frequency dimension mismatch");
    if (n == 1) {
        double lo = w.k == 1 ? 0.0 : -1.0;
        int panels = 4 + static_cast<int>(std::ceil(2.0 * std::abs(xi[0])));
        auto part = [&](bool imag) {
            return integrate(
                [&](double x) {
                    double v = 1.0;
                    for (int e = 1; e < w.d[0]; ++e) v *= x;
                    double ph = kTwoPi * x * xi[0];
                    return imag ? -v * std::sin(ph) : v * std::cos(ph);
                },
                lo, 1.0, 1e-11, panels);
        };
        return {part(false), part(true)};
    }
    if (n != 2) throw std::invalid_argument("ball_weight_hat: n <= 2 only");
    double lo = w.k == 2 ? 0.0 : -0.5 * kPi;
    double hi = 0.5 * kPi;
    if (w.k == 0) {
        lo = -kPi;
        hi = kPi;
    }
    int p = w.total_degree() - 1;
    double xnorm = std::hypot(xi[0], xi[1]);
    int panels = 8 + static_cast<int>(std::ceil(2.0 * xnorm));
    auto angular = [&](double th) {
        double c = std::cos(th), s = std::sin(th);
        double weight = 1.0;
        for (int e = 1; e < w.d[0]; ++e) weight *= c;
        for (int e = 1; e < w.d[1]; ++e) weight *= s;
        double omega = kTwoPi * (c * xi[0] + s * xi[1]);
        return weight * radial_moment(p, omega);
    };
    double re = gl_panels([&](double th) { return angular(th).real(); }, lo, hi, panels);
    double im = gl_panels([&](double th) { return angular(th).imag(); }, lo, hi, panels);
    return {re, im};
}

namespace {

double rho_kernel_integral(int n, double u) {
    int panels = 8 + static_cast<int>(std::ceil(u));
    switch (n) {
        case 1:
            return integrate(
                [&](double r) { return 2.0 * lattice::bump_density(1, r) * std::cos(kTwoPi * r * u); },
                0.0, 1.0, 1e-11, panels);
        case 2:
            return integrate(
                [&](double r) {
                    return kTwoPi * lattice::bump_density(2, r) * r *
                           bessel_j_half(0, kTwoPi * r * u);
                },
                0.0, 1.0, 1e-11, panels);
        case 3:
            return integrate(
                [&](double r) {
                    double x = kTwoPi * r * u;
                    double sinc = std::abs(x) < 1e-12 ? 1.0 : std::sin(x) / x;
                    return 4.0 * kPi * lattice::bump_density(3, r) * r * r * sinc;
                },
                0.0, 1.0, 1e-11, panels);
        default:
            throw std::invalid_argument("rho transform: n in [1,3]");
    }
}

}  // namespace

RhoHat::RhoHat(int n, double u_max, int nodes)
    : n_(n), u_max_(u_max), table_([&] {
          if (nodes < 16) throw std::invalid_argument("RhoHat: nodes >= 16");
          std::vector<double> us(nodes), vals(nodes);
          for (int j = 0; j < nodes; ++j) {
              us[j] = u_max * j / (nodes - 1.0);
              vals[j] = rho_kernel_integral(n, us[j]);
          }
          return MonotoneCubic(std::move(us), std::move(vals));
      }()) {}

double RhoHat::operator()(double u) const {
    double a = std::abs(u);
    if (a > u_max_) return rho_kernel_integral(n_, a);
    return table_(a);
}

double RhoHat::direct(int n, double u) { return rho_kernel_integral(n, std::abs(u)); }

namespace {

// Iterates one representative of every +-m pair of nonzero integer points in
// the cube sup|m_i| <= box (the lexicographically positive one).
void for_each_half_cube(int n, long long box,
                        const std::function<void(const long long*, long long)>& fn) {
    long long m[3] = {0, 0, 0};
    if (n == 1) {
        for (m[0] = 1; m[0] <= box; ++m[0]) fn(m, m[0] * m[0]);
        return;
    }
    if (n == 2) {
        for (m[0] = 0; m[0] <= box; ++m[0])
            for (m[1] = m[0] == 0 ? 1 : -box; m[1] <= box; ++m[1])
                fn(m, m[0] * m[0] + m[1] * m[1]);
        return;
    }
    if (n == 3) {
        for (m[0] = 0; m[0] <= box; ++m[0])
            for (m[1] = m[0] == 0 ? 0 : -box; m[1] <= box; ++m[1]) {
                bool zero2 = m[0] == 0 && m[1] == 0;
                for (m[2] = zero2 ? 1 : -box; m[2] <= box; ++m[2])
                    fn(m, m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
            }
        return;
    }
    throw std::invalid_argument("frequency sums: n in [1,3]");
}

struct TermMachine {
    const lattice::WeightSpec& w;
    double lambda, eps;
    const RhoHat& rho;
    double lam_pow;  // lambda^{|d|}
    std::vector<double> yd;
    bool weighted;

    TermMachine(const lattice::WeightSpec& w_, double lambda_, double eps_, const RhoHat& rho_)
        : w(w_), lambda(lambda_), eps(eps_), rho(rho_) {
        lam_pow = std::pow(lambda, w.total_degree());
        for (const auto& yi : w.y) yd.push_back(to_double(yi));
        weighted = w.k > 0;
    }

    // signed contribution of the +-m pair and its modulus sum
    void eval(const long long* m, long long norm2, double& signed_term, double& abs_term) const {
        double t = std::sqrt(static_cast<double>(norm2));
        double rh = rho(eps * t);
        cd g;
        if (!weighted) {
            g = ball_chi_hat(w.n(), lambda * t);
        } else {
            std::vector<double> xi(w.n());
            for (int i = 0; i < w.n(); ++i) xi[i] = lambda * m[i];
            g = ball_weight_hat(w, xi);
        }
        double phase = 0.0;
        for (int i = 0; i < w.n(); ++i) phase += yd[i] * m[i];
        phase *= kTwoPi;
        signed_term = 2.0 * (std::cos(phase) * g.real() - std::sin(phase) * g.imag()) * lam_pow * rh;
        abs_term = 2.0 * std::abs(g) * lam_pow * std::abs(rh);
    }
};

double rho_tail_constant(int n, double u_from) {
    double u_to = std::max(3.0 * u_from, 60.0);
    double c6 = 0.0;
    int samples = 160;
    for (int j = 0; j <= samples; ++j) {
        double u = u_from + (u_to - u_from) * j / samples;
        double v = std::abs(RhoHat::direct(n, u)) * std::pow(1.0 + u * u, 3.0);
        c6 = std::max(c6, v);
    }
    return c6;
}

}  // namespace

PoissonResult poisson_error_sum(const lattice::WeightSpec& w, double lambda,
                                const lattice::MollifierSpec& moll, const TruncationSpec& trunc) {
    int n = w.n();
    if (n > 3) throw std::invalid_argument("poisson_error_sum: n <= 3");
    if (w.k > 0 && n > 2)
        throw std::invalid_argument("poisson_error_sum: weighted case needs n <= 2");
    double eps = moll.epsilon;
    if (!(eps > 0) || !(lambda > 0)) throw std::invalid_argument("poisson_error_sum: bad inputs");
    long long box = static_cast<long long>(trunc.box_radius);
    if (box < 1) throw std::invalid_argument("poisson_error_sum: box radius >= 1");

    RhoHat rho(n, eps * std::sqrt(static_cast<double>(n)) * box + 1.0);
    TermMachine tm(w, lambda, eps, rho);

    NeumaierSum val, absval;
    long long terms = 0;
    for_each_half_cube(n, box, [&](const long long* m, long long norm2) {
        double s, a;
        tm.eval(m, norm2, s, a);
        val.add(s);
        absval.add(a);
        terms += 2;
    });

    // Tail certificate over sup|m| = r > box: per-shell point count times the
    // measured transform decay and the empirical rho^ envelope C6 <u>^-6.
    double chi_const;
    if (w.k == 0) {
        std::vector<double> radii;
        for (int j = 0; j <= 600; ++j) radii.push_back(std::pow(10.0, 2.5 * j / 600.0));
        chi_const = 1.1 * decay_ratio_sup(n, radii);
    } else {
        chi_const = lattice::main_term_constant(w);
    }
    double c6 = rho_tail_constant(n, eps * (box + 1));
    double tail = 0.0;
    for (long long r = box + 1;; ++r) {
        double cnt = std::pow(2.0 * r + 1, n) - std::pow(2.0 * r - 1, n);
        double chi = w.k == 0 ? chi_const * std::pow(1.0 + lambda * r * lambda * r,
                                                     -0.25 * (n + 1))
                              : chi_const;
        double term = cnt * tm.lam_pow * chi * c6 * std::pow(1.0 + eps * r * eps * r, -3.0);
        tail += term;
        if (term < 1e-12 * tail || r > box + 10000000) break;
    }
    if (!(tail <= trunc.tail_tolerance))
        throw std::runtime_error("poisson_error_sum: tail certificate " + std::to_string(tail) +
                                 " exceeds tolerance " + std::to_string(trunc.tail_tolerance));

    PoissonResult res;
    res.value = val.value();
    res.abs_sum = absval.value();
    res.tail_bound = tail;
    res.imag_residual = 0.0;  // +-m pairing keeps every term real
    res.terms = terms;
    return res;
}

DyadicCheck dyadic_sum_check(const lattice::WeightSpec& w, double lambda,
                             const lattice::MollifierSpec& moll, int levels) {
    int n = w.n();
    if (levels < 0) throw std::invalid_argument("dyadic_sum_check: levels >= 0");
    double eps = moll.epsilon;
    if (!(eps > 0) || !(lambda > 0)) throw std::invalid_argument("dyadic_sum_check: bad inputs");
    double outer = std::ldexp(1.0, levels) / eps;
    long long box = static_cast<long long>(outer);

    RhoHat rho(n, eps * std::sqrt(static_cast<double>(n)) * box + 1.0);
    TermMachine tm(w, lambda, eps, rho);

    DyadicCheck check;
    check.shells.resize(levels);
    for (int j = 0; j < levels; ++j) check.shells[j].level = j;
    std::vector<NeumaierSum> shell_abs(levels), shell_signed(levels);
    NeumaierSum center_abs, center_signed;

    for_each_half_cube(n, box, [&](const long long* m, long long norm2) {
        long long sup = 0;
        for (int i = 0; i < n; ++i) sup = std::max(sup, std::abs(m[i]));
        int level = -1;  // center cube
        double bound = 1.0 / eps;
        while (sup > bound) {
            ++level;
            bound *= 2.0;
        }
        if (level >= levels) return;  // beyond the last shell boundary
        double s, a;
        tm.eval(m, norm2, s, a);
        if (level < 0) {
            center_abs.add(a);
            center_signed.add(s);
            check.center_terms += 2;
        } else {
            shell_abs[level].add(a);
            shell_signed[level].add(s);
            check.shells[level].terms += 2;
        }
    });

    check.center_abs = center_abs.value();
    check.center_signed = center_signed.value();
    double total = check.center_signed;
    for (int j = 0; j < levels; ++j) {
        check.shells[j].abs_sum = shell_abs[j].value();
        check.shells[j].signed_sum = shell_signed[j].value();
        total += check.shells[j].signed_sum;
    }
    check.total_signed = total;
    return check;
}

}  // namespace weyl::fourier
