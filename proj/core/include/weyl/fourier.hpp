#pragma once

#include "weyl/interp.hpp"
#include "weyl/lattice.hpp"

#include <complex>
#include <vector>

namespace weyl::fourier {

// Transform convention throughout: g^(xi) = integral g(x) exp(-2 pi i <x, xi>) dx,
// so Poisson summation over Z^n needs no rescaling.

double ball_volume(int n);

// Transform of the unit-ball indicator at radial frequency |xi|:
// |xi|^(-n/2) J_{n/2}(2 pi |xi|), with the limit |B_n| at 0. n in [1, 4].
double ball_chi_hat(int n, double xi_norm);

// Same quantity by 1-dimensional slice quadrature; independent of the Bessel
// code, used for cross-validation.
double ball_chi_hat_quadrature(int n, double xi_norm);

// max over the sample radii of |chi_hat| <xi>^((n+1)/2).
double decay_ratio_sup(int n, const std::vector<double>& radii);

// Smooth even cutoff: 1 on [-1,1], 0 outside (-2,2).
double cutoff_beta(double t);

struct CutoffSpec {
    double quad_tol = 1e-9;
};

// Transform of x^degree beta(x) over the half line [0, inf) (halfline=true,
// used for weighted coordinates) or of beta(x) over R (degree 0 expected).
std::complex<double> axis_weight_hat(int degree, bool halfline, double xi, double tol);

// Transform of F~ = prod_i x_i^(d_i - 1) beta(x_i) (half-line factors for the
// first k coordinates): product of 1-dimensional transforms.
std::complex<double> f_tilde_hat(const lattice::WeightSpec& w, const CutoffSpec& cut,
                                 const std::vector<double>& xi);

// Transform of the weight over the unit ball, (chi_B F)^(xi); n <= 2.
// For k = 0 this reduces to ball_chi_hat of |xi|.
std::complex<double> ball_weight_hat(const lattice::WeightSpec& w, const std::vector<double>& xi);

// Radial transform of the unit bump in n dimensions; real and even, value 1
// at 0. direct() integrates per call; the table form interpolates for bulk use.
class RhoHat {
  public:
    RhoHat(int n, double u_max, int nodes = 8192);
    double operator()(double u) const;
    static double direct(int n, double u);

  private:
    int n_;
    double u_max_;
    MonotoneCubic table_;
};

struct TruncationSpec {
    double box_radius = 128;  // frequencies kept: 0 < sup_i |m_i| <= box_radius
    int dyadic_levels = 5;
    double tail_tolerance = 1e-6;
};

struct PoissonResult {
    double value = 0;      // truncated sum of e^{2 pi i <y,m>} (chi_{lam B} F)^(m) rho^(eps m)
    double abs_sum = 0;    // same sum with every term replaced by its modulus
    double tail_bound = 0; // certified bound on what the truncation dropped
    double imag_residual = 0;
    long long terms = 0;
};

// Frequency-side error sum for the mollified weighted count: the full sum
// plus the main term equals the mollifier-under-the-sum count exactly.
// Throws if the certified tail exceeds trunc.tail_tolerance.
PoissonResult poisson_error_sum(const lattice::WeightSpec& w, double lambda,
                                const lattice::MollifierSpec& moll, const TruncationSpec& trunc);

struct DyadicShell {
    int level = 0;
    double abs_sum = 0;
    double signed_sum = 0;
    long long terms = 0;
};

struct DyadicCheck {
    double center_abs = 0;  // frequencies with sup|m_i| <= 1/eps
    double center_signed = 0;
    long long center_terms = 0;
    std::vector<DyadicShell> shells;  // shell j: 2^j/eps < sup|m_i| <= 2^(j+1)/eps
    double total_signed = 0;
};

DyadicCheck dyadic_sum_check(const lattice::WeightSpec& w, double lambda,
                             const lattice::MollifierSpec& moll, int levels);

}  // namespace weyl::fourier
