#include "weyl/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace weyl {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kNodes[8] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542,
};
constexpr double kWeights[8] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806,
};

}  // namespace

double gl_panels(const std::function<double(double)>& f, double a, double b, int panels) {
    double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        double mid = a + (p + 0.5) * h;
        double half = 0.5 * h;
        double s = 0.0;
        for (int i = 0; i < 8; ++i)
            s += kWeights[i] * (f(mid - half * kNodes[i]) + f(mid + half * kNodes[i]));
        total += s * half;
    }
    return total;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 int start_panels, int max_panels) {
    if (a == b) return 0.0;
    double prev = gl_panels(f, a, b, start_panels);
    for (int panels = start_panels * 2; panels <= max_panels; panels *= 2) {
        double cur = gl_panels(f, a, b, panels);
        if (std::abs(cur - prev) <= tol) return cur;
        prev = cur;
    }
    throw std::runtime_error("integrate: quadrature did not converge to requested tolerance");
}

}  // namespace weyl
