#pragma once

#include <functional>

namespace weyl {

// Composite 16-point Gauss-Legendre over [a, b] with n panels.
double gl_panels(const std::function<double(double)>& f, double a, double b, int panels);

// Refines the panel count (doubling from start_panels) until two successive
// composite rules agree within tol (absolute). Throws on non-convergence.
double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 int start_panels = 4, int max_panels = 1 << 20);

}  // namespace weyl
