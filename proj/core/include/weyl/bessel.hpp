#pragma once

namespace weyl {

// Bessel function of the first kind J_nu for nu = order_twice / 2, i.e.
// integer and half-integer orders. Half-integer orders use their closed
// forms; integer orders switch from the ascending series to the Hankel
// asymptotic expansion at a fixed crossover, where both branches are
// evaluated and must agree to 1e-8 (throws otherwise).
double bessel_j_half(int order_twice, double z);

// Both branches for integer order, exposed for cross-validation.
double bessel_j_series(int order, double z);
double bessel_j_asymptotic(int order, double z);

}  // namespace weyl
