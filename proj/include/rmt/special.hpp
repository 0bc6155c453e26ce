#pragma once

namespace rmt::special {

// Modified Bessel function of order zero; power series below the crossover,
// asymptotic expansion above.  Saturates to +inf past x ~ 713.
double bessel_i0(double x);

// exp(-|x|) * I0(x); stays finite for all x.
double bessel_i0_scaled(double x);

double erf(double x);
double erfc(double x);

// Gamma function via Lanczos approximation with reflection for x < 0.5.
double gamma_fn(double x);

}  // namespace rmt::special
