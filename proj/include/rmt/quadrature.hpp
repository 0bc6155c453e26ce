#pragma once

#include <functional>

namespace rmt {

// Adaptive Gauss-Kronrod (G7/K15) quadrature on a finite interval.
// Subdivides until the local error estimate is below the interval's share
// of abs_tol, or below rel_tol * |estimate|.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-9, double rel_tol = 1e-10);

// Integral over [a, inf) of an exponentially decaying integrand, via the
// substitution x = a + atanh(u) on u in [0,1).
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double abs_tol = 1e-9);

}  // namespace rmt
