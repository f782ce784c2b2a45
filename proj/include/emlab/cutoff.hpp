#pragma once

// C-infinity even cutoff: 1 on |t| <= 1, 0 on |t| >= 2, strictly monotone in
// between. Built from the exponential bump f(s) = exp(-1/s) (s > 0, else 0):
//   psi(t) = f(2 - |t|) / (f(2 - |t|) + f(|t| - 1)).
// This makes psi(1.5) = 0.5 by symmetry and psi' vanish to all orders at the
// plateau edges, so blended fields stay smooth across layer boundaries.

namespace emlab {

double cutoff_eval(double t);

// d psi / dt, from the closed form (zero outside 1 < |t| < 2).
double cutoff_derivative(double t);

}  // namespace emlab
