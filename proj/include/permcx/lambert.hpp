#pragma once

namespace permcx {

/// Principal branch W(x) of y e^y = x, x >= -1/e. Arguments up to 1e-12 below
/// the branch point are treated as -1/e; anything lower throws kDomain.
double lambert_w(double x);

/// Generalized Lambert function: the y >= 0 solving y * exp^(n)(y) = x, where
/// exp^(n) is the n-fold composed exponential. Defined here for x >= 0 and
/// n >= 1; n == 1 is lambert_w.
double lambert_n(double x, int n);

/// n-fold composed exponential and logarithm. exp_iter throws kOverflow when an
/// intermediate exponent exceeds 700.
double exp_iter(double x, int n);
double log_iter(double x, int n);

}  // namespace permcx
