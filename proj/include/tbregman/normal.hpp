#pragma once

namespace tbregman::normal {

double pdf(double x);
double cdf(double x);

// Standard normal quantile for u in (0, 1): Acklam's rational approximation
// followed by one Newton step against the erfc-based cdf. The upper half is
// evaluated through the symmetry Q(u) = -Q(1 - u), which is exact in floating
// point for u >= 1/2.
double quantile(double u);

}  // namespace tbregman::normal
