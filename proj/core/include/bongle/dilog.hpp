#pragma once

#include <complex>

namespace bongle {

/// Principal-branch complex dilogarithm Li2(z), branch cut along [1, inf).
///
/// Real arguments x > 1 on the cut are evaluated as the limit from below,
/// Li2(x - i0). Absolute accuracy is better than 1e-14 on |z| <= 10.
std::complex<double> dilog(std::complex<double> z);

/// Lobachevsky function L(theta) = -int_0^theta log|2 sin t| dt
///                               = Im Li2(e^{2 i theta}) / 2.
double lobachevsky(double theta);

}  // namespace bongle
