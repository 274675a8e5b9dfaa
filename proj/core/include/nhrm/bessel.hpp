#pragma once

namespace nhrm {

// Modified Bessel function of the first kind, I_n(x).
// Power series for x < 10, Miller downward recurrence normalized by I_0
// otherwise. Relative error <= 1e-12 for x <= 50.
// Throws RangeError when n < 0, n > 200, x < 0 or x >= 700.
double bessel_i(int n, double x);

}  // namespace nhrm
