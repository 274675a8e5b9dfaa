#include "nhrm/bessel.hpp"

#include <cmath>
#include <string>

#include "nhrm/errors.hpp"

namespace nhrm {
namespace {

constexpr int kMaxOrder = 200;
constexpr double kMaxArgument = 700.0;
constexpr double kSeriesCutoff = 10.0;

// I_n(x) = (x/2)^n / n! * sum_k (x^2/4)^k / (k! (n+k)!).
// All terms positive, so the sum is stable for any x; the prefactor is
// evaluated through lgamma to avoid overflow of n! for large n.
double series_i(int n, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 1000; ++k) {
    term *= q / (static_cast<double>(k) * (n + k));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  double prefactor;
  if (n == 0) {
    prefactor = 1.0;
  } else {
    prefactor = std::exp(n * std::log(0.5 * x) - std::lgamma(n + 1.0));
  }
  return prefactor * sum;
}

double miller_i(int n, double x) {
  const int top = std::max(n, static_cast<int>(x)) + 40 +
                  static_cast<int>(2.0 * std::sqrt(std::max(n, static_cast<int>(x))));
  double ip1 = 0.0;
  double ic = 1e-30;
  double target = 0.0;
  for (int k = top; k > 0; --k) {
    double im1 = ip1 + (2.0 * k / x) * ic;
    ip1 = ic;
    ic = im1;
    if (k - 1 == n) target = ic;
    if (std::abs(ic) > 1e250) {
      ic *= 1e-200;
      ip1 *= 1e-200;
      target *= 1e-200;
    }
  }
  // ic now holds the unnormalized I_0.
  return target * (series_i(0, x) / ic);
}

}  // namespace

double bessel_i(int n, double x) {
  if (n < 0 || n > kMaxOrder) {
    throw RangeError("bessel_i: order out of range [0, 200]: " + std::to_string(n));
  }
  if (x < 0.0 || x >= kMaxArgument) {
    throw RangeError("bessel_i: argument out of range [0, 700): " + std::to_string(x));
  }
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  const double value = (x < kSeriesCutoff) ? series_i(n, x) : miller_i(n, x);
  if (!std::isfinite(value)) {
    throw RangeError("bessel_i: non-finite result at n=" + std::to_string(n) +
                     ", x=" + std::to_string(x));
  }
  return value;
}

}  // namespace nhrm
