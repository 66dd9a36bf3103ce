#include "dephasim/numerics.hpp"

#include <numbers>
#include <stdexcept>

namespace dephasim::num {

namespace {

constexpr int kLanczosG = 7;
constexpr double kLanczosCoeffs[kLanczosG + 2] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_core(double z) {
  // valid for z >= 0.5
  z -= 1.0;
  double x = kLanczosCoeffs[0];
  for (int i = 1; i < kLanczosG + 2; ++i) {
    x += kLanczosCoeffs[i] / (z + i);
  }
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) *
         std::exp(-t) * x;
}

}  // namespace

double gamma_fn(double z) {
  if (!(z > 0.0)) {
    throw std::invalid_argument("gamma_fn: argument must be positive");
  }
  if (z < 0.5) {
    return lanczos_core(z + 1.0) / z;
  }
  return lanczos_core(z);
}

double gamma_shifted(double s) {
  if (!(s > 0.0) || s == 1.0) {
    throw std::invalid_argument("gamma_shifted: need s > 0, s != 1");
  }
  if (s > 1.0) {
    return gamma_fn(s - 1.0);
  }
  return gamma_fn(s + 1.0) / ((s - 1.0) * s);
}

double coth(double x) {
  if (x <= 0.0) {
    throw std::invalid_argument("coth: argument must be positive");
  }
  if (x > 20.0) {
    return 1.0;
  }
  if (x < 1e-6) {
    return 1.0 / x + x / 3.0;
  }
  return 1.0 / std::tanh(x);
}

double poisson_tail(int k, double lambda) {
  if (k <= 0) return 1.0;
  if (lambda <= 0.0) return 0.0;
  // first term exp(-lambda) lambda^k / k! in log space, then forward recurrence
  double log_term = -lambda + k * std::log(lambda) - std::lgamma(k + 1.0);
  double term = std::exp(log_term);
  double sum = 0.0;
  for (int j = k; j < k + 10000; ++j) {
    sum += term;
    term *= lambda / (j + 1);
    if (term < sum * 1e-18 + 1e-300) break;
  }
  return sum;
}

double int_pow(double x, int n) {
  if (n < 0) return 1.0 / int_pow(x, -n);
  double result = 1.0;
  double base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

}  // namespace dephasim::num
