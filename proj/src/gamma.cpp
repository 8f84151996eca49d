// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hardy/numerics.hpp"

namespace hardy {

namespace {

// Lanczos coefficients for g = 607/128, n = 15 (Godfrey). Relative error of
// the sum is below 1e-15 for Re(z) >= 1/2.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczosCoefficients = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5,
};

double lanczos_gamma(double x) {
  // Gamma(x) = sqrt(2 pi) t^{z + 1/2} e^{-t} A(z), z = x - 1, t = z + g + 1/2.
  const double z = x - 1.0;
  double sum = kLanczosCoefficients[0];
  for (std::size_t k = 1; k < kLanczosCoefficients.size(); ++k) {
    sum += kLanczosCoefficients[k] / (z + static_cast<double>(k));
  }
  const double t = z + kLanczosG + 0.5;
  // Split the power so that t^{z+1/2} e^{-t} does not overflow before the
  // product does.
  const double half_power = std::pow(t, 0.5 * (z + 0.5));
  const double sqrt_two_pi = std::sqrt(2.0 * std::numbers::pi);
  return sqrt_two_pi * half_power * (half_power * std::exp(-t)) * sum;
}

}  // namespace

double gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("gamma: argument must be positive, got " + std::to_string(x));
  }
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  }
  return lanczos_gamma(x);
}

}  // namespace hardy
