#include "cbohf/boys.hpp"

#include <cmath>

#include "cbohf/constants.hpp"

namespace cbohf {

void boys(double t, int nmax, double* f) {
  const double expt = std::exp(-t);
  if (t <= 30.0) {
    // series for the highest order, then downward
    double term = 1.0 / (2.0 * nmax + 1.0);
    double sum = term;
    for (int i = 1; i < 400; ++i) {
      term *= 2.0 * t / (2.0 * nmax + 2.0 * i + 1.0);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    f[nmax] = expt * sum;
    for (int n = nmax; n > 0; --n) f[n - 1] = (2.0 * t * f[n] + expt) / (2.0 * n - 1.0);
  } else {
    f[0] = 0.5 * std::sqrt(constants::pi / t);
    for (int n = 0; n < nmax; ++n) f[n + 1] = ((2.0 * n + 1.0) * f[n] - expt) / (2.0 * t);
  }
}

}  // namespace cbohf
