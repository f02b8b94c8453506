#pragma once

namespace cbohf {

// Boys function F_0..F_nmax at argument T, written into f[0..nmax].
// Series + downward recursion for T <= 30, asymptotic + upward above.
// Absolute accuracy ~1e-13 over the full range.
void boys(double t, int nmax, double* f);

}  // namespace cbohf
