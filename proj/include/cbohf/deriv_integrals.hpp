#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "cbohf/integrals.hpp"

namespace cbohf {

// d/dR_{atom,dir} of every one-electron matrix, dir = x,y,z. V carries both
// the basis-function and the operator-center (Hellmann-Feynman) pieces; the
// operator piece is also kept separately.
struct OneElectronDerivatives {
  std::array<Eigen::MatrixXd, 3> s, t, v, v_operator;
  std::array<std::array<Eigen::MatrixXd, 3>, 3> dipole;  // [dir][p]
  std::array<std::array<Eigen::MatrixXd, 6>, 3> second;  // [dir][pq component]
};

OneElectronDerivatives compute_one_electron_derivatives(const IntegralStore& ints,
                                                        int atom,
                                                        Exec exec = Exec::Parallel);

// Direct contraction of the derivative ERIs with the closed-shell
// two-particle density: returns natoms x 3 with
//   g(A,p) = sum_{abcd} [1/2 D_ab D_cd - 1/4 D_ad D_cb] d(ab|cd)/dR_{A,p}.
// Quartets are screened with the stored Schwarz bounds.
Eigen::MatrixXd eri_gradient_contraction(const IntegralStore& ints,
                                         const Eigen::MatrixXd& density,
                                         Exec exec = Exec::Parallel);

// Dense d(ab|cd)/dR_{atom,dir} tensor for small systems (test oracle support).
std::vector<double> dense_eri_derivative(const IntegralStore& ints, int atom, int dir);

}  // namespace cbohf
