#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "cbohf/basis.hpp"
#include "cbohf/molecule.hpp"
#include "cbohf/parallel.hpp"

namespace cbohf {

struct IntegralSettings {
  Vec3 origin{0, 0, 0};             // multipole origin (bohr)
  bool origin_from_molecule = true; // use center of nuclear charge instead
  double schwarz_threshold = 1e-12;
  double prim_pair_threshold = 1e-18;
  double lindep_threshold = 1e-8;
  std::size_t eri_memory_cap_mb = 6144;
  Exec exec = Exec::Parallel;
};

struct EriQuartet {
  std::uint16_t a, b, c, d;  // canonical: a>=b, c>=d, pair(a,b) >= pair(c,d)
  double value;
};

// All molecular integrals over one geometry + basis. Built once, then
// immutable; safe to share across threads.
struct IntegralStore {
  Molecule molecule;
  std::vector<Shell> shells;
  std::vector<int> offsets;
  Vec3 origin{0, 0, 0};
  int dim = 0;

  Eigen::MatrixXd S, T, V;
  std::array<Eigen::MatrixXd, 3> dipole;  // <a|(r_p - O_p)|b>
  std::array<Eigen::MatrixXd, 6> second;  // (r_p-O_p)(r_q-O_q): xx,xy,xz,yy,yz,zz

  std::vector<EriQuartet> eri;   // screened symmetry-unique quartets
  Eigen::MatrixXd schwarz;       // shell-pair sqrt(max (ab|ab))
  double schwarz_threshold = 1e-12;

  double smallest_s_eigenvalue = 0.0;
  bool lindep_warning = false;

  const Eigen::MatrixXd& second_pq(int p, int q) const;
  // lambda-projected dipole and squared-dipole matrices used by the cavity terms
  Eigen::MatrixXd lambda_dipole(const Vec3& lam) const;
  Eigen::MatrixXd lambda_second(const Vec3& lam) const;

  Eigen::MatrixXd core_hamiltonian() const { return T + V; }
};

// One-electron part only (S, T, V, multipoles)
IntegralStore compute_one_electron(const Molecule& m, const BasisSet& bs,
                                   const IntegralSettings& settings = {});
// Adds the screened ERI list to an existing store
void compute_eri(IntegralStore& store, const IntegralSettings& settings = {});
// Both passes
IntegralStore compute_integrals(const Molecule& m, const BasisSet& bs,
                                const IntegralSettings& settings = {});

// Dense M^4 ERI tensor, chemist convention (ab|cd); small systems / tests.
std::vector<double> dense_eri(const IntegralStore& store);
inline std::size_t eri_index(std::size_t m, std::size_t a, std::size_t b,
                             std::size_t c, std::size_t d) {
  return ((a * m + b) * m + c) * m + d;
}

}  // namespace cbohf
