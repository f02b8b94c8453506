#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace cbohf {

using Vec3 = Eigen::Vector3d;

struct Atom {
  int z = 0;               // nuclear charge
  Vec3 position{0, 0, 0};  // bohr
  double mass_amu = 0.0;

  Atom() = default;
  Atom(int z_, const Vec3& r);  // mass from the element table
};

// Closed-shell molecule (or replicated ensemble). Positions in bohr.
// monomers holds [first, last) atom-index ranges, one per replica.
struct Molecule {
  std::vector<Atom> atoms;
  int charge = 0;
  std::vector<std::pair<int, int>> monomers;

  int n_atoms() const { return static_cast<int>(atoms.size()); }
  int n_electrons() const;
  double nuclear_repulsion() const;
  Vec3 nuclear_dipole() const;  // sum Z_A R_A
  void validate() const;        // N_el even, monomer ranges disjoint + covering
};

// Single lossless cavity mode. omega in hartree, lambda in a.u.,
// q is the (mass-weighted) photon displacement coordinate.
struct CavityMode {
  double omega = 0.0;
  double lambda = 0.0;
  Vec3 polarization{0, 0, 1};
  double q = 0.0;

  Vec3 lambda_vec() const { return lambda * polarization; }
  void validate() const;  // omega > 0, lambda >= 0, unit polarization
};

enum class Orientation { AllParallel, Antiparallel };

struct EnsembleSpec {
  Molecule monomer;
  int n_mol = 1;
  Orientation orientation = Orientation::AllParallel;
  double separation_angstrom = 800.0;
  Vec3 stacking_axis{1, 0, 0};
};

// Replicates the monomer n_mol times along the stacking axis; antiparallel
// inverts every odd replica through its own nuclear-charge center.
Molecule build_ensemble(const EnsembleSpec& spec);

// lambda_c = lambda0 / sqrt(N_mol)
double rescale_coupling(double lambda0, int n_mol);

// V_c = 4 pi / lambda^2, reported in nm^3
double mode_volume_nm3(double lambda);

Vec3 center_of_nuclear_charge(const Molecule& m);

// XYZ files: element  x y z in angstrom
Molecule read_xyz(const std::string& path, int charge = 0);
Molecule parse_xyz(const std::string& text, int charge = 0);
std::string write_xyz(const Molecule& m, const std::string& comment = "");

}  // namespace cbohf
