#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cbohf/molecule.hpp"

namespace cbohf {

// One contracted Cartesian Gaussian shell. Coefficients are stored against
// per-primitive normalized Gaussians and rescaled so the contracted (l,0,0)
// component has unit self-overlap; the component-dependent normalization
// factor is applied inside the integral engine.
struct Shell {
  int l = 0;
  int atom = -1;  // center index within the molecule (-1 in element templates)
  std::vector<double> exponents;
  std::vector<double> coefficients;

  int n_cartesian() const { return (l + 1) * (l + 2) / 2; }
  void normalize();  // primitive + contracted normalization
};

// Cartesian component exponents (ix,iy,iz) of a shell, canonical order
// (x-major descending: xx, xy, xz, yy, yz, zz for l=2).
std::vector<std::array<int, 3>> cartesian_components(int l);

struct BasisSet {
  std::string name;
  std::map<int, std::vector<Shell>> shells_by_element;

  // instantiate shells on every atom; throws if an element is missing
  std::vector<Shell> shells_for(const Molecule& m) const;
};

int basis_dimension(const std::vector<Shell>& shells);
std::vector<int> shell_offsets(const std::vector<Shell>& shells);

// Gaussian94 exchange format parser. SP shells are expanded into S and P.
BasisSet parse_basis_g94(const std::string& text, const std::string& name = "");
BasisSet load_basis_file(const std::string& path);

// Resolve a basis set by name or path: an existing file path wins, otherwise
// <name>.g94 is searched in CBOHF_BASIS_PATH and the bundled data directory.
BasisSet resolve_basis(const std::string& name_or_path);

}  // namespace cbohf
