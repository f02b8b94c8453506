#pragma once

#include <string>

#include "cbohf/basis.hpp"
#include "cbohf/molecule.hpp"

namespace testutil {

inline std::string data_path(const std::string& rel) {
  return std::string(CBOHF_SOURCE_DIR) + "/data/" + rel;
}

inline cbohf::BasisSet basis(const std::string& name) {
  return cbohf::load_basis_file(data_path("basis/" + name + ".g94"));
}

// H2 along z at the Szabo-Ostlund bond length
inline cbohf::Molecule h2(double r = 1.4) {
  cbohf::Molecule m;
  m.atoms.emplace_back(1, cbohf::Vec3(0, 0, 0));
  m.atoms.emplace_back(1, cbohf::Vec3(0, 0, r));
  m.monomers.emplace_back(0, 2);
  return m;
}

// hydrogen fluoride along z, bond length in bohr
inline cbohf::Molecule hf_molecule(double r = 1.7328) {
  cbohf::Molecule m;
  m.atoms.emplace_back(9, cbohf::Vec3(0, 0, 0));
  m.atoms.emplace_back(1, cbohf::Vec3(0, 0, r));
  m.monomers.emplace_back(0, 2);
  return m;
}

}  // namespace testutil
