#include "cbohf/molecule.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cbohf/constants.hpp"
#include "cbohf/elements.hpp"

namespace cbohf {

Atom::Atom(int z_, const Vec3& r) : z(z_), position(r), mass_amu(element_mass_amu(z_)) {}

int Molecule::n_electrons() const {
  int zsum = 0;
  for (const auto& a : atoms) zsum += a.z;
  return zsum - charge;
}

double Molecule::nuclear_repulsion() const {
  double v = 0.0;
  for (size_t a = 0; a < atoms.size(); ++a)
    for (size_t b = a + 1; b < atoms.size(); ++b)
      v += atoms[a].z * atoms[b].z / (atoms[a].position - atoms[b].position).norm();
  return v;
}

Vec3 Molecule::nuclear_dipole() const {
  Vec3 mu = Vec3::Zero();
  for (const auto& a : atoms) mu += a.z * a.position;
  return mu;
}

void Molecule::validate() const {
  if (atoms.empty()) throw std::invalid_argument("molecule has no atoms");
  for (const auto& a : atoms) {
    if (a.z < 1) throw std::invalid_argument("nuclear charge must be >= 1");
    if (a.mass_amu <= 0) throw std::invalid_argument("atom mass must be positive");
  }
  if (n_electrons() % 2 != 0)
    throw std::invalid_argument("odd electron count; only closed-shell systems are supported");
  if (!monomers.empty()) {
    std::vector<bool> seen(atoms.size(), false);
    for (const auto& [first, last] : monomers) {
      if (first < 0 || last > n_atoms() || first >= last)
        throw std::invalid_argument("invalid monomer range");
      for (int i = first; i < last; ++i) {
        if (seen[i]) throw std::invalid_argument("overlapping monomer ranges");
        seen[i] = true;
      }
    }
    for (bool s : seen)
      if (!s) throw std::invalid_argument("monomer ranges do not cover all atoms");
  }
}

void CavityMode::validate() const {
  if (omega <= 0) throw std::invalid_argument("cavity frequency must be positive");
  if (lambda < 0) throw std::invalid_argument("coupling strength must be non-negative");
  if (std::abs(polarization.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("polarization must be a unit vector");
}

Molecule build_ensemble(const EnsembleSpec& spec) {
  if (spec.monomer.atoms.empty()) throw std::invalid_argument("ensemble monomer has no atoms");
  if (spec.n_mol < 1) throw std::invalid_argument("n_mol must be >= 1");
  if (spec.separation_angstrom <= 0) throw std::invalid_argument("separation must be positive");
  if (std::abs(spec.stacking_axis.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("stacking axis must be a unit vector");

  const double sep = spec.separation_angstrom * constants::bohr_per_angstrom;
  const Vec3 center = center_of_nuclear_charge(spec.monomer);
  const int na = spec.monomer.n_atoms();

  Molecule out;
  out.charge = spec.monomer.charge * spec.n_mol;
  out.atoms.reserve(static_cast<size_t>(na) * spec.n_mol);
  for (int k = 0; k < spec.n_mol; ++k) {
    const Vec3 shift = k * sep * spec.stacking_axis;
    const bool invert = (spec.orientation == Orientation::Antiparallel) && (k % 2 == 1);
    for (const auto& a : spec.monomer.atoms) {
      Atom copy = a;
      // point inversion through the replica's own charge center keeps the
      // internal geometry and flips the dipole
      Vec3 r = invert ? Vec3(2.0 * center - a.position) : a.position;
      copy.position = r + shift;
      out.atoms.push_back(copy);
    }
    out.monomers.emplace_back(k * na, (k + 1) * na);
  }
  out.validate();
  return out;
}

double rescale_coupling(double lambda0, int n_mol) {
  if (lambda0 < 0) throw std::invalid_argument("lambda0 must be non-negative");
  if (n_mol < 1) throw std::invalid_argument("n_mol must be >= 1");
  return lambda0 / std::sqrt(static_cast<double>(n_mol));
}

double mode_volume_nm3(double lambda) {
  if (lambda <= 0) throw std::invalid_argument("mode volume undefined for lambda <= 0");
  return 4.0 * constants::pi / (lambda * lambda) * constants::nm3_per_bohr3;
}

Vec3 center_of_nuclear_charge(const Molecule& m) {
  if (m.atoms.empty()) throw std::invalid_argument("empty molecule");
  Vec3 num = Vec3::Zero();
  double den = 0.0;
  for (const auto& a : m.atoms) {
    num += a.z * a.position;
    den += a.z;
  }
  return num / den;
}

Molecule parse_xyz(const std::string& text, int charge) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty xyz input");
  int n = 0;
  try {
    n = std::stoi(line);
  } catch (...) {
    throw std::runtime_error("xyz: first line must be the atom count");
  }
  std::getline(in, line);  // comment
  Molecule m;
  m.charge = charge;
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("xyz: unexpected end of file");
    std::istringstream ls(line);
    std::string sym;
    double x, y, z;
    if (!(ls >> sym >> x >> y >> z)) throw std::runtime_error("xyz: malformed atom line: " + line);
    m.atoms.emplace_back(element_number(sym),
                         Vec3(x, y, z) * constants::bohr_per_angstrom);
  }
  m.monomers.emplace_back(0, n);
  return m;
}

Molecule read_xyz(const std::string& path, int charge) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open xyz file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_xyz(ss.str(), charge);
}

std::string write_xyz(const Molecule& m, const std::string& comment) {
  std::ostringstream out;
  out << m.n_atoms() << "\n" << comment << "\n";
  out.setf(std::ios::fixed);
  out.precision(12);
  for (const auto& a : m.atoms) {
    const Vec3 r = a.position * constants::angstrom_per_bohr;
    out << element_symbol(a.z) << "  " << r.x() << "  " << r.y() << "  " << r.z() << "\n";
  }
  return out.str();
}

}  // namespace cbohf
