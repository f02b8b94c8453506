#include "cbohf/basis.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cbohf/constants.hpp"
#include "cbohf/elements.hpp"

namespace cbohf {

namespace {

double double_factorial(int n) {
  double v = 1.0;
  for (int k = n; k > 1; k -= 2) v *= k;
  return v;
}

// number with possible Fortran D exponent
double parse_number(std::string tok) {
  for (auto& c : tok)
    if (c == 'D' || c == 'd') c = 'E';
  size_t pos = 0;
  double v;
  try {
    v = std::stod(tok, &pos);
  } catch (...) {
    throw std::runtime_error("basis: non-numeric value '" + tok + "'");
  }
  if (pos != tok.size()) throw std::runtime_error("basis: non-numeric value '" + tok + "'");
  return v;
}

int shell_letter(char c) {
  switch (std::toupper(c)) {
    case 'S': return 0;
    case 'P': return 1;
    case 'D': return 2;
    case 'F': return 3;
    default: return -1;
  }
}

}  // namespace

void Shell::normalize() {
  if (exponents.empty() || exponents.size() != coefficients.size())
    throw std::invalid_argument("shell: exponents/coefficients mismatch");
  for (double a : exponents)
    if (a <= 0) throw std::invalid_argument("shell: exponents must be positive");

  // fold the (l,0,0) primitive norms into the coefficients
  const double dfl = double_factorial(2 * l - 1);
  for (size_t i = 0; i < exponents.size(); ++i) {
    const double a = exponents[i];
    const double n = std::pow(2.0 * a / constants::pi, 0.75) *
                     std::pow(4.0 * a, 0.5 * l) / std::sqrt(dfl);
    coefficients[i] *= n;
  }
  // contracted self-overlap of the (l,0,0) component
  double s = 0.0;
  for (size_t i = 0; i < exponents.size(); ++i)
    for (size_t j = 0; j < exponents.size(); ++j) {
      const double p = exponents[i] + exponents[j];
      s += coefficients[i] * coefficients[j] * dfl / std::pow(2.0 * p, l) *
           std::pow(constants::pi / p, 1.5);
    }
  const double scale = 1.0 / std::sqrt(s);
  for (auto& c : coefficients) c *= scale;
}

std::vector<std::array<int, 3>> cartesian_components(int l) {
  std::vector<std::array<int, 3>> comps;
  for (int ix = l; ix >= 0; --ix)
    for (int iy = l - ix; iy >= 0; --iy) comps.push_back({ix, iy, l - ix - iy});
  return comps;
}

std::vector<Shell> BasisSet::shells_for(const Molecule& m) const {
  std::vector<Shell> out;
  for (int a = 0; a < m.n_atoms(); ++a) {
    auto it = shells_by_element.find(m.atoms[a].z);
    if (it == shells_by_element.end())
      throw std::runtime_error("basis '" + name + "' has no entry for element " +
                               element_symbol(m.atoms[a].z));
    for (Shell sh : it->second) {
      sh.atom = a;
      out.push_back(std::move(sh));
    }
  }
  return out;
}

int basis_dimension(const std::vector<Shell>& shells) {
  int n = 0;
  for (const auto& sh : shells) n += sh.n_cartesian();
  return n;
}

std::vector<int> shell_offsets(const std::vector<Shell>& shells) {
  std::vector<int> off(shells.size());
  int n = 0;
  for (size_t i = 0; i < shells.size(); ++i) {
    off[i] = n;
    n += shells[i].n_cartesian();
  }
  return off;
}

BasisSet parse_basis_g94(const std::string& text, const std::string& name) {
  BasisSet bs;
  bs.name = name;
  std::istringstream in(text);
  std::string line;
  int current_element = 0;
  int shells_in_block = 0;

  auto close_block = [&] {
    if (current_element != 0 && shells_in_block == 0)
      throw std::runtime_error("basis: empty element block for " +
                               element_symbol(current_element));
    current_element = 0;
    shells_in_block = 0;
  };

  while (std::getline(in, line)) {
    // strip comments and whitespace
    if (auto pos = line.find('!'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;

    if (tok == "****") {
      close_block();
      continue;
    }
    if (current_element == 0) {
      current_element = element_number(tok);  // throws on unknown symbol
      continue;
    }

    // shell header: letter  nprim  scale
    const int l = shell_letter(tok[0]);
    const bool is_sp = (tok.size() == 2 && std::toupper(tok[0]) == 'S' &&
                        std::toupper(tok[1]) == 'P');
    if (!is_sp && (tok.size() != 1 || l < 0))
      throw std::runtime_error("basis: unknown shell type '" + tok + "'");
    int nprim = 0;
    std::string nstr;
    if (!(ls >> nstr)) throw std::runtime_error("basis: missing primitive count");
    nprim = static_cast<int>(parse_number(nstr));
    if (nprim < 1) throw std::runtime_error("basis: bad primitive count");

    Shell sh, sh_p;
    sh.l = is_sp ? 0 : l;
    sh_p.l = 1;
    for (int i = 0; i < nprim; ++i) {
      if (!std::getline(in, line)) throw std::runtime_error("basis: truncated shell block");
      std::istringstream ps(line);
      std::string e, c1, c2;
      if (!(ps >> e >> c1)) throw std::runtime_error("basis: malformed primitive line");
      sh.exponents.push_back(parse_number(e));
      sh.coefficients.push_back(parse_number(c1));
      if (is_sp) {
        if (!(ps >> c2)) throw std::runtime_error("basis: SP line needs two coefficients");
        sh_p.exponents.push_back(parse_number(e));
        sh_p.coefficients.push_back(parse_number(c2));
      }
    }
    sh.normalize();
    bs.shells_by_element[current_element].push_back(std::move(sh));
    if (is_sp) {
      sh_p.normalize();
      bs.shells_by_element[current_element].push_back(std::move(sh_p));
    }
    ++shells_in_block;
  }
  close_block();
  if (bs.shells_by_element.empty()) throw std::runtime_error("basis: no element blocks found");
  return bs;
}

BasisSet load_basis_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open basis file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::string name = path;
  if (auto pos = name.find_last_of('/'); pos != std::string::npos) name.erase(0, pos + 1);
  if (auto pos = name.rfind(".g94"); pos != std::string::npos) name.erase(pos);
  return parse_basis_g94(ss.str(), name);
}

BasisSet resolve_basis(const std::string& name_or_path) {
  if (std::ifstream probe(name_or_path); probe) return load_basis_file(name_or_path);
  std::string lname = name_or_path;
  for (auto& c : lname) c = static_cast<char>(std::tolower(c));
  std::vector<std::string> dirs;
  if (const char* env = std::getenv("CBOHF_BASIS_PATH")) dirs.push_back(env);
#ifdef CBOHF_DATA_DIR
  dirs.push_back(std::string(CBOHF_DATA_DIR) + "/basis");
#endif
  dirs.push_back("data/basis");
  for (const auto& d : dirs) {
    const std::string candidate = d + "/" + lname + ".g94";
    if (std::ifstream probe(candidate); probe) return load_basis_file(candidate);
  }
  throw std::runtime_error("cannot resolve basis set '" + name_or_path + "'");
}

}  // namespace cbohf
