#include "cbohf/elements.hpp"

#include <array>
#include <stdexcept>

namespace cbohf {

namespace {

constexpr int max_z = 18;

const std::array<const char*, max_z + 1> symbols = {
    "",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",
    "Ne", "Na", "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar"};

// Most abundant isotope, u (6 significant figures)
constexpr std::array<double, max_z + 1> masses = {
    0.0,     1.00783, 4.00260, 7.01600, 9.01218, 11.0093, 12.0000,
    14.0031, 15.9949, 18.9984, 19.9924, 22.9898, 23.9850, 26.9815,
    27.9769, 30.9738, 31.9721, 34.9689, 39.9624};

}  // namespace

int element_number(const std::string& symbol) {
  std::string s = symbol;
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(s[0]));
  for (size_t i = 1; i < s.size(); ++i) s[i] = static_cast<char>(std::tolower(s[i]));
  for (int z = 1; z <= max_z; ++z)
    if (s == symbols[z]) return z;
  throw std::invalid_argument("unknown element symbol: " + symbol);
}

const std::string& element_symbol(int z) {
  static const std::array<std::string, max_z + 1> strs = [] {
    std::array<std::string, max_z + 1> a;
    for (int i = 0; i <= max_z; ++i) a[i] = symbols[i];
    return a;
  }();
  if (z < 1 || z > max_z) throw std::invalid_argument("element z out of range");
  return strs[z];
}

double element_mass_amu(int z) {
  if (z < 1 || z > max_z) throw std::invalid_argument("element z out of range");
  return masses[z];
}

}  // namespace cbohf
