#pragma once

namespace cbohf {

// Physical constants and unit conversions. One definition each; every module
// converts through these so round trips are lossless.
namespace constants {

inline constexpr double angstrom_per_bohr = 0.529177210903;
inline constexpr double bohr_per_angstrom = 1.0 / angstrom_per_bohr;

// 1 hartree in cm^-1
inline constexpr double cm1_per_hartree = 219474.6313632;
inline constexpr double hartree_per_cm1 = 1.0 / cm1_per_hartree;

// 1 unified atomic mass unit in electron masses
inline constexpr double me_per_amu = 1822.888486209;

// bohr^3 -> nm^3
inline constexpr double nm3_per_bohr3 =
    (angstrom_per_bohr * 0.1) * (angstrom_per_bohr * 0.1) * (angstrom_per_bohr * 0.1);

inline constexpr double pi = 3.14159265358979323846;

}  // namespace constants

}  // namespace cbohf
