#pragma once

#include <string>

namespace cbohf {

// Element lookup for H..Ar. Masses are most-abundant-isotope values in u,
// fixed to 6 significant figures; frequencies are regression-stable only if
// this table never changes.
int element_number(const std::string& symbol);
const std::string& element_symbol(int z);
double element_mass_amu(int z);

}  // namespace cbohf
