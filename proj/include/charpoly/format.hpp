#pragma once
#include <string>
#include <vector>

#include "charpoly/scaled.hpp"

namespace charpoly {

// Complex literal grammar shared by every subcommand: "a+bi" / "a-bi",
// plain reals ("1.5"), pure imaginaries ("2i", "-i", "i").
cplx parse_complex(const std::string& s);
std::vector<cplx> parse_complex_list(const std::string& csv);

// Full-precision decimal (17 significant digits).
std::string format_double(double v);
std::string format_complex(cplx z);  // back to the a+bi grammar

}  // namespace charpoly
