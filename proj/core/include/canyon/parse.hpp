#pragma once

#include "canyon/bipoly.hpp"

#include <string>

namespace canyon {

// Parses sums of terms such as "z^4 - 2*z^2*w^2 - w^100", "1/2*z^2 - 1/3*w^3"
// or "(3/5+4/5*i)*z*w". Products, integer powers and parentheses of whole
// sub-expressions are accepted as well ("(z-w^2)^3"); division is only
// allowed by nonzero constants. Throws ParseError with a byte position.
BiPoly parse_polynomial(const std::string& text);

}  // namespace canyon
