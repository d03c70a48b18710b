#pragma once

#include "canyon/bipoly.hpp"

#include <array>
#include <vector>

namespace canyon {

struct LeadingRoot {
  cplx z;  // H_m(z, 1) = 0, i.e. the direction [z : 1]
  int mult;
};

struct LeadingFormAnalysis {
  int m = 0;
  int r = 0;
  std::vector<LeadingRoot> roots;
  bool degenerate = false;
};

// Factorization of the lowest homogeneous form H_m over its roots in z.
LeadingFormAnalysis leading_form_analysis(const BiPoly& f);

bool is_mini_regular(const BiPoly& f);

using Unitary = std::array<GQ, 4>;  // row-major [[a,b],[c,d]]

struct MiniRegularization {
  BiPoly g;
  Unitary U;
  bool identity = true;
};

Unitary identity_unitary();
Unitary inverse(const Unitary& U);  // conjugate transpose
bool is_unitary(const Unitary& U);

// g = f ∘ U with H_m(g)(1,0) != 0; seeded deterministic search over exact
// unitaries with Gaussian-rational entries.
MiniRegularization mini_regularize(const BiPoly& f, unsigned long seed = 0);

}  // namespace canyon
