#pragma once

#include "canyon/bipoly.hpp"

namespace canyon {

struct ComplexPoint {
  cplx z;
  cplx w;
};

struct CurvatureValue {
  double K = 0;   // 2|Δ|² / (|f_z|²+|f_w|²)³
  cplx delta;     // 2 f_z f_w f_zw − f_zz f_w² − f_ww f_z²
  double grad2 = 0;  // |f_z|²+|f_w|²
};

// Holds numeric derivative tables of f so repeated evaluation is cheap.
class CurvatureEvaluator {
public:
  explicit CurvatureEvaluator(const BiPoly& f);

  // Evaluates without a vanishing-gradient guard (returns K = inf on an
  // exactly critical point).
  CurvatureValue eval(cplx z, cplx w) const;
  // Default tolerance: 1e-12 * (1 + sum |coefficients|) on |grad f|.
  double default_tolerance() const { return default_tol_; }

private:
  CPoly2 fz_, fw_, fzz_, fzw_, fww_;
  double default_tol_;
};

// Throws VanishingGradient when |grad f(p)| < tol; tol < 0 selects the default.
CurvatureValue gauss_curvature(const BiPoly& f, const ComplexPoint& p, double tol = -1);

}  // namespace canyon
