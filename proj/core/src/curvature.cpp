#include "canyon/curvature.hpp"

#include "canyon/errors.hpp"

#include <cmath>
#include <limits>

namespace canyon {

CurvatureEvaluator::CurvatureEvaluator(const BiPoly& f)
    : fz_(CPoly2::from(f.dz())),
      fw_(CPoly2::from(f.dw())),
      fzz_(CPoly2::from(f.dz().dz())),
      fzw_(CPoly2::from(f.dz().dw())),
      fww_(CPoly2::from(f.dw().dw())),
      default_tol_(1e-12 * (1.0 + f.coeff_magnitude())) {}

CurvatureValue CurvatureEvaluator::eval(cplx z, cplx w) const {
  cplx a = fz_.eval(z, w), b = fw_.eval(z, w);
  cplx azz = fzz_.eval(z, w), azw = fzw_.eval(z, w), aww = fww_.eval(z, w);
  CurvatureValue v;
  v.delta = 2.0 * a * b * azw - azz * b * b - aww * a * a;
  v.grad2 = std::norm(a) + std::norm(b);
  v.K = v.grad2 > 0 ? 2.0 * std::norm(v.delta) / (v.grad2 * v.grad2 * v.grad2)
                    : std::numeric_limits<double>::infinity();
  return v;
}

CurvatureValue gauss_curvature(const BiPoly& f, const ComplexPoint& p, double tol) {
  CurvatureEvaluator ev(f);
  if (tol < 0) tol = ev.default_tolerance();
  CurvatureValue v = ev.eval(p.z, p.w);
  if (!(std::sqrt(v.grad2) >= tol) || v.grad2 == 0)
    throw VanishingGradient("gradient vanishes at the evaluation point");
  return v;
}

}  // namespace canyon
