#pragma once

#include <array>
#include <functional>
#include <vector>

#include "bergman/complexmp.hpp"

namespace bergman {

/// Coefficients in increasing degree order: p(z) = sum c[k] z^k.
using Poly = std::vector<Cx>;

Cx poly_eval(const Poly& p, const Cx& z);
/// Returns {p(z), p'(z)} in one Horner pass.
std::pair<Cx, Cx> poly_eval_d(const Poly& p, const Cx& z);
Poly poly_derivative(const Poly& p);
/// Antiderivative with zero constant term.
Poly poly_antiderivative(const Poly& p);
/// Coefficients t with p(z) = sum t[k] (z - c)^k (Taylor shift).
Poly poly_shift(const Poly& p, const Cx& c);
/// Synthetic division by (z - r); returns quotient, ignores the remainder.
Poly poly_deflate(const Poly& p, const Cx& r);
Real poly_coeff_norm(const Poly& p);  // max |c[k]|

/// Roots of the monic cubic w^3 + a2 w^2 + a1 w + a0 (Cardano closed form
/// followed by one Newton polish per root).
std::array<Cx, 3> solve_cubic(const Cx& a2, const Cx& a1, const Cx& a0);

/// Unique root of a continuous real function in a bracketing interval,
/// by bisection to full working precision.
Real bisect_root(const std::function<Real(const Real&)>& f, Real lo, Real hi);

/// Least-squares slope/intercept of y against x.
std::pair<double, double> linear_fit(const std::vector<double>& x,
                                     const std::vector<double>& y);

/// Tanh-sinh quadrature of f over (a, b); tolerates integrable endpoint
/// singularities.
Real tanh_sinh(const std::function<Real(const Real&)>& f, const Real& a,
               const Real& b, const Real& tol);

}  // namespace bergman
