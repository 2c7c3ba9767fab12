#pragma once

#include <string>
#include <vector>

#include "bergman/gram.hpp"
#include "bergman/regions.hpp"

namespace bergman {

/// Log-linear decay fit of a residual sequence: log|resid| ~ slope*n + b.
struct RateFit {
    std::vector<int> n_values;       // the n actually used in the fit
    std::vector<double> residuals;   // |resid| at those n
    double slope = 0;
    double intercept = 0;
};

/// h_n(z) = p_n(z) / (sqrt(n+1) phi(z)^n) - phi'(z), for z in Omega_rho
/// (phi the exterior map's inverse, phi' = 1/psi'(phi)).
Cx carleman_residual(const OrthoBasis& b, int n, const Cx& z);

/// p_n(z) / (sqrt(n+1) Phi(z)^n) - Phi'(z) at a Sigma_1 sample.
Cx strong_residual(const OrthoBasis& b, const RegionSample& s, int n);

/// Contour-integral main term
///   sqrt(n+1) phi_int'(z) / (2 pi i) \oint_{|w|=1} w^n dw /
///       (phi_int(psi(w)) - phi_int(z))
/// and the remainder eps = p_n(z) - main. Families with an elementary
/// interior map only (disk, cassini).
std::pair<Cx, Cx> integral_representation(const OrthoBasis& b, const Cx& z,
                                          int n, const PrecisionConfig& cfg);

/// max_{n in the top half of [n_lo, n_hi]} |p_n(z)|^{1/n}.
Real nth_root_growth(const OrthoBasis& b, const Cx& z, int n_lo, int n_hi);

/// Least-squares decay slope of log|residual| against n, over the upper
/// half of the supplied range, discarding entries below the noise floor.
RateFit fit_decay_slope(const std::vector<int>& n_values,
                        const std::vector<Real>& residuals);

std::string ratefit_to_json(const RateFit& f);

}  // namespace bergman
