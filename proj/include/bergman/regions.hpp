#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bergman/curves.hpp"

namespace bergman {

/// Classification of one interior point z: the solutions of h_phi(w) =
/// phi(z) of largest modulus inside mu < |w| < 1, their total multiplicity
/// p (the Sigma_p label), the continued inverse map Phi (p = 1 only) and
/// the growth radius r(z).
struct RegionSample {
    Cx z;
    int label = 0;
    bool has_phi = false;
    Cx phi_big;                      // valid iff label == 1
    Real r;
    std::vector<std::pair<Cx, int>> solutions;  // (w, multiplicity)
};

struct BBox {
    double x0, x1, y0, y1;
};

using Polyline = std::vector<std::pair<double, double>>;

struct RegionMap {
    JordanDomain domain;
    BBox bbox;
    int nx = 0, ny = 0;
    /// Row-major over the full lattice; entries for points outside G1 have
    /// label -1 and are excluded from CSV output.
    std::vector<RegionSample> samples;
    std::vector<Polyline> boundary;  // partial Sigma_1 boundary inside G1
};

/// Inner radius of meromorphic continuation of phi o psi.
Real mu(const JordanDomain& d);

/// Closed form h_phi(w) = (1-aw)w^2/(w-a) of the Cassini family.
Cx h_phi_cassini(const JordanDomain& d, const Cx& w);

/// Interior map phi_int in the families where it is elementary:
/// cassini (z^2-1)/R, disk (z-z0)/s. Others throw.
Cx phi_int(const JordanDomain& d, const Cx& z);

RegionSample classify(const JordanDomain& d, const Cx& z);
RegionSample classify_cassini(const JordanDomain& d, const Cx& z);
RegionSample classify_joukowsky(const JordanDomain& d, const Cx& z);

/// Derivative of the continued inverse map on Sigma_1:
/// Phi' = phi_int' / h_phi'(Phi) (cassini), 1/psi'(Phi) (ellipse,
/// joukowsky), 1/s (disk).
Cx phi_big_prime(const JordanDomain& d, const RegionSample& s);

/// Gamma_R = {w in D_1 : -R <= h_phi(w) <= 0}, closed polyline through
/// 1/b and 0, symmetric about the real axis (cassini only).
std::vector<Cx> gamma_curve(const JordanDomain& d, int n_points);

/// sigma([sqrt(1-R^2), x]) of the Cassini limit measure, in [0, 1/2].
Real sigma_cdf(const JordanDomain& d, const Real& x);

RegionMap region_map(const JordanDomain& d, const BBox& bbox, int resolution);

std::string region_map_to_csv(const RegionMap& m);

/// Joukowsky pole recursion w_{n+1} = 1/(R - conj(w_n)) from the two
/// seeds (z+2 +- sqrt(z^2-4))/(2R); z must classify as Sigma_0.
std::pair<std::vector<Cx>, std::vector<Cx>> pole_recursion(
    const JordanDomain& d, const Cx& z, int n_terms);

}  // namespace bergman
