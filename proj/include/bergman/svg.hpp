#pragma once

#include <string>
#include <vector>

#include "bergman/regions.hpp"
#include "bergman/zeros.hpp"

namespace bergman {

/// Roots of p_n scattered over the outline of L1.
std::string svg_zero_scatter(const JordanDomain& d,
                             const std::vector<RootAtom>& roots, int n);

/// Label-colored lattice cells with the Sigma_1 boundary polyline on top.
std::string svg_region_map(const RegionMap& m);

/// The curve Gamma_R inside the unit circle (cassini only).
std::string svg_gamma_curve(const JordanDomain& d, int n_points);

}  // namespace bergman
