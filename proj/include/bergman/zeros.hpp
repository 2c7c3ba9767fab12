#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bergman/gram.hpp"
#include "bergman/regions.hpp"

namespace bergman {

struct RootAtom {
    Cx z;
    int multiplicity = 1;
};

/// All n roots of p_n (with multiplicity). A structural pre-pass strips a
/// known multiple-root site (disk center, Cassini z = 1) by the derivative
/// test before the simultaneous Aberth iteration handles the simple rest;
/// residual clusters within 2^-(bits/8) are merged.
std::vector<RootAtom> find_zeros(const OrthoBasis& b, int n,
                                 std::uint64_t seed = 0);

/// Simultaneous root iteration on an arbitrary polynomial (simple or
/// well-separated roots); returns unclustered root list.
std::vector<Cx> aberth_roots(const Poly& p, std::uint64_t seed = 0);

struct CassiniStructureReport {
    int n = 0;
    int half = 0;                     // floor(n/2), multiplicity at z = 1
    Real worst_derivative_resid;      // max relative |p^(j)(1)|, j < half
    bool derivative_conditions_ok = false;
    std::vector<Real> q_roots;        // sorted roots of the deflated q_n
    bool roots_real = false;
    bool roots_simple = false;
    bool roots_in_interval = false;   // (sqrt(1-R^2), 1)
    Real lambda_moment;               // \int q_n dlambda_n, relative
    bool lambda_moment_ok = false;
    bool ok() const {
        return derivative_conditions_ok && roots_real && roots_simple &&
               roots_in_interval && lambda_moment_ok;
    }
};

CassiniStructureReport verify_cassini_structure(const OrthoBasis& b, int n);

struct EmpiricalMeasure {
    std::vector<std::pair<Cx, Real>> atoms;  // (location, weight > 0)
    Real total;
};

EmpiricalMeasure counting_measure(const std::vector<RootAtom>& roots);

/// sup_x |CDF(projected measure) - (sigma_cdf(x) + 1/2 [x >= 1])| on the
/// Cassini segment; atoms must already sit on the segment.
Real kolmogorov_vs_limit(const EmpiricalMeasure& m, const JordanDomain& d);

struct AttractionReport {
    int probes_total = 0;
    int probes_hit = 0;
    double worst_probe_distance = 0;
    int sigma1_violations = 0;        // roots deep inside Sigma_1
    bool ok() const { return probes_hit == probes_total && sigma1_violations == 0; }
};

/// Zero-attraction check: (i) every probe on the Sigma_1 boundary inside
/// G1 attracts a root of some listed p_n within probe_radius; (ii) no root
/// with n >= n_floor lies in Sigma_1 at more than `margin` from that
/// boundary and from L1. Probes default to stride samples of the computed
/// boundary polylines; pass `probe_points` to pin them explicitly (they
/// must still lie on the boundary the map describes).
AttractionReport zero_attraction_check(
    const RegionMap& map, const std::map<int, std::vector<RootAtom>>& roots_by_n,
    double probe_radius = 0.05, double margin = 0.05, int n_floor = 40,
    int n_probes = 20, const std::vector<Cx>& probe_points = {});

std::string roots_to_csv(int n, const std::vector<RootAtom>& roots);

std::string cassini_report_to_json(const CassiniStructureReport& r);
std::string attraction_report_to_json(const AttractionReport& r);

}  // namespace bergman
