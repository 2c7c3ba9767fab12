#include "bergman/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/poly.hpp"

namespace bergman {

namespace {

// relative gap below which two solution moduli count as equal (Sigma_2)
Real tie_tol() { return pow2(-64); }

// the two in-disk solutions of the Cassini cubic (1-aw)w^2 = xi (w-a),
// sorted by increasing modulus; third root discarded
std::pair<Cx, Cx> cassini_pair(const JordanDomain& d, const Cx& xi) {
    const auto& dv = d.derived();
    Cx inv_a = inv(Cx(dv.a, Real(0)));
    auto roots = solve_cubic(-inv_a, xi * inv_a, -xi);
    std::sort(roots.begin(), roots.end(),
              [](const Cx& p, const Cx& q) { return abs(p) < abs(q); });
    // solver sanity on the two roots we keep
    for (int i = 0; i < 2; ++i) {
        Cx w = roots[i];
        Cx resid = (Cx(1.0, 0.0) - dv.a * w) * w * w - xi * (w - Cx(dv.a, Real(0)));
        if (abs(resid) > pow2(-precision_bits() / 4) * (1 + abs(xi)))
            throw RootFindError("cassini cubic root did not converge",
                                static_cast<double>(abs(resid)));
    }
    return {roots[0], roots[1]};
}

}  // namespace

Real mu(const JordanDomain& d) {
    switch (d.family()) {
        case Family::disk:
        case Family::cassini:
            return Real(0);
        case Family::ellipse:
            return rho(d);
        case Family::joukowsky: {
            Real R(d.param("R"));
            Real closed = d.derived().mu_j;
            // fixed-point cross-check: w <- 1/(R - w) from 0.9
            Real w(0.9), prev(0);
            for (int i = 0; i < 20000; ++i) {
                prev = w;
                w = 1 / (R - w);
                if (boost::multiprecision::abs(w - prev) < Real("1e-30")) break;
            }
            if (boost::multiprecision::abs(w - closed) > Real("1e-20"))
                throw CrossCheckError(
                    "mu: fixed-point iteration disagrees with closed form");
            return closed;
        }
    }
    throw Error("unreachable");
}

Cx h_phi_cassini(const JordanDomain& d, const Cx& w) {
    if (d.family() != Family::cassini)
        throw ConfigError("h_phi_cassini: cassini family only");
    Real a = d.derived().a;
    return (Cx(1.0, 0.0) - a * w) * w * w / (w - Cx(a, Real(0)));
}

Cx phi_int(const JordanDomain& d, const Cx& z) {
    switch (d.family()) {
        case Family::cassini:
            return (z * z - Cx(1.0, 0.0)) / Real(d.param("R"));
        case Family::disk:
            return (z - d.derived().center) / d.derived().capacity;
        default:
            throw ConfigError("phi_int: no elementary interior map for family " +
                              family_name(d.family()));
    }
}

RegionSample classify_cassini(const JordanDomain& d, const Cx& z) {
    if (!contains(d, z)) throw DomainError("classify: z not inside G1");
    RegionSample s;
    s.z = z;
    Cx xi = phi_int(d, z);
    auto [w_small, w_big] = cassini_pair(d, xi);
    Real m_small = abs(w_small), m_big = abs(w_big);
    if (m_big - m_small <= tie_tol() * m_big) {
        s.label = 2;
        s.r = m_big;
        s.solutions = {{w_big, 1}, {w_small, 1}};
    } else {
        s.label = 1;
        s.has_phi = true;
        s.phi_big = w_big;
        s.r = m_big;
        s.solutions = {{w_big, 1}};
    }
    return s;
}

RegionSample classify_joukowsky(const JordanDomain& d, const Cx& z) {
    if (!contains(d, z)) throw DomainError("classify: z not inside G1");
    RegionSample s;
    s.z = z;
    Real R(d.param("R"));
    Real mu_j = d.derived().mu_j;
    Cx sq = sqrt(z * z - Cx(4.0, 0.0));
    Cx v1 = (z + Cx(2.0, 0.0) + sq) / (2 * R);
    Cx v2 = (z + Cx(2.0, 0.0) - sq) / (2 * R);
    if (abs(v1) < abs(v2)) std::swap(v1, v2);
    Real m1 = abs(v1), m2 = abs(v2);
    if (m1 <= mu_j * (1 + tie_tol())) {
        s.label = 0;
        s.r = mu_j;
    } else if (m1 - m2 <= tie_tol() * m1) {
        s.label = 2;
        s.r = m1;
        s.solutions = {{v1, 1}, {v2, 1}};
    } else {
        s.label = 1;
        s.has_phi = true;
        s.phi_big = v1;
        s.r = m1;
        s.solutions = {{v1, 1}};
    }
    return s;
}

RegionSample classify(const JordanDomain& d, const Cx& z) {
    switch (d.family()) {
        case Family::cassini:
            return classify_cassini(d, z);
        case Family::joukowsky:
            return classify_joukowsky(d, z);
        case Family::disk: {
            if (!contains(d, z)) throw DomainError("classify: z not inside G1");
            const auto& dv = d.derived();
            RegionSample s;
            s.z = z;
            Cx w = (z - dv.center) / dv.capacity;
            if (abs(w) <= tie_tol()) {  // the center itself
                s.label = 0;
                s.r = 0;
            } else {
                s.label = 1;
                s.has_phi = true;
                s.phi_big = w;
                s.r = abs(w);
                s.solutions = {{w, 1}};
            }
            return s;
        }
        case Family::ellipse: {
            if (!contains(d, z)) throw DomainError("classify: z not inside G1");
            Real S(d.param("S"));
            RegionSample s;
            s.z = z;
            if (boost::multiprecision::abs(z.im) <= tie_tol() &&
                boost::multiprecision::abs(z.re) <= 1 + tie_tol()) {
                // the focal slit: conjugate pair on |w| = 1/S
                Cx zz(z.re, Real(0));
                Cx u = zz + sqrt(zz * zz - Cx(1.0, 0.0));
                Cx w1 = u / S;
                s.label = 2;
                s.r = 1 / S;
                s.solutions = {{w1, 1}, {conj(w1), 1}};
            } else {
                Cx w = phi_eval(d, z);
                s.label = 1;
                s.has_phi = true;
                s.phi_big = w;
                s.r = abs(w);
                s.solutions = {{w, 1}};
            }
            return s;
        }
    }
    throw Error("unreachable");
}

Cx phi_big_prime(const JordanDomain& d, const RegionSample& s) {
    if (s.label != 1)
        throw DomainError("phi_big_prime: sample is not in Sigma_1");
    switch (d.family()) {
        case Family::disk:
            return Cx(1 / d.derived().capacity, Real(0));
        case Family::ellipse:
        case Family::joukowsky:
            return inv(psi_prime(d, s.phi_big));
        case Family::cassini: {
            Real a = d.derived().a;
            Real R(d.param("R"));
            const Cx& w = s.phi_big;
            Cx wa = w - Cx(a, Real(0));
            Cx num = (Real(2) * w - Real(3) * a * w * w) * wa -
                     (w * w - a * w * w * w);
            Cx h_prime = num / (wa * wa);
            return (Real(2) * s.z / R) / h_prime;
        }
    }
    throw Error("unreachable");
}

std::vector<Cx> gamma_curve(const JordanDomain& d, int n_points) {
    if (d.family() != Family::cassini)
        throw ConfigError("gamma_curve: cassini family only");
    if (n_points < 4) throw ConfigError("gamma_curve: n_points must be >= 4");
    Real R(d.param("R"));
    int half = n_points / 2;
    std::vector<Cx> upper;
    upper.reserve(half + 1);
    for (int k = 0; k <= half; ++k) {
        Cx xi(-R * (half - k) / half, Real(0));
        auto [w_small, w_big] = cassini_pair(d, xi);
        Cx w = (w_small.im >= 0) ? w_small : w_big;
        if (w.im < 0) w = conj(w);  // endpoints: real double root
        // snap the rounding residue of real (double) roots onto the axis
        if (boost::multiprecision::abs(w.im) <
            pow2(-precision_bits() / 4) * (1 + abs(w)))
            w.im = 0;
        upper.push_back(w);
    }
    // close through the conjugate branch, omitting the shared endpoints
    std::vector<Cx> poly = upper;
    for (int k = half - 1; k >= 1; --k) poly.push_back(conj(upper[k]));
    return poly;
}

Real sigma_cdf(const JordanDomain& d, const Real& x) {
    if (d.family() != Family::cassini)
        throw ConfigError("sigma_cdf: cassini family only");
    Real R(d.param("R"));
    Real lo = sqrt(1 - R * R);
    Real guard = pow2(-40);
    if (x < lo - guard || x > 1 + guard)
        throw DomainError("sigma_cdf: x outside [sqrt(1-R^2), 1]");
    if (x >= 1) return Real(1) / 2;
    if (x <= lo) return Real(0);
    Cx xi((x * x - 1) / R, Real(0));
    auto [w_small, w_big] = cassini_pair(d, xi);
    Cx omega = (w_small.im > 0) ? w_small : w_big;
    if (omega.im < 0) omega = conj(omega);
    // theta_x = 2(pi - arg omega), measured through the ray of the merge
    // point at 1/b < 0; gives 0 at the left endpoint, 1/2 as x -> 1
    return 1 - boost::multiprecision::abs(arg(omega)) / pi();
}

namespace {

// marching squares at iso level on a masked scalar field (NaN = outside),
// chaining cell segments into polylines
std::vector<Polyline> extract_iso(const std::vector<double>& field, int nx,
                                  int ny, const BBox& bb, double iso) {
    auto fx = [&](int i) {
        return bb.x0 + (bb.x1 - bb.x0) * i / (nx - 1);
    };
    auto fy = [&](int j) {
        return bb.y0 + (bb.y1 - bb.y0) * j / (ny - 1);
    };
    using Pt = std::pair<double, double>;
    std::vector<std::pair<Pt, Pt>> segments;
    auto lerp = [&](double xa, double ya, double fa, double xb, double yb,
                    double fb) -> Pt {
        double t = (iso - fa) / (fb - fa);
        return {xa + t * (xb - xa), ya + t * (yb - ya)};
    };
    for (int j = 0; j + 1 < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i) {
            double f[4] = {field[j * nx + i], field[j * nx + i + 1],
                           field[(j + 1) * nx + i + 1], field[(j + 1) * nx + i]};
            double cx[4] = {fx(i), fx(i + 1), fx(i + 1), fx(i)};
            double cy[4] = {fy(j), fy(j), fy(j + 1), fy(j + 1)};
            bool bad = false;
            int mask = 0;
            for (int c = 0; c < 4; ++c) {
                if (std::isnan(f[c])) bad = true;
                if (f[c] > iso) mask |= 1 << c;
            }
            if (bad || mask == 0 || mask == 15) continue;
            std::vector<Pt> cuts;
            for (int c = 0; c < 4; ++c) {
                int nc = (c + 1) & 3;
                if ((f[c] > iso) != (f[nc] > iso))
                    cuts.push_back(
                        lerp(cx[c], cy[c], f[c], cx[nc], cy[nc], f[nc]));
            }
            if (cuts.size() == 2) segments.emplace_back(cuts[0], cuts[1]);
            else if (cuts.size() == 4) {  // saddle: pair consecutive cuts
                segments.emplace_back(cuts[0], cuts[1]);
                segments.emplace_back(cuts[2], cuts[3]);
            }
        }

    // chain by quantized endpoints
    double qx = (bb.x1 - bb.x0) * 1e-12, qy = (bb.y1 - bb.y0) * 1e-12;
    auto key = [&](const Pt& p) {
        return std::make_pair(std::llround(p.first / qx),
                              std::llround(p.second / qy));
    };
    std::multimap<std::pair<long long, long long>, size_t> at;
    for (size_t s = 0; s < segments.size(); ++s) {
        at.emplace(key(segments[s].first), s);
        at.emplace(key(segments[s].second), s);
    }
    std::vector<bool> used(segments.size(), false);
    std::vector<Polyline> out;
    for (size_t s0 = 0; s0 < segments.size(); ++s0) {
        if (used[s0]) continue;
        used[s0] = true;
        Polyline line = {segments[s0].first, segments[s0].second};
        for (int dir = 0; dir < 2; ++dir) {
            for (;;) {
                Pt tip = line.back();
                auto range = at.equal_range(key(tip));
                size_t next = segments.size();
                for (auto it = range.first; it != range.second; ++it)
                    if (!used[it->second]) next = it->second;
                if (next == segments.size()) break;
                used[next] = true;
                Pt a = segments[next].first, b = segments[next].second;
                line.push_back(key(a) == key(tip) ? b : a);
            }
            std::reverse(line.begin(), line.end());
        }
        out.push_back(std::move(line));
    }
    return out;
}

Polyline straight_segment(double xa, double xb, int n) {
    Polyline p;
    for (int i = 0; i < n; ++i)
        p.emplace_back(xa + (xb - xa) * i / (n - 1), 0.0);
    return p;
}

}  // namespace

RegionMap region_map(const JordanDomain& d, const BBox& bbox, int resolution) {
    if (resolution < 2) throw ConfigError("region_map: resolution must be >= 2");
    RegionMap m;
    m.domain = d;
    m.bbox = bbox;
    m.nx = m.ny = resolution;
    m.samples.resize(static_cast<size_t>(resolution) * resolution);
    // unclamped dominant-solution modulus, for the boundary iso line
    std::vector<double> dominant(m.samples.size(),
                                 std::numeric_limits<double>::quiet_NaN());
    for (int j = 0; j < resolution; ++j)
        for (int i = 0; i < resolution; ++i) {
            double x = bbox.x0 + (bbox.x1 - bbox.x0) * i / (resolution - 1);
            double y = bbox.y0 + (bbox.y1 - bbox.y0) * j / (resolution - 1);
            Cx z(x, y);
            size_t idx = static_cast<size_t>(j) * resolution + i;
            if (!contains(d, z)) {
                m.samples[idx].z = z;
                m.samples[idx].label = -1;
                continue;
            }
            m.samples[idx] = classify(d, z);
            if (d.family() == Family::joukowsky) {
                // recover the dominant preimage modulus even inside Sigma_0
                Cx sq = sqrt(z * z - Cx(4.0, 0.0));
                Real R(d.param("R"));
                Real m1 = (std::max)(abs((z + Cx(2.0, 0.0) + sq) / (2 * R)),
                                     abs((z + Cx(2.0, 0.0) - sq) / (2 * R)));
                dominant[idx] = static_cast<double>(m1);
            }
        }

    switch (d.family()) {
        case Family::disk: {
            const auto& dv = d.derived();
            m.boundary = {{{static_cast<double>(dv.center.re),
                            static_cast<double>(dv.center.im)}}};
            break;
        }
        case Family::ellipse:
            m.boundary = {straight_segment(-1.0, 1.0, resolution)};
            break;
        case Family::cassini: {
            double lo = static_cast<double>(
                sqrt(1 - Real(d.param("R")) * Real(d.param("R"))));
            m.boundary = {straight_segment(lo, 1.0, resolution)};
            break;
        }
        case Family::joukowsky: {
            double mu_val = static_cast<double>(d.derived().mu_j);
            m.boundary = extract_iso(dominant, resolution, resolution, bbox,
                                     mu_val);
            double lo = static_cast<double>(d.param("R") * d.param("R")) *
                            mu_val * mu_val - 2.0;
            m.boundary.push_back(straight_segment(lo, 2.0, resolution));
            break;
        }
    }
    return m;
}

std::string region_map_to_csv(const RegionMap& m) {
    std::ostringstream os;
    os << "re(z),im(z),label,re(Phi),im(Phi),r\n";
    for (const auto& s : m.samples) {
        if (s.label < 0) continue;
        os << to_string(s.z.re) << ',' << to_string(s.z.im) << ',' << s.label
           << ',';
        if (s.has_phi)
            os << to_string(s.phi_big.re) << ',' << to_string(s.phi_big.im);
        else
            os << "nan,nan";
        os << ',' << to_string(s.r) << '\n';
    }
    return os.str();
}

std::pair<std::vector<Cx>, std::vector<Cx>> pole_recursion(
    const JordanDomain& d, const Cx& z, int n_terms) {
    if (d.family() != Family::joukowsky)
        throw ConfigError("pole_recursion: joukowsky family only");
    if (n_terms < 1) throw ConfigError("pole_recursion: n_terms must be >= 1");
    if (classify_joukowsky(d, z).label != 0)
        throw DomainError("pole_recursion: z is not in Sigma_0");
    Real R(d.param("R"));
    Cx sq = sqrt(z * z - Cx(4.0, 0.0));
    auto run = [&](Cx w1) {
        std::vector<Cx> seq = {w1};
        while (static_cast<int>(seq.size()) < n_terms)
            seq.push_back(inv(Cx(R, Real(0)) - conj(seq.back())));
        return seq;
    };
    return {run((z + Cx(2.0, 0.0) + sq) / (2 * R)),
            run((z + Cx(2.0, 0.0) - sq) / (2 * R))};
}

}  // namespace bergman
