#include "bergman/zeros.hpp"

#include <json.hpp>

#include <algorithm>
#include <random>
#include <sstream>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

// |p| evaluated coefficient-wise at |z|: running bound on the evaluation
// error scale, used for residual acceptance.
Real eval_bound(const Poly& p, const Cx& z) {
    Real az = abs(z), s(0), pw(1);
    for (const Cx& c : p) {
        s += abs(c) * pw;
        pw *= az;
    }
    return s;
}

// Coefficients s of S(y) = sum s_k y^k reinterpreted as the polynomial
// S(z - c), expanded back into plain monomials.
Poly unshift(const Poly& s, const Cx& c) { return poly_shift(s, -c); }

}  // namespace

std::vector<Cx> aberth_roots(const Poly& p_in, std::uint64_t seed) {
    Poly p = p_in;
    std::vector<Cx> roots;
    while (p.size() > 1 && p.front() == Cx(0.0, 0.0)) {
        roots.emplace_back(0.0, 0.0);
        p.erase(p.begin());
    }
    int deg = static_cast<int>(p.size()) - 1;
    if (deg <= 0) return roots;
    if (deg == 1) {
        roots.push_back(-p[0] / p[1]);
        return roots;
    }

    // initial guesses on a circle of the geometric-mean root radius,
    // jittered to break any symmetry of the configuration; the radius is
    // clamped by a Cauchy-type bound so a lone root near the origin cannot
    // collapse the whole starting circle
    Real r0 = exp(log(abs(p.front()) / abs(p.back())) / deg);
    Real rmax(0);
    for (int k = 0; k < deg; ++k) {
        Real c = abs(p[k]) / abs(p.back());
        if (c > 0) {
            Real bound = exp(log(c) / (deg - k));
            if (bound > rmax) rmax = bound;
        }
    }
    if (rmax > 0) {
        if (r0 < rmax / 4) r0 = rmax / 4;
        if (r0 > 2 * rmax) r0 = 2 * rmax;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);
    std::vector<Cx> z(deg);
    Real two_pi = 2 * pi();
    for (int k = 0; k < deg; ++k) {
        Real theta = two_pi * k / deg + Real(0.4) + Real(jitter(rng));
        z[k] = polar(r0 * (1 + Real(jitter(rng))), theta);
    }

    Real step_tol = pow2(-precision_bits() + 32);
    int max_iters = 400;
    for (int it = 0; it < max_iters; ++it) {
        // synchronous sweep: all corrections from the same iterate
        std::vector<Cx> next(deg);
        Real worst_step(0);
        for (int k = 0; k < deg; ++k) {
            auto [pv, dv] = poly_eval_d(p, z[k]);
            if (pv == Cx(0.0, 0.0)) {
                next[k] = z[k];
                continue;
            }
            Cx ratio = (dv == Cx(0.0, 0.0)) ? Cx(0.0, 0.0) : pv / dv;
            Cx repel(0.0, 0.0);
            for (int j = 0; j < deg; ++j)
                if (j != k) repel += inv(z[k] - z[j]);
            Cx denom = Cx(1.0, 0.0) - ratio * repel;
            Cx delta = (dv == Cx(0.0, 0.0) || denom == Cx(0.0, 0.0))
                           ? Cx(0.05, 0.03)  // nudge off a degenerate point
                           : ratio / denom;
            next[k] = z[k] - delta;
            Real st = abs(delta) / (1 + abs(z[k]));
            if (st > worst_step) worst_step = st;
        }
        z = next;
        if (worst_step < step_tol) break;
    }

    Real root_tol = pow2(-precision_bits() / 2);
    Real worst(0);
    for (const Cx& zk : z) {
        Real resid = abs(poly_eval(p, zk)) / (1 + eval_bound(p, zk));
        if (resid > worst) worst = resid;
    }
    if (worst > root_tol)
        throw RootFindError("aberth_roots: iteration did not converge",
                            static_cast<double>(worst));
    roots.insert(roots.end(), z.begin(), z.end());
    return roots;
}

std::vector<RootAtom> find_zeros(const OrthoBasis& b, int n,
                                 std::uint64_t seed) {
    if (n < 1 || n > b.n_max)
        throw ConfigError("find_zeros: n out of range");
    const Poly& p = b.coeffs[n];

    // families with a known repeated-root site get it stripped exactly
    bool have_site = false;
    Cx site;
    if (b.domain.family() == Family::disk) {
        have_site = true;
        site = Cx(b.domain.param("x0"), b.domain.param("y0"));
    } else if (b.domain.family() == Family::cassini) {
        have_site = true;
        site = Cx(1.0, 0.0);
    }

    Poly work = p;
    int site_mult = 0;
    if (have_site) {
        Poly t = poly_shift(p, site);
        Real scale = poly_coeff_norm(t);
        Real deriv_tol = pow2(-precision_bits() / 4);
        while (site_mult < n && abs(t[site_mult]) <= deriv_tol * scale)
            ++site_mult;
        if (site_mult > 0)
            work = unshift(Poly(t.begin() + site_mult, t.end()), site);
    }

    std::vector<Cx> raw = aberth_roots(work, seed);

    // greedy cluster merge
    Real ctol = pow2(-precision_bits() / 8);
    std::vector<RootAtom> atoms;
    for (const Cx& r : raw) {
        bool merged = false;
        for (RootAtom& a : atoms) {
            if (abs(r - a.z) < ctol * (1 + abs(r))) {
                // running centroid
                a.z = (a.z * Real(a.multiplicity) + r) /
                      Real(a.multiplicity + 1);
                ++a.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) atoms.push_back({r, 1});
    }
    if (site_mult > 0) atoms.push_back({site, site_mult});
    std::sort(atoms.begin(), atoms.end(),
              [](const RootAtom& x, const RootAtom& y) {
                  if (x.z.re != y.z.re) return x.z.re < y.z.re;
                  return x.z.im < y.z.im;
              });
    return atoms;
}

CassiniStructureReport verify_cassini_structure(const OrthoBasis& b, int n) {
    if (b.domain.family() != Family::cassini)
        throw ConfigError("verify_cassini_structure: cassini family only");
    if (n < 1 || n > b.n_max)
        throw ConfigError("verify_cassini_structure: n out of range");

    CassiniStructureReport rep;
    rep.n = n;
    rep.half = n / 2;

    Poly t = poly_shift(b.coeffs[n], Cx(1.0, 0.0));
    Real scale = poly_coeff_norm(t);
    rep.worst_derivative_resid = 0;
    for (int j = 0; j < rep.half; ++j) {
        Real r = abs(t[j]) / scale;
        if (r > rep.worst_derivative_resid) rep.worst_derivative_resid = r;
    }
    rep.derivative_conditions_ok = rep.worst_derivative_resid < Real("1e-20");

    Poly q = unshift(Poly(t.begin() + rep.half, t.end()), Cx(1.0, 0.0));
    std::vector<Cx> roots = aberth_roots(q);

    Real sep_tol = pow2(-precision_bits() / 8);
    rep.roots_real = true;
    for (const Cx& r : roots) {
        if (abs(r.im) > sep_tol * (1 + abs(r.re))) rep.roots_real = false;
        rep.q_roots.push_back(r.re);
    }
    std::sort(rep.q_roots.begin(), rep.q_roots.end());

    rep.roots_simple = true;
    for (size_t i = 0; i + 1 < rep.q_roots.size(); ++i)
        if (rep.q_roots[i + 1] - rep.q_roots[i] <= sep_tol)
            rep.roots_simple = false;

    Real R = Real(b.domain.param("R"));
    Real lo = sqrt((1 - R) * (1 + R));
    rep.roots_in_interval = !rep.q_roots.empty();
    for (const Real& x : rep.q_roots)
        if (!(x > lo && x < 1)) rep.roots_in_interval = false;

    // orthogonality of q_n against dlambda_n (m = 0 moment)
    int half = rep.half;
    auto weight = [&](const Real& x) {
        return pow(1 - x, half) * sqrt((x - lo) * (x + lo) / ((1 - x) * (1 + x)));
    };
    Real qtol = pow2(-precision_bits() / 2);
    Real num = tanh_sinh(
        [&](const Real& x) {
            return poly_eval(q, Cx(x, Real(0))).re * weight(x);
        },
        lo, Real(1), qtol);
    Real den = tanh_sinh(
        [&](const Real& x) {
            Real s(0), pw(1);
            for (const Cx& c : q) {
                s += abs(c) * pw;
                pw *= x;
            }
            return s * weight(x);
        },
        lo, Real(1), qtol);
    rep.lambda_moment = abs(num) / den;
    rep.lambda_moment_ok = rep.lambda_moment < pow2(-precision_bits() / 4);
    return rep;
}

EmpiricalMeasure counting_measure(const std::vector<RootAtom>& roots) {
    long n = 0;
    for (const RootAtom& r : roots) n += r.multiplicity;
    if (n < 1) throw ConfigError("counting_measure: empty root set");
    EmpiricalMeasure m;
    m.total = 0;
    for (const RootAtom& r : roots) {
        Real w = Real(r.multiplicity) / Real(n);
        m.atoms.emplace_back(r.z, w);
        m.total += w;
    }
    return m;
}

Real kolmogorov_vs_limit(const EmpiricalMeasure& m, const JordanDomain& d) {
    if (d.family() != Family::cassini)
        throw ConfigError("kolmogorov_vs_limit: cassini family only");
    Real R = Real(d.param("R"));
    Real lo = sqrt((1 - R) * (1 + R));
    Real atom_tol = Real("1e-10");
    std::vector<std::pair<Real, Real>> proj;  // (x, weight)
    for (const auto& [z, w] : m.atoms) {
        if (abs(z.im) > atom_tol || z.re < lo - atom_tol ||
            z.re > 1 + atom_tol)
            throw DomainError("kolmogorov_vs_limit: atom off the segment");
        proj.emplace_back(z.re, w);
    }
    std::sort(proj.begin(), proj.end());

    auto limit_cdf = [&](const Real& x, bool from_below) {
        Real v = sigma_cdf(d, std::min(std::max(x, lo), Real(1)));
        // the delta_1/2 jump counts only when x = 1 is actually reached
        if (from_below ? x > 1 : x >= 1) v += Real(0.5);
        return v / m.total;  // compare normalized shapes
    };
    // both CDFs are monotone and the empirical one is a step function, so
    // the sup is attained at atom positions (approached from either side)
    Real sup(0), acc(0);
    for (const auto& [x, w] : proj) {
        Real below = abs(acc / m.total - limit_cdf(x, true));
        acc += w;
        Real above = abs(acc / m.total - limit_cdf(x, false));
        if (below > sup) sup = below;
        if (above > sup) sup = above;
    }
    return sup;
}

AttractionReport zero_attraction_check(
    const RegionMap& map, const std::map<int, std::vector<RootAtom>>& roots_by_n,
    double probe_radius, double margin, int n_floor, int n_probes,
    const std::vector<Cx>& probe_points) {
    AttractionReport rep;
    const JordanDomain& d = map.domain;

    // probe points along the computed Sigma_1 boundary, kept strictly
    // inside G1
    std::vector<Cx> candidates;
    for (const Polyline& pl : map.boundary)
        for (const auto& [x, y] : pl) {
            Cx z(x, y);
            if (contains(d, z)) candidates.push_back(z);
        }
    std::vector<Cx> probes = probe_points;
    if (probes.empty() && !candidates.empty()) {
        int want = std::min<int>(n_probes, static_cast<int>(candidates.size()));
        for (int i = 0; i < want; ++i)
            probes.push_back(
                candidates[i * candidates.size() / want]);
    }
    rep.probes_total = static_cast<int>(probes.size());

    std::vector<Cx> all_roots;
    for (const auto& [n, roots] : roots_by_n)
        for (const RootAtom& r : roots) all_roots.push_back(r.z);
    for (const Cx& pz : probes) {
        Real best(-1);
        for (const Cx& r : all_roots) {
            Real dist = abs(r - pz);
            if (best < 0 || dist < best) best = dist;
        }
        if (best >= 0 && best <= probe_radius) ++rep.probes_hit;
        double bd = best < 0 ? 1e30 : static_cast<double>(best);
        if (bd > rep.worst_probe_distance) rep.worst_probe_distance = bd;
    }

    // distance reference for "deep inside": the Sigma_1 boundary pieces
    // plus the outer curve L1
    std::vector<Cx> fence = candidates;
    for (const Cx& z : level_curve(d, Real(1), 720)) fence.push_back(z);
    auto fence_dist = [&](const Cx& z) {
        Real best(-1);
        for (const Cx& f : fence) {
            Real dist = abs(z - f);
            if (best < 0 || dist < best) best = dist;
        }
        return best;
    };
    for (const auto& [n, roots] : roots_by_n) {
        if (n < n_floor) continue;
        for (const RootAtom& r : roots) {
            bool suspect =
                !contains(d, r.z) || classify(d, r.z).label == 1;
            if (suspect && fence_dist(r.z) >= margin) ++rep.sigma1_violations;
        }
    }
    return rep;
}

std::string roots_to_csv(int n, const std::vector<RootAtom>& roots) {
    std::ostringstream out;
    out << "n,re,im,multiplicity\n";
    for (const RootAtom& r : roots)
        out << n << "," << to_string(r.z.re) << "," << to_string(r.z.im)
            << "," << r.multiplicity << "\n";
    return out.str();
}

std::string cassini_report_to_json(const CassiniStructureReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["half"] = r.half;
    j["derivative_conditions_ok"] = r.derivative_conditions_ok;
    j["worst_derivative_resid"] =
        static_cast<double>(r.worst_derivative_resid);
    j["roots_real"] = r.roots_real;
    j["roots_simple"] = r.roots_simple;
    j["roots_in_interval"] = r.roots_in_interval;
    j["lambda_moment"] = static_cast<double>(r.lambda_moment);
    j["lambda_moment_ok"] = r.lambda_moment_ok;
    j["q_root_count"] = r.q_roots.size();
    j["ok"] = r.ok();
    return j.dump(2);
}

std::string attraction_report_to_json(const AttractionReport& r) {
    nlohmann::json j;
    j["probes_total"] = r.probes_total;
    j["probes_hit"] = r.probes_hit;
    j["worst_probe_distance"] = r.worst_probe_distance;
    j["sigma1_violations"] = r.sigma1_violations;
    j["ok"] = r.ok();
    return j.dump(2);
}

}  // namespace bergman
