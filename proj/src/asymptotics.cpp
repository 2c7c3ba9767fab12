#include "bergman/asymptotics.hpp"

#include <json.hpp>

#include <cmath>

#include "bergman/errors.hpp"

namespace bergman {

Cx carleman_residual(const OrthoBasis& b, int n, const Cx& z) {
    if (n < 0 || n > b.n_max)
        throw ConfigError("carleman_residual: n out of range");
    Cx phi = phi_eval(b.domain, z);  // throws DomainError outside Omega_rho
    Cx phi_prime = inv(psi_prime(b.domain, phi));
    return eval_poly(b, n, z) / (sqrt(Real(n + 1)) * pow_i(phi, n)) - phi_prime;
}

Cx strong_residual(const OrthoBasis& b, const RegionSample& s, int n) {
    if (s.label != 1)
        throw DomainError("strong_residual: sample is not in Sigma_1");
    if (n < 0 || n > b.n_max)
        throw ConfigError("strong_residual: n out of range");
    Cx dphi = phi_big_prime(b.domain, s);
    return eval_poly(b, n, s.z) / (sqrt(Real(n + 1)) * pow_i(s.phi_big, n)) -
           dphi;
}

std::pair<Cx, Cx> integral_representation(const OrthoBasis& b, const Cx& z,
                                          int n, const PrecisionConfig& cfg) {
    const JordanDomain& d = b.domain;
    if (!contains(d, z))
        throw DomainError("integral_representation: z not inside G1");
    if (n < 0 || n > b.n_max)
        throw ConfigError("integral_representation: n out of range");
    Cx fz = phi_int(d, z);  // rejects families without an elementary map
    Cx fz_prime;
    switch (d.family()) {
        case Family::cassini:
            fz_prime = Real(2) * z / Real(d.param("R"));
            break;
        case Family::disk:
            fz_prime = Cx(1 / d.derived().capacity, Real(0));
            break;
        default:
            throw ConfigError("integral_representation: unsupported family");
    }

    Real tol = cfg.quad_tol();
    Real two_pi = 2 * pi();
    auto contour = [&](long nodes) {
        Cx s(0.0, 0.0);
        for (long m = 0; m < nodes; ++m) {
            Cx w = polar(Real(1), two_pi * m / nodes);
            // (2 pi i)^-1 \oint f dw = N^-1 sum f(w) w over uniform nodes
            s += pow_i(w, n + 1) / (phi_int(d, psi_eval(d, w)) - fz);
        }
        return s / Real(nodes);
    };
    long nodes = 64;
    Cx cur = contour(nodes);
    Real delta(-1);
    while (2 * nodes <= cfg.max_quad_nodes) {
        Cx next = contour(2 * nodes);
        delta = abs(next - cur) / (1 + abs(next));
        cur = next;
        nodes *= 2;
        if (delta <= tol) break;
    }
    if (delta < 0 || delta > tol)
        throw QuadratureError(
            "integral_representation: node budget exhausted",
            delta < 0 ? 1.0 : static_cast<double>(delta));

    Cx main = sqrt(Real(n + 1)) * fz_prime * cur;
    return {main, eval_poly(b, n, z) - main};
}

Real nth_root_growth(const OrthoBasis& b, const Cx& z, int n_lo, int n_hi) {
    if (n_lo < 1 || n_hi > b.n_max || n_lo > n_hi)
        throw ConfigError("nth_root_growth: bad n range");
    int start = n_lo + (n_hi - n_lo) / 2;
    Real best(0);
    for (int n = start; n <= n_hi; ++n) {
        Real v = abs(eval_poly(b, n, z));
        if (v > 0) {
            Real root = exp(log(v) / n);
            if (root > best) best = root;
        }
    }
    return best;
}

RateFit fit_decay_slope(const std::vector<int>& n_values,
                        const std::vector<Real>& residuals) {
    if (n_values.size() != residuals.size() || n_values.empty())
        throw ConfigError("fit_decay_slope: mismatched inputs");
    int n_min = n_values.front(), n_max = n_values.back();
    int start = n_min + (n_max - n_min) / 2;
    Real floor = pow2(-precision_bits() / 2);
    RateFit f;
    std::vector<double> xs, ys;
    for (size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < start) continue;
        if (!(residuals[i] > floor)) continue;  // below quadrature noise
        f.n_values.push_back(n_values[i]);
        f.residuals.push_back(static_cast<double>(residuals[i]));
        xs.push_back(n_values[i]);
        ys.push_back(static_cast<double>(log(residuals[i])));
    }
    if (xs.size() < 2)
        throw Error("fit_decay_slope: too few residuals above the noise floor");
    auto [slope, intercept] = linear_fit(xs, ys);
    f.slope = slope;
    f.intercept = intercept;
    return f;
}

std::string ratefit_to_json(const RateFit& f) {
    nlohmann::json j;
    j["slope"] = f.slope;
    j["intercept"] = f.intercept;
    j["n"] = f.n_values;
    return j.dump();
}

}  // namespace bergman
