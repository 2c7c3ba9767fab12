#include "bergman/curves.hpp"

#include <cmath>

#include "bergman/errors.hpp"
#include "bergman/poly.hpp"

namespace bergman {

std::string family_name(Family f) {
    switch (f) {
        case Family::disk: return "disk";
        case Family::ellipse: return "ellipse";
        case Family::cassini: return "cassini";
        case Family::joukowsky: return "joukowsky";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "disk") return Family::disk;
    if (name == "ellipse") return Family::ellipse;
    if (name == "cassini") return Family::cassini;
    if (name == "joukowsky") return Family::joukowsky;
    throw ConfigError("unknown family: " + name);
}

JordanDomain JordanDomain::disk(double x0, double y0, double s) {
    if (!(s > 0)) throw ConfigError("disk requires radius s > 0");
    JordanDomain d;
    d.family_ = Family::disk;
    d.params_ = {{"x0", x0}, {"y0", y0}, {"s", s}};
    return d;
}

JordanDomain JordanDomain::ellipse(double S) {
    if (!(S > 1)) throw ConfigError("ellipse requires S > 1");
    JordanDomain d;
    d.family_ = Family::ellipse;
    d.params_ = {{"S", S}};
    return d;
}

JordanDomain JordanDomain::cassini(double R) {
    if (!(R > 0 && R < 1)) throw ConfigError("cassini requires 0 < R < 1");
    JordanDomain d;
    d.family_ = Family::cassini;
    d.params_ = {{"R", R}};
    return d;
}

JordanDomain JordanDomain::joukowsky(double R) {
    if (!(R > 2)) throw ConfigError("joukowsky requires R > 2");
    JordanDomain d;
    d.family_ = Family::joukowsky;
    d.params_ = {{"R", R}};
    return d;
}

JordanDomain JordanDomain::from_params(Family f,
                                       const std::map<std::string, double>& p) {
    auto get = [&](const char* k) {
        auto it = p.find(k);
        if (it == p.end()) throw ConfigError(std::string("missing parameter ") + k);
        return it->second;
    };
    switch (f) {
        case Family::disk: return disk(get("x0"), get("y0"), get("s"));
        case Family::ellipse: return ellipse(get("S"));
        case Family::cassini: return cassini(get("R"));
        case Family::joukowsky: return joukowsky(get("R"));
    }
    throw ConfigError("bad family");
}

double JordanDomain::param(const char* name) const {
    auto it = params_.find(name);
    if (it == params_.end()) throw ConfigError(std::string("no parameter ") + name);
    return it->second;
}

std::tuple<Real, Real, Real> cassini_params(const Real& R) {
    if (!(R > 0 && R < 1)) throw ConfigError("cassini_params requires 0 < R < 1");
    Real s = 4 * (R + 1 / R);
    auto quartic = [&](const Real& x) {
        return ((27 * x * x - 18) * x - s) * x - 1;
    };
    Real a = bisect_root(quartic, Real(-1) / 3, -pow2(-60));
    for (int i = 0; i < 4; ++i) {  // Newton polish
        Real f = quartic(a);
        Real df = (108 * a * a - 36) * a - s;
        a -= f / df;
    }
    if (!(a > Real(-1) / 3 && a < 0))
        throw Error("cassini_params: no root bracketed in (-1/3, 0)");
    Real m = (3 * a * a + 1) / (2 * a);
    Real disc = sqrt(m * m - 4);
    Real b = (m - disc) / 2;
    Real c = (1 - 3 * a * a) / (2 * a) + disc;
    if (!(-1 < 1 / b && 1 / b < c && c < a))
        throw Error("cassini_params: ordering -1 < 1/b < c < a < 0 violated");
    return {a, b, c};
}

const JordanDomain::Derived& JordanDomain::derived() const {
    int bits = precision_bits();
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->by_bits.find(bits);
    if (it != cache_->by_bits.end()) return it->second;

    Derived d;
    d.a = d.b = d.c = d.sqrt_maR = d.mu_j = 0;
    switch (family_) {
        case Family::disk: {
            d.capacity = Real(param("s"));
            d.center = Cx(Real(param("x0")), Real(param("y0")));
            d.rho = 0;
            d.rho_a = 0;
            break;
        }
        case Family::ellipse: {
            Real S(param("S"));
            d.capacity = S / 2;
            d.center = Cx(0.0, 0.0);
            d.rho = 1 / S;
            d.rho_a = 0;
            break;
        }
        case Family::cassini: {
            Real R(param("R"));
            std::tie(d.a, d.b, d.c) = cassini_params(R);
            d.sqrt_maR = sqrt(-d.a * R);
            d.capacity = d.sqrt_maR;
            d.center = Cx(d.sqrt_maR * ((d.a - d.c) / 2 - d.b), Real(0));
            d.rho = -1 / d.b;   // = 1/|b|
            d.rho_a = -d.c;     // = |c|
            {
                // branch sanity: the factored form must give psi(1/a) = -1
                Real w = 1 / d.a;
                Cx v = d.sqrt_maR * Cx(w - d.b, Real(0)) *
                       sqrt(Cx((w - d.c) / (w - d.a), Real(0)));
                if (abs(v - Cx(-1.0, 0.0)) > pow2(-bits / 2))
                    throw Error("cassini branch normalization psi(1/a) = -1 failed");
            }
            break;
        }
        case Family::joukowsky: {
            Real R(param("R"));
            d.mu_j = (R - sqrt(R * R - 4)) / 2;
            d.capacity = R;
            d.center = Cx(-1.0, 0.0);
            d.rho = 2 / R;
            d.rho_a = 1 / R;
            break;
        }
    }
    auto [pos, _] = cache_->by_bits.emplace(bits, std::move(d));
    return pos->second;
}

namespace {

// Two solutions of the quadratic u^2 - z u + 1 = 0 (joukowsky / ellipse
// core); first entry has |u| >= 1.
std::pair<Cx, Cx> unit_product_roots(const Cx& z2half) {
    // roots of u^2 - 2*z2half*u + 1 = 0
    Cx s = sqrt(z2half * z2half - Cx(1.0, 0.0));
    Cx u1 = z2half + s, u2 = z2half - s;
    if (abs(u1) < abs(u2)) std::swap(u1, u2);
    return {u1, u2};
}

}  // namespace

Cx psi_eval(const JordanDomain& d, const Cx& w) {
    const auto& dv = d.derived();
    switch (d.family()) {
        case Family::disk:
            return dv.center + dv.capacity * w;
        case Family::ellipse: {
            Cx u = Real(d.param("S")) * w;
            if (abs(u) == 0) throw DomainError("ellipse psi: pole at w = 0");
            return (u + inv(u)) * Real(0.5);
        }
        case Family::cassini: {
            if (w.im == 0 && w.re >= dv.c && w.re <= dv.a)
                throw DomainError("cassini psi: w on the branch cut [c, a]");
            Cx ratio = (w - Cx(dv.c, Real(0))) / (w - Cx(dv.a, Real(0)));
            return dv.sqrt_maR * (w - Cx(dv.b, Real(0))) * sqrt(ratio);
        }
        case Family::joukowsky: {
            Cx u = Real(d.param("R")) * w - Cx(1.0, 0.0);
            if (abs(u) == 0) throw DomainError("joukowsky psi: pole at w = 1/R");
            return u + inv(u);
        }
    }
    throw Error("unreachable");
}

Cx psi_prime(const JordanDomain& d, const Cx& w) {
    const auto& dv = d.derived();
    switch (d.family()) {
        case Family::disk:
            return Cx(dv.capacity, Real(0));
        case Family::ellipse: {
            Real S(d.param("S"));
            Cx u = S * w;
            if (abs(u) == 0) throw DomainError("ellipse psi': pole at w = 0");
            return (Cx(S, Real(0)) - S * inv(u * u)) * Real(0.5);
        }
        case Family::cassini: {
            if (w.im == 0 && w.re >= dv.c && w.re <= dv.a)
                throw DomainError("cassini psi': w on the branch cut [c, a]");
            Cx wa = w - Cx(dv.a, Real(0));
            Cx s = sqrt((w - Cx(dv.c, Real(0))) / wa);
            Cx t = (w - Cx(dv.b, Real(0))) * Cx(dv.c - dv.a, Real(0)) /
                   (wa * wa * s * Real(2));
            return dv.sqrt_maR * (s + t);
        }
        case Family::joukowsky: {
            Real R(d.param("R"));
            Cx u = R * w - Cx(1.0, 0.0);
            if (abs(u) == 0) throw DomainError("joukowsky psi': pole at w = 1/R");
            return Cx(R, Real(0)) - R * inv(u * u);
        }
    }
    throw Error("unreachable");
}

Cx phi_eval(const JordanDomain& d, const Cx& z) {
    const auto& dv = d.derived();
    // |w| must clear rho by a guard band, so that rounding on the critical
    // circle itself (e.g. the ellipse slit) cannot slip through
    Real rho_guard = dv.rho * (1 + pow2(-precision_bits() / 2));
    switch (d.family()) {
        case Family::disk: {
            if (z == dv.center) throw DomainError("disk phi: z = z0");
            return (z - dv.center) / dv.capacity;
        }
        case Family::ellipse: {
            auto [u, _] = unit_product_roots(z);
            Cx w = u / Real(d.param("S"));
            if (!(abs(w) > rho_guard)) throw DomainError("ellipse phi: z not in Omega_rho");
            return w;
        }
        case Family::joukowsky: {
            auto [u, _] = unit_product_roots(z * Real(0.5));
            // u solves u^2 - z u + 1 = 0; w = (u+1)/R satisfies psi(w) = z
            // with |Rw - 1| = |u| >= 1.
            Cx w = (u + Cx(1.0, 0.0)) / Real(d.param("R"));
            if (!(abs(w) > rho_guard))
                throw DomainError("joukowsky phi: z not in Omega_rho");
            return w;
        }
        case Family::cassini: {
            Real R(d.param("R"));
            Cx xi = (z * z - Cx(1.0, 0.0)) / R;
            Cx inv_a = inv(Cx(dv.a, Real(0)));
            // (1-aw)w^2 = xi (w-a)  <=>  w^3 - w^2/a + (xi/a) w - xi = 0
            auto roots = solve_cubic(-inv_a, xi * inv_a, -xi);
            const Cx* best = nullptr;
            Real best_mod(-1);
            Real match_tol = pow2(-precision_bits() / 4) * (1 + abs(z));
            for (const auto& w : roots) {
                if (!(abs(w) > rho_guard)) continue;
                bool on_cut = (w.im == 0 && w.re >= dv.c && w.re <= dv.a);
                if (on_cut) continue;
                if (abs(psi_eval(d, w) - z) > match_tol) continue;
                Real m = abs(w);
                if (m > best_mod) {
                    best_mod = m;
                    best = &w;
                }
            }
            if (!best) throw DomainError("cassini phi: z not in Omega_rho");
            return *best;
        }
    }
    throw Error("unreachable");
}

Cx schwarz_reflect(const JordanDomain& d, const Cx& z) {
    const auto& dv = d.derived();
    Cx w = phi_eval(d, z);
    Real m = abs(w);
    if (dv.rho > 0 && !(m < 1 / dv.rho))
        throw DomainError("schwarz_reflect: z outside the band Omega_rho cap G_{1/rho}");
    return psi_eval(d, inv(conj(w)));
}

bool contains(const JordanDomain& d, const Cx& z) {
    const auto& dv = d.derived();
    switch (d.family()) {
        case Family::disk:
            return abs(z - dv.center) < dv.capacity;
        case Family::ellipse: {
            auto [u, _] = unit_product_roots(z);
            return abs(u) < Real(d.param("S"));
        }
        case Family::cassini:
            return abs(z * z - Cx(1.0, 0.0)) < Real(d.param("R")) && z.re > 0;
        case Family::joukowsky: {
            auto [u, _] = unit_product_roots(z * Real(0.5));
            return abs(u + Cx(1.0, 0.0)) < Real(d.param("R"));
        }
    }
    return false;
}

std::vector<Cx> level_curve(const JordanDomain& d, const Real& r, int n_points) {
    if (n_points < 3) throw ConfigError("level_curve: n_points must be >= 3");
    std::vector<Cx> pts;
    pts.reserve(n_points);
    Real two_pi = 2 * pi();
    for (int k = 0; k < n_points; ++k) {
        Real theta = two_pi * k / n_points;
        pts.push_back(psi_eval(d, polar(r, theta)));
    }
    return pts;
}

Real rho(const JordanDomain& d) { return d.derived().rho; }
Real rho_a(const JordanDomain& d) { return d.derived().rho_a; }

}  // namespace bergman
