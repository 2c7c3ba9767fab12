#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "bergman/complexmp.hpp"

namespace bergman {

enum class Family { disk, ellipse, cassini, joukowsky };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Parametric description of one analytic Jordan curve from the four
/// supported families, together with its exterior map psi and cached
/// derived constants.
///
///   disk       center z0, radius s>0
///   ellipse    foci +-1, parametrized by S>1: semi-axes (S+1/S)/2, (S-1/S)/2
///   cassini    the oval of |z^2-1|=R around +1, 0<R<1
///   joukowsky  image of |w|=R (R>2) under w -> (w-1) + 1/(w-1)
class JordanDomain {
  public:
    /// Defaults to the unit disk; mostly useful as a placeholder before
    /// assignment (aggregates holding a domain).
    JordanDomain() : params_{{"x0", 0.0}, {"y0", 0.0}, {"s", 1.0}} {}

    static JordanDomain disk(double x0, double y0, double s);
    static JordanDomain ellipse(double S);
    static JordanDomain cassini(double R);
    static JordanDomain joukowsky(double R);

    Family family() const { return family_; }
    double param(const char* name) const;  // "R", "S", "s", "x0", "y0"
    const std::map<std::string, double>& params() const { return params_; }

    /// Rebuild a domain from its family tag and parameter map (wire formats).
    static JordanDomain from_params(Family f, const std::map<std::string, double>& p);

    /// Derived constants at the current working precision (computed once
    /// per precision and cached).
    struct Derived {
        // cassini
        Real a, b, c, sqrt_maR;
        // joukowsky
        Real mu_j;
        // all families
        Real rho, rho_a;
        Real capacity;  // psi'(inf) > 0
        Cx center;      // constant Laurent coefficient of psi at infinity
    };
    const Derived& derived() const;

  private:
    Family family_ = Family::disk;
    std::map<std::string, double> params_;
    struct Cache {
        std::mutex mu;
        std::map<int, Derived> by_bits;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Solves 27x^4 - 18x^2 - 4(R + 1/R)x - 1 = 0 for its unique root a in
/// (-1/3, 0) and returns (a, b, c) with b, c from the closed forms.
std::tuple<Real, Real, Real> cassini_params(const Real& R);

/// Exterior map psi (analytically continued inside |w|=1 where the family
/// allows it; cassini cut on [c, a], joukowsky pole at 1/R).
Cx psi_eval(const JordanDomain& d, const Cx& w);
Cx psi_prime(const JordanDomain& d, const Cx& w);

/// Inverse of the exterior map, continued to Omega_rho.
Cx phi_eval(const JordanDomain& d, const Cx& z);

/// Schwarz reflection z* = psi(1/conj(phi(z))) across L1.
Cx schwarz_reflect(const JordanDomain& d, const Cx& z);

/// True iff z lies strictly inside L1 (in G1).
bool contains(const JordanDomain& d, const Cx& z);

/// Closed polyline psi(r e^{i theta}) at n_points samples.
std::vector<Cx> level_curve(const JordanDomain& d, const Real& r, int n_points);

Real rho(const JordanDomain& d);     // radius of univalency
Real rho_a(const JordanDomain& d);   // radius of analyticity

}  // namespace bergman
