#pragma once

#include <string>
#include <vector>

#include "bergman/curves.hpp"
#include "bergman/poly.hpp"

namespace bergman {

/// Hermitian matrix of normalized area moments
///   m_{jk} = pi^-1 \int_{G1} (z-z_c)^j conj(z-z_c)^k dA,
/// in monomials centered at z_c (the constant Laurent coefficient of psi),
/// computed by the boundary reduction
///   pi^-1 \int z^j conj(z)^k dA = (2 pi i (k+1))^-1 \oint z^j conj(z)^{k+1} dz.
struct MomentMatrix {
    int n_max = 0;
    long quad_nodes = 0;
    Cx center;
    std::vector<std::vector<Cx>> entries;  // (n_max+1)^2, Hermitian
};

/// The first n_max+1 orthonormal polynomials, as exact-degree coefficient
/// vectors in the raw z monomial basis, positive leading coefficients.
struct OrthoBasis {
    JordanDomain domain;
    int n_max = 0;
    int precision_bits = 0;
    long quad_nodes = 0;           // node count behind the inner products
    std::vector<Poly> coeffs;      // coeffs[n] has size n+1
};

MomentMatrix compute_moments(const JordanDomain& d, int n_max,
                             const PrecisionConfig& cfg);

/// Basis from the inverse Cholesky factor of the (diagonally rescaled)
/// moment matrix. Throws IllConditionedError when a pivot collapses below
/// 2^-(bits/2) of the leading one (caller should raise precision).
OrthoBasis orthonormal_basis_cholesky(const JordanDomain& d,
                                      const MomentMatrix& m);

/// Independent construction: Stieltjes orthogonalization of z-multiples
/// against the boundary-quadrature inner product
///   <f,g> = (2 pi i)^-1 \oint f(z) conj(G_g(z)) dz,   G_g' = g.
OrthoBasis orthonormal_basis_arnoldi(const JordanDomain& d, int n_max,
                                     const PrecisionConfig& cfg);

/// Driver: Cholesky path with automatic precision escalation (x2 per retry),
/// optionally cross-checked against the Stieltjes path (disagreement beyond
/// ortho_tol throws CrossCheckError).
OrthoBasis compute_basis(const JordanDomain& d, int n_max,
                         const PrecisionConfig& cfg, bool cross_check = false);

Cx eval_poly(const OrthoBasis& b, int n, const Cx& z);

/// Max |<p_j,p_k> - delta_jk| over j,k <= n_max, re-quadratured at twice
/// the node count the basis was built with.
Real gram_residual(const OrthoBasis& b);

std::string basis_to_json(const OrthoBasis& b);
OrthoBasis basis_from_json(const std::string& text);
std::string basis_to_csv(const OrthoBasis& b);

}  // namespace bergman
