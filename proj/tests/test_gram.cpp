#include <doctest.h>

#include <random>

#include "bergman/errors.hpp"
#include "bergman/gram.hpp"

using namespace bergman;

namespace {
PrecisionConfig cfg() { return PrecisionConfig::with_bits(512); }
Real qtol() { return pow2(-200); }
}

TEST_CASE("unit disk moments are the classical diagonal") {
    JordanDomain d = JordanDomain::disk(0, 0, 1);
    MomentMatrix m = compute_moments(d, 8, cfg());
    for (int j = 0; j <= 8; ++j)
        for (int k = 0; k <= 8; ++k) {
            Cx want = (j == k) ? Cx(Real(1) / (k + 1), Real(0)) : Cx(0.0, 0.0);
            CHECK(abs(m.entries[j][k] - want) < qtol());
        }
}

TEST_CASE("scaled shifted disk moments") {
    // centered monomials absorb the shift; radius 2 scales m_kk by 4^{k+1}
    JordanDomain d = JordanDomain::disk(1, 0, 2);
    MomentMatrix m = compute_moments(d, 6, cfg());
    CHECK(abs(m.entries[0][0] - Cx(4.0, 0.0)) < qtol());
    for (int k = 0; k <= 6; ++k) {
        Real want = pow(Real(4), k + 1) / (k + 1);
        CHECK(abs(m.entries[k][k] - Cx(want, Real(0))) < qtol() * want);
    }
    CHECK(abs(m.entries[3][5]) < qtol());
}

TEST_CASE("moment matrices are Hermitian") {
    JordanDomain d = JordanDomain::cassini(0.8926);
    MomentMatrix m = compute_moments(d, 8, cfg());
    for (int j = 0; j <= 8; ++j)
        for (int k = 0; k <= 8; ++k)
            CHECK(m.entries[j][k] == conj(m.entries[k][j]));
    CHECK(m.entries[0][0].re > 0);
}

TEST_CASE("disk basis has the closed form sqrt(n+1) s^-n-1 (z-z0)^n") {
    JordanDomain d = JordanDomain::disk(1, 0, 2);
    MomentMatrix m = compute_moments(d, 8, cfg());
    OrthoBasis b = orthonormal_basis_cholesky(d, m);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n = 0; n <= 8; ++n) {
        CHECK(b.coeffs[n].back().re > 0);
        CHECK(b.coeffs[n].size() == static_cast<size_t>(n) + 1);
        for (int i = 0; i < 4; ++i) {
            Cx z(u(rng), u(rng));
            Cx want = sqrt(Real(n + 1)) * pow_i(Cx(0.5, 0.0), n + 1) *
                      pow_i(z - Cx(1.0, 0.0), n);
            CHECK(abs(eval_poly(b, n, z) - want) < qtol() * (1 + abs(want)));
        }
    }
    // arithmetic spot check on the unit disk: p_3(0.5) = 2 * 0.125
    JordanDomain unit = JordanDomain::disk(0, 0, 1);
    OrthoBasis ub = orthonormal_basis_cholesky(unit, compute_moments(unit, 3, cfg()));
    CHECK(abs(eval_poly(ub, 3, Cx(0.5, 0.0)) - Cx(0.25, 0.0)) < qtol());
}

TEST_CASE("ellipse basis is proportional to Chebyshev U_n") {
    JordanDomain d = JordanDomain::ellipse(1.5);
    OrthoBasis b = orthonormal_basis_cholesky(d, compute_moments(d, 8, cfg()));
    std::mt19937_64 rng(57);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (int n = 1; n <= 8; ++n) {
        // fix the constant from one abscissa, confirm on others
        Cx x0(u(rng), 0.0);
        auto chebu = [&](int deg, const Cx& x) {
            Cx um1(1.0, 0.0), um2(0.0, 0.0);
            for (int k = 1; k <= deg; ++k) {
                Cx next = Real(2) * x * um1 - um2;
                um2 = um1;
                um1 = next;
            }
            return um1;
        };
        Cx ratio = eval_poly(b, n, x0) / chebu(n, x0);
        for (int i = 0; i < 5; ++i) {
            Cx x(u(rng), u(rng));
            Cx got = eval_poly(b, n, x);
            Cx want = ratio * chebu(n, x);
            CHECK(abs(got - want) < pow2(-180) * (1 + abs(want)));
        }
    }
}

TEST_CASE("real-axis symmetry gives real coefficients") {
    for (const auto& d : {JordanDomain::cassini(0.8926), JordanDomain::ellipse(1.5),
                          JordanDomain::joukowsky(2.5)}) {
        OrthoBasis b = orthonormal_basis_cholesky(d, compute_moments(d, 8, cfg()));
        for (const auto& p : b.coeffs)
            for (const auto& c : p)
                CHECK(boost::multiprecision::abs(c.im) <
                      cfg().ortho_tol() * (1 + abs(c)));
    }
}

TEST_CASE("the two constructions agree") {
    JordanDomain d = JordanDomain::cassini(0.8926);
    MomentMatrix m = compute_moments(d, 6, cfg());
    OrthoBasis b1 = orthonormal_basis_cholesky(d, m);
    OrthoBasis b2 = orthonormal_basis_arnoldi(d, 6, cfg());
    Real tol = cfg().ortho_tol();
    for (int n = 0; n <= 6; ++n) {
        Real norm = poly_coeff_norm(b1.coeffs[n]);
        for (int k = 0; k <= n; ++k)
            CHECK(abs(b1.coeffs[n][k] - b2.coeffs[n][k]) < tol * (1 + norm));
    }
    // also at random interior points
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ur(0.0, 0.8), ut(0.0, 6.28);
    int checked = 0;
    while (checked < 10) {
        Cx z = Cx(1.0, 0.0) + polar(Real(ur(rng)), Real(ut(rng)));
        if (!contains(d, z)) continue;
        ++checked;
        for (int n = 0; n <= 6; ++n)
            CHECK(abs(eval_poly(b1, n, z) - eval_poly(b2, n, z)) <
                  tol * (1 + abs(eval_poly(b1, n, z))));
    }
    // driver with cross-check enabled accepts this pair
    CHECK_NOTHROW(compute_basis(d, 6, cfg(), true));
}

TEST_CASE("re-quadrature orthonormality residual") {
    JordanDomain d = JordanDomain::joukowsky(2.5);
    OrthoBasis b = compute_basis(d, 8, cfg());
    CHECK(gram_residual(b) < cfg().ortho_tol());
}

TEST_CASE("ill-conditioning is detected and escalated") {
    JordanDomain d = JordanDomain::disk(0, 0, 1);
    {
        ScopedPrecision prec(128);
        MomentMatrix m;
        m.n_max = 1;
        m.quad_nodes = 64;
        m.center = Cx(0.0, 0.0);
        Real off = 1 - pow2(-120);  // Gram pivot 2^-119ish, below the floor
        m.entries = {{Cx(1.0, 0.0), Cx(off, Real(0))},
                     {Cx(off, Real(0)), Cx(1.0, 0.0)}};
        CHECK_THROWS_AS(orthonormal_basis_cholesky(d, m), IllConditionedError);
        m.entries[0][1] = m.entries[1][0] = Cx(1.0, 0.0);  // exactly singular
        CHECK_THROWS_AS(orthonormal_basis_cholesky(d, m), IllConditionedError);
    }
    // the driver escalates precision instead of failing outright
    JordanDomain thin = JordanDomain::ellipse(1.02);
    PrecisionConfig low = PrecisionConfig::with_bits(128);
    OrthoBasis b = compute_basis(thin, 24, low);
    CHECK(b.precision_bits >= 128);
    CHECK(gram_residual(b) < PrecisionConfig::with_bits(b.precision_bits).ortho_tol());
}

TEST_CASE("serialization round trips") {
    JordanDomain d = JordanDomain::cassini(0.8926);
    OrthoBasis b = compute_basis(d, 5, cfg());
    OrthoBasis back = basis_from_json(basis_to_json(b));
    CHECK(back.n_max == b.n_max);
    CHECK(back.precision_bits == b.precision_bits);
    CHECK(back.domain.family() == Family::cassini);
    CHECK(back.domain.param("R") == d.param("R"));
    for (int n = 0; n <= b.n_max; ++n)
        for (int k = 0; k <= n; ++k)
            CHECK(abs(back.coeffs[n][k] - b.coeffs[n][k]) <
                  pow2(-b.precision_bits + 16) *
                      (1 + poly_coeff_norm(b.coeffs[n])));

    std::string csv = basis_to_csv(b);
    CHECK(csv.substr(0, 10) == "n,k,re,im\n");
    // one row per coefficient plus the header
    size_t rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == 1 + 21);  // header + sum_{n<=5}(n+1)
}
