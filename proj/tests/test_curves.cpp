#include <doctest.h>

#include <random>

#include "bergman/curves.hpp"
#include "bergman/errors.hpp"

using namespace bergman;

namespace {
Real tol() { return pow2(-precision_bits() / 2); }
}

TEST_CASE("family names round trip") {
    for (Family f : {Family::disk, Family::ellipse, Family::cassini, Family::joukowsky})
        CHECK(family_from_name(family_name(f)) == f);
    CHECK_THROWS_AS(family_from_name("pentagon"), ConfigError);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(JordanDomain::disk(0, 0, -1), ConfigError);
    CHECK_THROWS_AS(JordanDomain::ellipse(1.0), ConfigError);
    CHECK_THROWS_AS(JordanDomain::cassini(1.0), ConfigError);
    CHECK_THROWS_AS(JordanDomain::cassini(0.0), ConfigError);
    CHECK_THROWS_AS(JordanDomain::joukowsky(2.0), ConfigError);
}

TEST_CASE("oval constants at R = 0.75") {
    auto [a, b, c] = cassini_params(Real(0.75));
    CHECK(boost::multiprecision::abs(
              a - Real("-0.2052296141886901641850898783087777976459")) < 1e-38);
    CHECK(boost::multiprecision::abs(
              b - Real("-2.311525196427183200099507029796926811986")) < 1e-37);
    CHECK(boost::multiprecision::abs(
              c - Real("-0.2495407483080877550148727308574643191881")) < 1e-38);
}

TEST_CASE("oval constants at R = 0.8926") {
    {
        // exact decimal R: constants to near full reference accuracy
        auto [a, b, c] = cassini_params(Real("0.8926"));
        CHECK(boost::multiprecision::abs(
                  a - Real("-0.2599608945341144431527124408000472264336")) < 1e-38);
        CHECK(boost::multiprecision::abs(
                  b - Real("-1.73790067195634633911083904327901650107")) < 1e-37);
        CHECK(boost::multiprecision::abs(
                  c - Real("-0.3709310724845391971945702269576154298338")) < 1e-38);
    }
    // double-rounded R: same constants to double accuracy
    JordanDomain d = JordanDomain::cassini(0.8926);
    const auto& dv = d.derived();
    CHECK(boost::multiprecision::abs(dv.a - Real("-0.25996089453411444315")) < 1e-15);
    CHECK(boost::multiprecision::abs(dv.b - Real("-1.73790067195634633911")) < 1e-15);
    CHECK(boost::multiprecision::abs(dv.c - Real("-0.37093107248453919719")) < 1e-15);
    CHECK(boost::multiprecision::abs(rho(d) - Real("0.57540687804344126333")) < 1e-15);
    CHECK(boost::multiprecision::abs(rho_a(d) - Real("0.37093107248453919719")) < 1e-15);
    // h(w) = (w-a)/((1-aw)w^2) satisfies the factorization
    // w - a + R(1-aw)w^2 = -aR (w-b)^2 (w-c) -- check at random points
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    Real R(d.param("R"));
    for (int i = 0; i < 10; ++i) {
        Cx w(u(rng), u(rng));
        Cx lhs = w - Cx(dv.a, Real(0)) + R * (Cx(1.0, 0.0) - dv.a * w) * w * w;
        Cx wb = w - Cx(dv.b, Real(0));
        Cx rhs = -dv.a * R * wb * wb * (w - Cx(dv.c, Real(0)));
        CHECK(abs(lhs - rhs) < tol() * (1 + abs(rhs)));
    }
}

TEST_CASE("oval exterior map normalization") {
    JordanDomain d = JordanDomain::cassini(0.8926);
    const auto& dv = d.derived();
    // psi(1/a) = -1 and psi(1) on the curve |z^2-1| = R
    Cx at_inv_a = psi_eval(d, Cx(1 / dv.a, Real(0)));
    CHECK(abs(at_inv_a - Cx(-1.0, 0.0)) < tol());
    Cx at_one = psi_eval(d, Cx(1.0, 0.0));
    CHECK(boost::multiprecision::abs(
              at_one.re - Real("1.375717994357855304708596978957562871298")) < 1e-15);
    CHECK(boost::multiprecision::abs(abs(at_one * at_one - Cx(1.0, 0.0)) -
                                     Real(d.param("R"))) < tol());
    // the whole unit circle maps onto the curve
    for (const Cx& z : level_curve(d, Real(1), 17)) {
        CHECK(boost::multiprecision::abs(abs(z * z - Cx(1.0, 0.0)) -
                                         Real(d.param("R"))) < tol());
        CHECK(z.re > 0);
    }
}

TEST_CASE("exterior maps invert on random exterior points") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> umod(1.05, 2.5), uarg(0.0, 6.28);
    std::vector<JordanDomain> domains = {
        JordanDomain::disk(0.3, -0.2, 1.7), JordanDomain::ellipse(1.5),
        JordanDomain::cassini(0.8926), JordanDomain::joukowsky(2.5)};
    for (const auto& d : domains) {
        for (int i = 0; i < 12; ++i) {
            Cx w = polar(Real(umod(rng)), Real(uarg(rng)));
            Cx z = psi_eval(d, w);
            CHECK(abs(phi_eval(d, z) - w) < tol() * (1 + abs(w)));
            // finite-difference check of psi'
            Real h = pow2(-precision_bits() / 3);
            Cx fd = (psi_eval(d, w + Cx(h, Real(0))) -
                     psi_eval(d, w - Cx(h, Real(0)))) / (2 * h);
            CHECK(abs(fd - psi_prime(d, w)) < pow2(-precision_bits() / 3 + 24) *
                                                  (1 + abs(psi_prime(d, w))));
        }
    }
}

TEST_CASE("inverse map continues below the unit circle") {
    // phi extends to Omega_rho; sample |w| between rho and 1
    std::vector<JordanDomain> domains = {JordanDomain::ellipse(1.5),
                                         JordanDomain::cassini(0.8926),
                                         JordanDomain::joukowsky(2.5)};
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uarg(0.0, 6.28), ut(0.15, 0.9);
    for (const auto& d : domains) {
        Real r0 = rho(d);
        for (int i = 0; i < 10; ++i) {
            Real t(ut(rng));
            Real m = r0 + (1 - r0) * t;
            Cx w = polar(m, Real(uarg(rng)));
            Cx z = psi_eval(d, w);
            CHECK(abs(phi_eval(d, z) - w) < tol() * (1 + abs(w)));
        }
    }
    // points strictly inside L_rho must be rejected: the ellipse slit
    // [-1, 1], the right oval focus, the joukowsky center
    CHECK_THROWS_AS(phi_eval(domains[0], Cx(0.3, 0.0)), DomainError);
    CHECK_THROWS_AS(phi_eval(domains[1], Cx(1.0, 0.0)), DomainError);
    CHECK_THROWS_AS(phi_eval(domains[2], Cx(-1.0, 0.0)), DomainError);
}

TEST_CASE("joukowsky specifics") {
    JordanDomain d = JordanDomain::joukowsky(2.5);
    const auto& dv = d.derived();
    CHECK(boost::multiprecision::abs(dv.mu_j - Real(0.5)) < tol());
    CHECK(rho(d) == Real(2) / Real("2.5"));
    CHECK(rho_a(d) == 1 / Real("2.5"));
    // psi(1) = 1.5 + 1/1.5 = 13/6
    Cx p1 = psi_eval(d, Cx(1.0, 0.0));
    CHECK(boost::multiprecision::abs(p1.re - Real(13) / 6) < tol());
    CHECK(boost::multiprecision::abs(p1.im) < tol());
    CHECK_THROWS_AS(psi_eval(d, Cx(Real(1) / Real("2.5"), Real(0))), DomainError);
}

TEST_CASE("membership") {
    JordanDomain disk = JordanDomain::disk(0.3, -0.2, 1.7);
    CHECK(contains(disk, Cx(0.3, -0.2)));
    CHECK(!contains(disk, Cx(2.5, 0.0)));

    JordanDomain ell = JordanDomain::ellipse(1.5);
    CHECK(contains(ell, Cx(0.0, 0.0)));
    CHECK(contains(ell, Cx(1.0, 0.0)));            // focus
    CHECK(!contains(ell, Cx(1.1, 0.4)));

    JordanDomain cas = JordanDomain::cassini(0.8926);
    CHECK(contains(cas, Cx(1.0, 0.0)));
    CHECK(!contains(cas, Cx(-1.0, 0.0)));          // the mirror oval
    CHECK(!contains(cas, Cx(0.0, 0.0)));

    JordanDomain jk = JordanDomain::joukowsky(2.5);
    CHECK(contains(jk, Cx(0.0, 0.0)));
    CHECK(contains(jk, Cx(2.0, 0.0)));             // slit endpoint is interior
    CHECK(!contains(jk, Cx(2.5, 0.0)));
}

TEST_CASE("reflection across the curve is an involution") {
    std::vector<JordanDomain> domains = {
        JordanDomain::disk(0.0, 0.0, 1.0), JordanDomain::ellipse(1.5),
        JordanDomain::cassini(0.8926), JordanDomain::joukowsky(2.5)};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uarg(0.0, 6.28), um(1.02, 1.2);
    for (const auto& d : domains) {
        for (int i = 0; i < 6; ++i) {
            Cx w = polar(Real(um(rng)), Real(uarg(rng)));
            Cx z = psi_eval(d, w);
            Cx zs = schwarz_reflect(d, z);
            CHECK(contains(d, zs));
            CHECK(abs(schwarz_reflect(d, zs) - z) < tol() * (1 + abs(z)));
            // points on the curve itself are fixed
            Cx zb = psi_eval(d, polar(Real(1), Real(uarg(rng))));
            CHECK(abs(schwarz_reflect(d, zb) - zb) < tol() * (1 + abs(zb)));
        }
    }
}
