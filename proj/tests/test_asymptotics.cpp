#include <doctest.h>

#include <cmath>

#include "bergman/asymptotics.hpp"
#include "bergman/errors.hpp"

using namespace bergman;

namespace {

PrecisionConfig cfg() { return PrecisionConfig::with_bits(512); }

const OrthoBasis& cassini_basis() {
    static OrthoBasis b = compute_basis(JordanDomain::cassini(0.8926), 40, cfg());
    return b;
}
const OrthoBasis& joukowsky_basis() {
    static OrthoBasis b = compute_basis(JordanDomain::joukowsky(2.5), 40, cfg());
    return b;
}
const OrthoBasis& disk_basis() {
    static OrthoBasis b = compute_basis(JordanDomain::disk(1, 0, 2), 40, cfg());
    return b;
}

RateFit slope_of(const OrthoBasis& b, const Cx& z, int n_lo, int n_hi) {
    std::vector<int> ns;
    std::vector<Real> rs;
    for (int n = n_lo; n <= n_hi; ++n) {
        ns.push_back(n);
        rs.push_back(abs(carleman_residual(b, n, z)));
    }
    return fit_decay_slope(ns, rs);
}

}  // namespace

TEST_CASE("disk residual vanishes identically") {
    const OrthoBasis& b = disk_basis();
    for (int n = 0; n <= 40; n += 5) {
        Cx h = carleman_residual(b, n, Cx(2.0, 1.0));
        CHECK(abs(h) < pow2(-400));
    }
}

TEST_CASE("decay rate on the curve itself") {
    const OrthoBasis& b = cassini_basis();
    Real rho_v = rho(b.domain);
    double log_rho = std::log(static_cast<double>(rho_v));
    Cx z = psi_eval(b.domain, polar(Real(1), Real(0.8)));
    RateFit f = slope_of(b, z, 10, 40);
    CHECK(f.slope < 0);
    CHECK(f.slope <= log_rho + 0.35 * std::abs(log_rho));
}

TEST_CASE("decay rate on an inner level curve") {
    const OrthoBasis& b = cassini_basis();
    Real rho_v = rho(b.domain);
    Real r = (1 + rho_v) / 2;
    double want = std::log(static_cast<double>(rho_v / r));
    Cx z = psi_eval(b.domain, polar(r, Real(2.1)));
    RateFit f = slope_of(b, z, 10, 40);
    CHECK(f.slope < 0);
    CHECK(f.slope <= want + 0.35 * std::abs(want));
}

TEST_CASE("strong residual coincides with the Carleman one on the overlap") {
    const OrthoBasis& b = cassini_basis();
    Cx z = schwarz_reflect(b.domain, psi_eval(b.domain, polar(Real(1.05), Real(1.0))));
    RegionSample s = classify(b.domain, z);
    REQUIRE(s.label == 1);
    for (int n : {5, 17, 33}) {
        Cx a = strong_residual(b, s, n);
        Cx c = carleman_residual(b, n, z);
        CHECK(abs(a - c) < pow2(-precision_bits() / 2) * (1 + abs(c)));
    }
}

TEST_CASE("strong residual decays inside Sigma_1") {
    const OrthoBasis& b = joukowsky_basis();
    RegionSample s = classify(b.domain, Cx(1.0, 0.8));
    REQUIRE(s.label == 1);
    std::vector<int> ns;
    std::vector<Real> rs;
    for (int n = 8; n <= 40; ++n) {
        ns.push_back(n);
        rs.push_back(abs(strong_residual(b, s, n)));
    }
    RateFit f = fit_decay_slope(ns, rs);
    CHECK(f.slope < 0);
    CHECK(rs.back() < rs.front() / 100);
    CHECK_THROWS_AS(strong_residual(b, classify(b.domain, Cx(-1.0, 0.0)), 5),
                    DomainError);
}

TEST_CASE("contour-integral representation") {
    // disk: the main term reproduces p_n up to quadrature noise
    {
        const OrthoBasis& b = disk_basis();
        Cx z(1.4, -0.3);
        for (int n : {0, 3, 10, 25}) {
            auto [main, eps] = integral_representation(b, z, n, cfg());
            CHECK(abs(eps) < pow2(-180) * (1 + abs(main)));
        }
        // main term is a degree-n polynomial in z: vanishing (n+1)st
        // finite difference over n+2 colinear samples
        int n = 6;
        std::vector<Cx> vals;
        for (int i = 0; i < n + 2; ++i) {
            Cx zi = Cx(0.2, 0.1) + Real(0.2) * Real(i) * Cx(1.0, 0.3);
            vals.push_back(integral_representation(b, zi, n, cfg()).first);
        }
        for (int level = 0; level < n + 1; ++level)
            for (size_t i = 0; i + 1 < vals.size() - level; ++i)
                vals[i] = vals[i + 1] - vals[i];
        CHECK(abs(vals[0]) < pow2(-160));
    }
    // cassini: the remainder decays geometrically
    {
        const OrthoBasis& b = cassini_basis();
        Cx z(1.05, 0.1);
        REQUIRE(contains(b.domain, z));
        std::vector<int> ns;
        std::vector<Real> rs;
        for (int n = 4; n <= 36; n += 2) {
            auto [main, eps] = integral_representation(b, z, n, cfg());
            ns.push_back(n);
            rs.push_back(abs(eps));
        }
        RateFit f = fit_decay_slope(ns, rs);
        CHECK(f.slope < 0);
    }
    // joukowsky has no elementary interior map
    CHECK_THROWS_AS(
        integral_representation(joukowsky_basis(), Cx(0.0, 0.0), 3, cfg()),
        ConfigError);
}

TEST_CASE("nth-root growth approaches r(z)") {
    // at finite n the estimate carries a (log n)/n drift of size
    // (ln sqrt(n+1) + ln|Phi'|)/n above r(z); check both the raw bound and
    // the drift-corrected prediction
    auto corrected = [](const Real& r, const Cx& dphi, int n) {
        return r * exp((log(Real(n + 1)) / 2 + log(abs(dphi))) / n);
    };
    {
        const OrthoBasis& b = disk_basis();
        Cx z(2.0, 0.5);
        RegionSample s = classify(b.domain, z);
        Real want = abs(z - Cx(1.0, 0.0)) / 2;
        CHECK(boost::multiprecision::abs(nth_root_growth(b, z, 1, 40) - want) <
              0.04);
        Real at40 = exp(log(abs(eval_poly(b, 40, z))) / 40);
        CHECK(boost::multiprecision::abs(
                  at40 - corrected(s.r, phi_big_prime(b.domain, s), 40)) < 0.002);
    }
    {
        const OrthoBasis& b = cassini_basis();
        Cx z(1.2, 0.25);
        RegionSample s = classify(b.domain, z);
        REQUIRE(s.label == 1);
        CHECK(boost::multiprecision::abs(nth_root_growth(b, z, 1, 40) - s.r) <
              0.15);
        Real at40 = exp(log(abs(eval_poly(b, 40, z))) / 40);
        CHECK(boost::multiprecision::abs(
                  at40 - corrected(s.r, phi_big_prime(b.domain, s), 40)) < 0.01);
    }
    {
        // Sigma_0: growth capped near mu
        const OrthoBasis& b = joukowsky_basis();
        Cx z(-1.0, 0.15);
        REQUIRE(classify(b.domain, z).label == 0);
        CHECK(nth_root_growth(b, z, 1, 40) <= Real(0.5) + Real(0.08));
    }
}

TEST_CASE("rate fits serialize and filter the noise floor") {
    std::vector<int> ns;
    std::vector<Real> rs;
    for (int n = 1; n <= 20; ++n) {
        ns.push_back(n);
        // clean geometric sequence 2^-3n
        rs.push_back(pow2(-3 * n));
    }
    RateFit f = fit_decay_slope(ns, rs);
    CHECK(f.slope == doctest::Approx(-3 * std::log(2.0)).epsilon(1e-9));
    CHECK(f.n_values.front() >= 10);  // fit uses the upper half only
    std::string j = ratefit_to_json(f);
    CHECK(j.find("\"slope\"") != std::string::npos);
    CHECK(j.find("\"intercept\"") != std::string::npos);

    // all-below-floor input is rejected
    std::vector<Real> tiny(ns.size(), pow2(-500));
    CHECK_THROWS_AS(fit_decay_slope(ns, tiny), Error);
}
