#include <doctest.h>

#include <algorithm>
#include <random>

#include "bergman/poly.hpp"

using namespace bergman;

namespace {
Real tol() { return pow2(-precision_bits() + 24); }
}

TEST_CASE("evaluation and calculus") {
    // p(z) = 1 + 2z - z^2 + 3z^3
    Poly p = {Cx(1.0, 0.0), Cx(2.0, 0.0), Cx(-1.0, 0.0), Cx(3.0, 0.0)};
    Cx z(0.5, -1.5);
    Cx want = Cx(1.0, 0.0) + Cx(2.0, 0.0) * z - z * z + Cx(3.0, 0.0) * z * z * z;
    CHECK(abs(poly_eval(p, z) - want) < tol());

    auto [v, d] = poly_eval_d(p, z);
    CHECK(abs(v - want) < tol());
    Cx dwant = Cx(2.0, 0.0) - Cx(2.0, 0.0) * z + Cx(9.0, 0.0) * z * z;
    CHECK(abs(d - dwant) < tol());

    Poly back = poly_derivative(poly_antiderivative(p));
    REQUIRE(back.size() == p.size());
    for (size_t k = 0; k < p.size(); ++k) CHECK(abs(back[k] - p[k]) < tol());
}

TEST_CASE("taylor shift agrees with direct evaluation") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Poly p;
    for (int k = 0; k < 9; ++k) p.push_back(Cx(u(rng), u(rng)));
    Cx c(0.3, -0.7);
    Poly t = poly_shift(p, c);
    for (int i = 0; i < 8; ++i) {
        Cx z(u(rng), u(rng));
        CHECK(abs(poly_eval(t, z - c) - poly_eval(p, z)) < tol());
    }
}

TEST_CASE("synthetic division") {
    Poly p = {Cx(-6.0, 0.0), Cx(11.0, 0.0), Cx(-6.0, 0.0), Cx(1.0, 0.0)};  // (z-1)(z-2)(z-3)
    Poly q = poly_deflate(p, Cx(2.0, 0.0));
    REQUIRE(q.size() == 3);
    // quotient should be (z-1)(z-3) = z^2 - 4z + 3
    CHECK(abs(q[0] - Cx(3.0, 0.0)) < tol());
    CHECK(abs(q[1] - Cx(-4.0, 0.0)) < tol());
    CHECK(abs(q[2] - Cx(1.0, 0.0)) < tol());
}

TEST_CASE("cubic closed form") {
    // roots 1, -2, 3i:  expand (z-1)(z+2)(z-3i)
    Cx r1(1.0, 0.0), r2(-2.0, 0.0), r3(0.0, 3.0);
    Cx a2 = -(r1 + r2 + r3);
    Cx a1 = r1 * r2 + r1 * r3 + r2 * r3;
    Cx a0 = -(r1 * r2 * r3);
    auto roots = solve_cubic(a2, a1, a0);
    for (const Cx& want : {r1, r2, r3}) {
        Real best(1);
        for (const auto& got : roots) best = (std::min)(best, abs(got - want));
        CHECK(best < tol());
    }
}

TEST_CASE("bisection") {
    Real r = bisect_root([](const Real& x) { return x * x - 2; }, Real(1), Real(2));
    CHECK(boost::multiprecision::abs(r - sqrt(Real(2))) < pow2(-precision_bits() + 8));
}

TEST_CASE("least squares line") {
    std::vector<double> x = {0, 1, 2, 3, 4}, y;
    for (double v : x) y.push_back(-1.25 * v + 0.5);
    auto [m, b] = linear_fit(x, y);
    CHECK(m == doctest::Approx(-1.25).epsilon(1e-12));
    CHECK(b == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
    Real t = pow2(-precision_bits() / 2);
    Real i1 = tanh_sinh([](const Real& x) { return 1 / sqrt(x); }, Real(0), Real(1), t);
    CHECK(boost::multiprecision::abs(i1 - 2) < pow2(-precision_bits() / 2 + 16));

    Real i2 = tanh_sinh([](const Real& x) { return sin(x); }, Real(0), pi(), t);
    CHECK(boost::multiprecision::abs(i2 - 2) < pow2(-precision_bits() / 2 + 16));

    // weight of the semicircle law on [-1, 1]
    Real i3 = tanh_sinh([](const Real& x) { return sqrt(1 - x * x); }, Real(-1), Real(1), t);
    CHECK(boost::multiprecision::abs(i3 - pi() / 2) < pow2(-precision_bits() / 2 + 16));
}
