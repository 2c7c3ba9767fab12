#include "bergman/poly.hpp"

#include <algorithm>

#include "bergman/errors.hpp"

namespace bergman {

Cx poly_eval(const Poly& p, const Cx& z) {
    Cx acc(0.0, 0.0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::pair<Cx, Cx> poly_eval_d(const Poly& p, const Cx& z) {
    Cx v(0.0, 0.0), d(0.0, 0.0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        d = d * z + v;
        v = v * z + *it;
    }
    return {v, d};
}

Poly poly_derivative(const Poly& p) {
    Poly d;
    for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Real(static_cast<long>(k)));
    if (d.empty()) d.emplace_back(0.0, 0.0);
    return d;
}

Poly poly_antiderivative(const Poly& p) {
    Poly a(p.size() + 1, Cx(0.0, 0.0));
    for (size_t k = 0; k < p.size(); ++k) a[k + 1] = p[k] / Real(static_cast<long>(k + 1));
    return a;
}

Poly poly_shift(const Poly& p, const Cx& c) {
    // Repeated in-place synthetic division by c: on exit work[j] = p^(j)(c)/j!.
    Poly work = p;
    if (work.size() < 2) return work;
    size_t n = work.size() - 1;
    for (size_t j = 0; j < n; ++j) {
        for (size_t k = n; k-- > j;) work[k] += c * work[k + 1];
    }
    return work;
}

Poly poly_deflate(const Poly& p, const Cx& r) {
    if (p.size() < 2) return {Cx(0.0, 0.0)};
    Poly q(p.size() - 1, Cx(0.0, 0.0));
    Cx carry = p.back();
    for (size_t k = p.size() - 1; k-- > 0;) {
        q[k] = carry;
        carry = p[k] + carry * r;
    }
    return q;
}

Real poly_coeff_norm(const Poly& p) {
    Real m(0);
    for (const auto& c : p) m = (std::max)(m, abs(c));
    return m;
}

namespace {
Cx cbrt_principal(const Cx& z) {
    if (z.re == 0 && z.im == 0) return {0.0, 0.0};
    Real r = abs(z), t = arg(z);
    return polar(exp(log(r) / 3), t / 3);
}
}  // namespace

std::array<Cx, 3> solve_cubic(const Cx& a2, const Cx& a1, const Cx& a0) {
    const Real third = Real(1) / 3;
    Cx shift = a2 * third;
    Cx p = a1 - a2 * a2 * third;
    Cx q = a2 * a2 * a2 * (Real(2) / 27) - a2 * a1 * third + a0;

    std::array<Cx, 3> roots;
    if (abs(p) == 0 && abs(q) == 0) {
        roots = {Cx(0.0, 0.0), Cx(0.0, 0.0), Cx(0.0, 0.0)};
    } else {
        Cx s = sqrt(q * q * Real(0.25) + p * p * p / Real(27));
        Cx u3a = q * Real(-0.5) + s, u3b = q * Real(-0.5) - s;
        Cx u3 = abs(u3a) >= abs(u3b) ? u3a : u3b;
        Cx u = cbrt_principal(u3);
        Cx v = (abs(u) == 0) ? Cx(0.0, 0.0) : p / (u * Real(-3));
        Real h = sqrt(Real(3)) / 2;
        Cx w1(Real(-0.5), h), w2(Real(-0.5), -h);
        roots = {u + v, w1 * u + w2 * v, w2 * u + w1 * v};
    }

    Poly cubic = {a0, a1, a2, Cx(1.0, 0.0)};
    for (auto& t : roots) {
        Cx z = t - shift;
        for (int it = 0; it < 4; ++it) {
            auto [f, d] = poly_eval_d(cubic, z);
            if (abs(d) == 0) break;
            Cx step = f / d;
            z -= step;
        }
        t = z;
    }
    return roots;
}

Real bisect_root(const std::function<Real(const Real&)>& f, Real lo, Real hi) {
    Real flo = f(lo), fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw Error("bisect_root: endpoints do not bracket a sign change");
    int iters = precision_bits() + 16;
    for (int i = 0; i < iters; ++i) {
        Real mid = (lo + hi) / 2;
        if (mid == lo || mid == hi) break;
        Real fm = f(mid);
        if (fm == 0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

std::pair<double, double> linear_fit(const std::vector<double>& x,
                                     const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;
    return {slope, intercept};
}

Real tanh_sinh(const std::function<Real(const Real&)>& f, const Real& a,
               const Real& b, const Real& tol) {
    const Real half_pi = pi() / 2;
    const Real mid = (a + b) / 2, halfw = (b - a) / 2;
    const double tmax =
        std::log(2.0 * (precision_bits() * 0.6931 + 64.0) / 3.1415);

    auto term = [&](const Real& t) -> Real {
        Real s = sinh(t);
        Real ch = cosh(half_pi * s);
        Real x = mid + halfw * tanh(half_pi * s);
        if (x <= a || x >= b) return Real(0);
        Real w = half_pi * cosh(t) / (ch * ch);
        return f(x) * w * halfw;
    };

    Real h(1);
    Real sum = term(Real(0));
    {
        // level 0: step 1 over |t| <= tmax
        for (int k = 1; k <= static_cast<int>(tmax) + 1; ++k) {
            sum += term(Real(k)) + term(Real(-k));
        }
    }
    Real integral = sum;
    for (int level = 1; level <= 12; ++level) {
        h /= 2;
        Real add(0);
        long kmax = static_cast<long>(tmax / static_cast<double>(h)) + 1;
        for (long k = 1; k <= kmax; k += 2) {
            Real t = h * Real(k);
            add += term(t) + term(-t);
        }
        sum += add;
        Real next = sum * h;
        Real change = boost::multiprecision::abs(next - integral);
        integral = next;
        if (level >= 3 && change <= tol * (1 + boost::multiprecision::abs(integral)))
            break;
    }
    return integral;
}

}  // namespace bergman
