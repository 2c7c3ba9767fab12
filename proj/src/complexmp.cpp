#include "bergman/complexmp.hpp"

#include <iomanip>
#include <sstream>

namespace bergman {

Cx& Cx::operator*=(const Cx& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
}

Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Cx operator/(const Cx& a, const Cx& b) {
    Real d = norm2(b);
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

Cx& Cx::operator/=(const Cx& o) { return *this = *this / o; }

Real abs(const Cx& z) { return hypot(z.re, z.im); }

Real arg(const Cx& z) { return atan2(z.im, z.re); }

Cx inv(const Cx& z) {
    Real d = norm2(z);
    return {z.re / d, -z.im / d};
}

Cx sqrt(const Cx& z) {
    if (z.re == 0 && z.im == 0) return {0.0, 0.0};
    Real r = abs(z);
    if (z.re >= 0) {
        Real t = boost::multiprecision::sqrt((r + z.re) / 2);
        return {t, z.im / (2 * t)};
    }
    Real u = boost::multiprecision::sqrt((r - z.re) / 2);
    if (z.im >= 0) return {z.im / (2 * u), u};
    return {-z.im / (2 * u), -u};
}

Cx polar(const Real& r, const Real& theta) {
    return {r * cos(theta), r * sin(theta)};
}

Cx pow_i(Cx z, long n) {
    if (n < 0) {
        z = inv(z);
        n = -n;
    }
    Cx acc(1.0, 0.0);
    while (n > 0) {
        if (n & 1) acc *= z;
        z *= z;
        n >>= 1;
    }
    return acc;
}

Real pi() { return 4 * atan(Real(1)); }

std::string to_string(const Real& x) {
    std::ostringstream os;
    os << std::setprecision(bits_to_digits10(precision_bits())) << x;
    return os.str();
}

std::string to_string(const Cx& z, const char* sep) {
    return to_string(z.re) + sep + to_string(z.im);
}

Real real_from_string(const std::string& s) { return Real(s); }

}  // namespace bergman
