#pragma once

#include <string>
#include <utility>

#include "bergman/precision.hpp"

namespace bergman {

/// Complex number over the arbitrary-precision Real.
struct Cx {
    Real re, im;

    Cx() : re(0), im(0) {}
    Cx(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    Cx(double r) : re(r), im(0) {}           // NOLINT(google-explicit-constructor)
    Cx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Cx(double r, double i) : re(r), im(i) {}

    Cx& operator+=(const Cx& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Cx& operator-=(const Cx& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Cx& operator*=(const Cx& o);
    Cx& operator/=(const Cx& o);
    Cx& operator*=(const Real& s) {
        re *= s;
        im *= s;
        return *this;
    }
    Cx& operator/=(const Real& s) {
        re /= s;
        im /= s;
        return *this;
    }
};

inline Cx operator+(Cx a, const Cx& b) { return a += b; }
inline Cx operator-(Cx a, const Cx& b) { return a -= b; }
inline Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
Cx operator*(const Cx& a, const Cx& b);
Cx operator/(const Cx& a, const Cx& b);
inline Cx operator*(Cx a, const Real& s) { return a *= s; }
inline Cx operator*(const Real& s, Cx a) { return a *= s; }
inline Cx operator/(Cx a, const Real& s) { return a /= s; }
inline bool operator==(const Cx& a, const Cx& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const Cx& a, const Cx& b) { return !(a == b); }

inline Cx conj(const Cx& z) { return {z.re, -z.im}; }
inline Real norm2(const Cx& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Cx& z);
Real arg(const Cx& z);
Cx sqrt(const Cx& z);  // principal branch
Cx polar(const Real& r, const Real& theta);
Cx pow_i(Cx z, long n);  // integer power, n may be negative
Cx inv(const Cx& z);

Real pi();

/// Decimal string carrying the full working precision.
std::string to_string(const Real& x);
std::string to_string(const Cx& z, const char* sep = " ");
Real real_from_string(const std::string& s);

}  // namespace bergman
