#include "bergman/precision.hpp"

#include <atomic>
#include <cmath>

namespace bergman {

namespace {
std::atomic<int> g_bits{512};

void apply(int bits) {
    Real::default_precision(static_cast<unsigned>(bits_to_digits10(bits)));
}

struct Init {
    Init() { apply(g_bits.load()); }
} g_init;
}  // namespace

int bits_to_digits10(int bits) {
    return static_cast<int>(std::ceil(bits * 0.30103)) + 2;
}

int precision_bits() { return g_bits.load(); }

void set_precision_bits(int bits) {
    if (bits < 64) throw ConfigError("precision_bits must be >= 64");
    g_bits.store(bits);
    apply(bits);
}

void sync_thread_precision() { apply(g_bits.load()); }

ScopedPrecision::ScopedPrecision(int bits) : saved_(precision_bits()) {
    set_precision_bits(bits);
}

ScopedPrecision::~ScopedPrecision() { set_precision_bits(saved_); }

Real pow2(long e) {
    Real r(1);
    return ldexp(r, e);
}

void PrecisionConfig::validate() const {
    if (precision_bits < 128) throw ConfigError("precision_bits must be >= 128");
    if (precision_bits % 64 != 0)
        throw ConfigError("precision_bits must be a multiple of 64");
    if (max_quad_nodes < 16) throw ConfigError("max_quad_nodes too small");
    if (ortho_tol() < quad_tol())
        throw ConfigError("ortho_tol must be >= quad_tol");
}

Real PrecisionConfig::quad_tol() const {
    long e = quad_tol_log2 != 0 ? quad_tol_log2 : -(precision_bits / 2);
    return pow2(e);
}

Real PrecisionConfig::ortho_tol() const {
    long e = ortho_tol_log2 != 0 ? ortho_tol_log2 : -(precision_bits / 4);
    return pow2(e);
}

}  // namespace bergman
