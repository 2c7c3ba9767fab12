#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include "bergman/errors.hpp"

namespace bergman {

/// Arbitrary-precision real, precision controlled globally (per thread)
/// through set_precision_bits / ScopedPrecision.
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

int precision_bits();
void set_precision_bits(int bits);

/// Re-apply the current precision on the calling thread (worker threads
/// must call this before touching Real values).
void sync_thread_precision();

int bits_to_digits10(int bits);

/// RAII: raise (or change) the working precision, restore on exit.
class ScopedPrecision {
  public:
    explicit ScopedPrecision(int bits);
    ~ScopedPrecision();
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

  private:
    int saved_;
};

/// 2^e as a Real at current precision.
Real pow2(long e);

/// Working precision, node-count policy and derived tolerances.
///
/// quad_tol / ortho_tol default to 2^-(bits/2) and 2^-(bits/4); explicit
/// overrides (as log2 exponents) are possible but must keep
/// ortho_tol >= quad_tol.
struct PrecisionConfig {
    int precision_bits = 512;
    long max_quad_nodes = 1L << 17;
    long quad_tol_log2 = 0;   // 0 => default -bits/2
    long ortho_tol_log2 = 0;  // 0 => default -bits/4

    void validate() const;
    Real quad_tol() const;
    Real ortho_tol() const;

    static PrecisionConfig with_bits(int bits) {
        PrecisionConfig cfg;
        cfg.precision_bits = bits;
        return cfg;
    }
};

}  // namespace bergman
