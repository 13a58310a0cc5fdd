#pragma once

#include "stokeslab/bigcomplex.hpp"
#include "stokeslab/error.hpp"

namespace stokeslab {

// Working-precision configuration threaded through every numerical operation.
// Results are reproducible bit-for-bit given (bits, guard_bits) and inputs.
struct PrecisionContext {
    long bits = 256;
    long guard_bits = 64;

    PrecisionContext() = default;
    PrecisionContext(long b, long g) : bits(b), guard_bits(g) { validate(); }

    void validate() const {
        if (bits < 64) fail(errc::bad_parameter, "precision bits must be >= 64");
        if (guard_bits < 32) fail(errc::bad_parameter, "guard_bits must be >= 32");
    }

    // precision used for intermediate sums
    mpfr_prec_t working() const { return static_cast<mpfr_prec_t>(bits + guard_bits); }

    Real make(long v) const { return Real(v, working()); }
    Real make(const Rational& q) const { return Real(q, working()); }
    Complex make_c(long re, long im = 0) const {
        return Complex(Real(re, working()), Real(im, working()));
    }
    Real pi() const { return Real::pi(working()); }
    Complex i_unit() const { return Complex::i_unit(working()); }

    // default absolute tolerance target in the Borel plane: 2^{-bits+64}
    Real default_target() const { return Real::pow2(-bits + 64, working()); }
};

}  // namespace stokeslab
