#pragma once

#include <functional>
#include <vector>

#include "stokeslab/precision.hpp"

namespace stokeslab::numerics {

// Gamma function for complex argument (Spouge series with precision-dependent
// parameter; reflection formula for Re z < 1/2). Relative error ~ 2^{-working}.
Complex gamma_complex(const Complex& z, const PrecisionContext& ctx);

// erf(z) = 2 pi^{-1/2} int_0^z e^{-t^2} dt. Maclaurin series inside |z| <= 4,
// continued fraction for erfc beyond (reflected into Re z > 0); the Maclaurin
// route adds cancellation guard bits automatically.
Complex erf_complex(const Complex& z, const PrecisionContext& ctx);

// Order-th Richardson extrapolant of s(r0), s(r0+1), ... eliminating the
// r^{-1}, ..., r^{-order} tail. Uses the trailing order+1 entries.
Complex richardson(const std::vector<Complex>& seq, long r0, int order);

// ---- Pade approximants -------------------------------------------------

struct PadeApproximant {
    std::vector<Complex> num;  // degree m
    std::vector<Complex> den;  // degree n, den[0] == 1
    int m = 0, n = 0;
    int reductions = 0;  // degree reductions applied for a degenerate table

    Complex eval(const Complex& p) const;
};

// [m/n] approximant matching taylor to order m+n. A numerically singular
// denominator system reduces both degrees and retries.
PadeApproximant pade(const std::vector<Complex>& taylor, int m, int n, const PrecisionContext& ctx);

struct RationalPade {
    std::vector<Rational> num, den;
    int m = 0, n = 0;
    int reductions = 0;
};

// Exact-arithmetic Pade for rational Taylor data (test oracle and the
// "rational mode" round-trip invariant).
RationalPade pade_exact(const std::vector<Rational>& taylor, int m, int n);

// ---- contour quadrature --------------------------------------------------

struct Contour {
    enum class Side { above, below, on };

    std::vector<Complex> vertices;  // polyline, first vertex is the start
    bool has_ray = false;
    Real ray_angle{64};             // terminal ray direction (radians)
    std::vector<Side> side_tags;    // optional, one per segment

    static Contour ray(const Real& angle, mpfr_prec_t prec) {
        Contour c;
        c.vertices.push_back(Complex(prec));
        c.has_ray = true;
        c.ray_angle = angle;
        return c;
    }
};

// Adaptive Gauss-Legendre evaluation of int_c f(p) e^{-x p} dp to the given
// absolute tolerance. The terminal ray is truncated where the integrand bound
// falls below abs_tol/100.
Complex quad_laplace(const std::function<Complex(const Complex&)>& f, const Contour& c,
                     const Complex& x, const PrecisionContext& ctx, const Real& abs_tol);

// ---- Bessel functions (complex argument, integer order 0/1) ---------------
// Power-series implementations with cancellation guard; used by the resonant
// family, whose homogeneous solutions are e^{-x} sqrt(x) Z_1(2 m sqrt(x)).
Complex bessel_j0(const Complex& z, const PrecisionContext& ctx);
Complex bessel_j1(const Complex& z, const PrecisionContext& ctx);
Complex bessel_y0(const Complex& z, const PrecisionContext& ctx);
Complex bessel_y1(const Complex& z, const PrecisionContext& ctx);

// Gauss-Legendre nodes/weights on [-1,1], cached per (n, precision).
const std::pair<std::vector<Real>, std::vector<Real>>& gauss_legendre(int n, mpfr_prec_t prec);

}  // namespace stokeslab::numerics
