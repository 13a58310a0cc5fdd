#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stokeslab/numerics.hpp"

using namespace stokeslab;
using namespace stokeslab::numerics;

namespace {

const PrecisionContext kCtx(256, 64);

double rel_err(const Complex& got, const Complex& want) {
    return (abs(got - want) / abs(want)).to_double();
}

Complex mkc(const char* re, const char* im, mpfr_prec_t prec = 320) {
    return {Real(std::string(re), prec), Real(std::string(im), prec)};
}

// deterministic sample points
std::vector<Complex> sample_points(mpfr_prec_t prec) {
    std::vector<Complex> pts;
    unsigned long state = 123456789;
    auto next = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>((state >> 16) % 100000) / 100000.0;
    };
    for (int i = 0; i < 8; ++i) {
        double re = 0.3 + 6.0 * next();
        double im = -4.0 + 8.0 * next();
        pts.push_back(Complex(re, im, prec));
    }
    return pts;
}

}  // namespace

TEST_CASE("gamma at integer and half-integer points") {
    CHECK(rel_err(gamma_complex(Complex(1L, 320), kCtx), Complex(1L, 320)) < 1e-70);
    CHECK(rel_err(gamma_complex(Complex(5L, 320), kCtx), Complex(24L, 320)) < 1e-70);
    Complex half{Real("0.5", 320), Real(0L, 320)};
    Complex want{sqrt(Real::pi(320)), Real(0L, 320)};
    CHECK(rel_err(gamma_complex(half, kCtx), want) < 1e-70);
}

TEST_CASE("gamma against the real-axis MPFR route") {
    for (double x : {0.25, 1.75, 7.3, 42.1, 201.5}) {
        Complex g = gamma_complex(Complex(x, 0.0, 320), kCtx);
        Real want = gamma(Real(x, 320));
        CHECK((abs(g.re - want) / abs(want)).to_double() < 1e-70);
        CHECK(abs(g.im).to_double() < 1e-70);
    }
}

TEST_CASE("gamma frozen complex value and reflection region") {
    Complex want = mkc("-1.85982529596651900689336133556739116912747062",
                       "1.16234015269686196837049566913975091403921525");
    CHECK(rel_err(gamma_complex(mkc("3.7", "2.1"), kCtx), want) < 1e-40);
    // reflection formula region: check recurrence consistency instead of a frozen value
    Complex z = mkc("-2.3", "0.7");
    Complex lhs = gamma_complex(z + Complex(1L, 320), kCtx);
    Complex rhs = z * gamma_complex(z, kCtx);
    CHECK(rel_err(lhs, rhs) < 1e-60);
}

TEST_CASE("gamma recurrence on a random complex sample") {
    Real tol = Real::pow2(-kCtx.bits / 2, 320);
    for (const auto& z : sample_points(320)) {
        Complex lhs = gamma_complex(z + Complex(1L, 320), kCtx);
        Complex rhs = z * gamma_complex(z, kCtx);
        CHECK(abs(lhs - rhs) < tol * abs(lhs));
    }
}

TEST_CASE("gamma pole error at nonpositive integers") {
    CHECK_THROWS_AS(gamma_complex(Complex(0L, 320), kCtx), Error);
    CHECK_THROWS_AS(gamma_complex(Complex(-3L, 320), kCtx), Error);
    try {
        gamma_complex(Complex(-7L, 320), kCtx);
    } catch (const Error& e) {
        CHECK(e.code() == errc::pole_of_gamma);
    }
}

TEST_CASE("erf basics: origin, oddness") {
    CHECK(abs(erf_complex(Complex(320), kCtx)).to_double() == 0.0);
    for (const auto& z : sample_points(320)) {
        Complex a = erf_complex(z, kCtx);
        Complex b = erf_complex(-z, kCtx);
        CHECK(abs(a + b).to_double() < 1e-60 * (1 + abs(a).to_double()));
    }
}

TEST_CASE("erf(1/sqrt 2) against the series oracle value") {
    Complex z{Real(1L, 320) / sqrt(Real(2L, 320)), Real(0L, 320)};
    Real want("0.682689492137085897170465091264075844955825933453208781974789", 320);
    CHECK((abs(erf_complex(z, kCtx).re - want)).to_double() < 1e-58);
}

TEST_CASE("erf continued-fraction route against MPFR and frozen complex values") {
    // real axis: the |z| > 4 route must agree with mpfr_erf
    for (double x : {4.5, 5.5, 12.0}) {
        Complex e = erf_complex(Complex(x, 0.0, 320), kCtx);
        Real want = erf(Real(x, 320));
        CHECK(abs(e.re - want).to_double() < 1e-60);
    }
    CHECK(rel_err(erf_complex(Complex(5.0, 2.0, 320), kCtx),
                  mkc("0.999999999995997064442247276261319067037077502",
                      "0.0000000000783582046669295226242775127037511908429086194")) < 1e-35);
    CHECK(rel_err(erf_complex(Complex(4.5, -3.0, 320), kCtx),
                  mkc("1.00000102917558134747718578533267796807822047",
                      "-0.000000869637955599172441452786145489640524626711341")) < 1e-35);
}

TEST_CASE("richardson removes pure power tails") {
    mpfr_prec_t wp = 320;
    // constant sequence
    std::vector<Complex> cseq;
    for (long r = 5; r < 12; ++r) cseq.push_back(Complex(7L, wp));
    CHECK(rel_err(richardson(cseq, 5, 3), Complex(7L, wp)) < 1e-80);

    // s_r = 1 + 1/r at order 1: exact
    std::vector<Complex> s1;
    for (long r = 4; r < 12; ++r) s1.push_back(Complex(Real(1L, wp) + Real(1L, wp) / Real(r, wp)));
    CHECK(abs(richardson(s1, 4, 1) - Complex(1L, wp)).to_double() < 1e-80);

    // s_r = 1 + 1/r + 1/r^2 at order 2: working precision
    std::vector<Complex> s2;
    for (long r = 4; r < 12; ++r) {
        Real rr(r, wp);
        s2.push_back(Complex(Real(1L, wp) + 1 / rr + 1 / (rr * rr)));
    }
    CHECK(abs(richardson(s2, 4, 2) - Complex(1L, wp)).to_double() < 1e-80);

    CHECK_THROWS_AS(richardson(std::vector<Complex>{Complex(1L, wp)}, 1, 2), Error);
}

TEST_CASE("pade reproduces the geometric series exactly") {
    mpfr_prec_t wp = kCtx.working();
    std::vector<Complex> ones(3, Complex(1L, wp));
    auto ap = pade(ones, 1, 1, kCtx);
    // 1/(1-p): numerator 1, denominator 1 - p
    CHECK(abs(ap.num[0] - Complex(1L, wp)).to_double() < 1e-70);
    CHECK(abs(ap.den[1] + Complex(1L, wp)).to_double() < 1e-70);
    Complex at_half = ap.eval(Complex(0.5, 0.0, wp));
    CHECK(rel_err(at_half, Complex(2L, wp)) < 1e-70);
}

TEST_CASE("pade [0/0] of exp is the constant 1") {
    std::vector<Complex> c{Complex(1L, 320), Complex(1L, 320)};
    auto ap = pade(c, 0, 0, kCtx);
    CHECK(ap.n == 0);
    CHECK(rel_err(ap.eval(Complex(3L, 320)), Complex(1L, 320)) < 1e-70);
}

TEST_CASE("degenerate pade table reduces degrees") {
    // (1,1,1,1,1): the [2/2] system is singular; reduction lands on 1/(1-p)
    std::vector<Complex> ones(5, Complex(1L, 320));
    auto ap = pade(ones, 2, 2, kCtx);
    CHECK(ap.reductions >= 1);
    Complex v = ap.eval(Complex(0.25, 0.0, 320));
    CHECK(rel_err(v, Complex(Real("4", 320) / 3)) < 1e-60);
}

TEST_CASE("exact rational pade round-trips its Taylor data") {
    // hand-solvable [1/1] and a longer [2/2] re-expansion check in exact arithmetic
    std::vector<Rational> c{Rational(1), Rational(2), Rational(3), Rational(5), Rational(8)};
    auto ap = pade_exact(c, 2, 2);
    // multiply den * taylor and compare against num through order m+n
    std::vector<Rational> prod(5, Rational(0));
    for (int i = 0; i < 5; ++i)
        for (size_t j = 0; j < ap.den.size() && j <= static_cast<size_t>(i); ++j)
            prod[i] += ap.den[j] * c[i - j];
    for (int i = 0; i <= ap.m; ++i) CHECK(prod[i] == ap.num[i]);
    for (int i = ap.m + 1; i <= ap.m + ap.n; ++i) CHECK(prod[i] == Rational(0));
}

TEST_CASE("quad_laplace on rays and polylines") {
    mpfr_prec_t wp = kCtx.working();
    Real tol = Real::pow2(-160, wp);
    auto one = [wp](const Complex&) { return Complex(1L, wp); };
    auto ident = [](const Complex& p) { return p; };

    auto ray = Contour::ray(Real(0L, wp), wp);
    Complex v1 = quad_laplace(one, ray, Complex(2L, wp), kCtx, tol);
    CHECK(rel_err(v1, Complex(Real("0.5", wp))) < 1e-45);

    Complex v2 = quad_laplace(ident, ray, Complex(3L, wp), kCtx, tol);
    CHECK(rel_err(v2, Complex(Real(1L, wp) / 9)) < 1e-45);

    // non-decaying ray
    CHECK_THROWS_AS(quad_laplace(one, ray, Complex(-2L, wp), kCtx, tol), Error);
}

TEST_CASE("quad_laplace with an indented contour matches the residue oracle") {
    mpfr_prec_t wp = kCtx.working();
    Real tol = Real::pow2(-140, wp);
    auto f = [wp](const Complex& p) { return Complex(1L, wp) / (Complex(1L, wp) - p); };
    Complex x(10L, wp);

    Contour above;
    above.vertices = {Complex(wp), Complex(0.3, 0.05, wp), Complex(2.0, 0.05, wp), Complex(2.5, 0.0, wp)};
    above.has_ray = true;
    above.ray_angle = Real(0L, wp);
    Complex va = quad_laplace(f, above, x, kCtx, tol);

    // oracle: PV + i pi residue, PV = e^{-10} Ei(10)
    Real pv("0.113147020473410778034051681354477014764768155778506238530795", wp);
    Complex want{pv, Real::pi(wp) * exp(Real(-10L, wp))};
    CHECK(abs(va - want).to_double() < 1e-38);

    // contour-deformation invariance: a homotopic contour, same side
    Contour above2;
    above2.vertices = {Complex(wp), Complex(0.1, 0.02, wp), Complex(1.0, 0.09, wp),
                       Complex(2.2, 0.01, wp), Complex(3.0, 0.0, wp)};
    above2.has_ray = true;
    above2.ray_angle = Real(0L, wp);
    Complex vb = quad_laplace(f, above2, x, kCtx, tol);
    CHECK(abs(va - vb).to_double() < 1e-38);
}

TEST_CASE("bessel J/Y series against frozen values and the cross-product identity") {
    Complex j1 = bessel_j1(Complex(3L, 320), kCtx);
    CHECK(abs(j1.re - Real("0.339058958525936458925514597206478896973080418", 320)).to_double() < 1e-40);
    Complex y1 = bessel_y1(Complex(3L, 320), kCtx);
    CHECK(abs(y1.re - Real("0.324674424791799978437012839287953239669275143", 320)).to_double() < 1e-40);
    CHECK(rel_err(bessel_j0(Complex(2.0, 1.0, 320), kCtx),
                  mkc("0.187853728082461716190889424493740504015862313",
                      "-0.646169435153980716381428488402710153690017518")) < 1e-40);
    CHECK(rel_err(bessel_y0(Complex(2.0, 1.0, 320), kCtx),
                  mkc("0.800451120409993979166582243381142623445032256",
                      "0.0756385502863937918135993035331327647987261238")) < 1e-40);

    // J1(z) Y0(z) - J0(z) Y1(z) = 2/(pi z)
    for (auto zv : {std::complex<double>(20, 3), std::complex<double>(7, -2), std::complex<double>(95, 4)}) {
        Complex z(zv.real(), zv.imag(), 320);
        Complex lhs = bessel_j1(z, kCtx) * bessel_y0(z, kCtx) - bessel_j0(z, kCtx) * bessel_y1(z, kCtx);
        Complex rhs = Complex(2L, 320) / (Complex(Real::pi(320)) * z);
        CHECK(rel_err(lhs, rhs) < 1e-55);
    }
}

TEST_CASE("gauss-legendre nodes integrate polynomials") {
    const auto& [xs, ws] = gauss_legendre(24, 256);
    Real sum(0L, 256), sum2(0L, 256);
    for (size_t i = 0; i < xs.size(); ++i) {
        sum += ws[i];
        sum2 += ws[i] * xs[i] * xs[i];
    }
    CHECK(abs(sum - Real(2L, 256)).to_double() < 1e-70);
    CHECK(abs(sum2 - Real(2L, 256) / 3).to_double() < 1e-70);
}
