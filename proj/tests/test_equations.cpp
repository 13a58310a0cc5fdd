#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stokeslab/equations.hpp"

using namespace stokeslab;
using namespace stokeslab::equations;

namespace {

const PrecisionContext kCtx(256, 64);

// dense Laurent tail: coeffs[e] multiplies x^{-e}
struct Laurent {
    std::vector<Rational> c;
    explicit Laurent(size_t n) : c(n, Rational(0)) {}
    Rational at(size_t e) const { return e < c.size() ? c[e] : Rational(0); }
};

Laurent derivative(const Laurent& f) {
    Laurent g(f.c.size() + 1);
    for (size_t e = 0; e < f.c.size(); ++e) g.c[e + 1] = f.c[e] * Rational(-(long)e);
    return g;
}

Laurent shift(const Laurent& f, long s) {  // multiply by x^{-s}
    Laurent g(f.c.size() + s);
    for (size_t e = 0; e < f.c.size(); ++e) g.c[e + s] = f.c[e];
    return g;
}

Laurent product(const Laurent& f, const Laurent& g, size_t keep) {
    Laurent h(keep);
    for (size_t a = 0; a < f.c.size() && a < keep; ++a)
        for (size_t b = 0; b < g.c.size() && a + b < keep; ++b) h.c[a + b] += f.c[a] * g.c[b];
    return h;
}

void add_scaled(Laurent& f, const Laurent& g, const Rational& s) {
    if (f.c.size() < g.c.size()) f.c.resize(g.c.size(), Rational(0));
    for (size_t e = 0; e < g.c.size(); ++e) f.c[e] += g.c[e] * s;
}

Laurent series_of(const CoefficientTable& t, long upto) {
    Laurent f(upto + t.offset + 1);
    for (long k = 0; k <= upto && k <= t.K; ++k) f.c[k + t.offset] = t.a[k];
    return f;
}

double rel_err_c(const Complex& got, std::complex<double> want) {
    return std::abs(got.to_std() - want) / std::abs(want);
}

}  // namespace

TEST_CASE("catalog: toy coefficients are factorials") {
    auto spec = build_catalog_equation("toy");
    auto t = generate_coefficients(spec, 5);
    std::vector<long> want{1, 1, 2, 6, 24, 120};
    for (int k = 0; k <= 5; ++k) CHECK(t.a[k] == Rational(want[k]));
    CHECK(t.offset == 1);
}

TEST_CASE("catalog: airy series matches the classical expansion coefficients") {
    auto spec = build_catalog_equation("airy");
    auto t = generate_coefficients(spec, 4);
    CHECK(t.a[0] == Rational(1));
    CHECK(t.a[1] == Rational(-5, 72));
    CHECK(t.a[2] == Rational(385, 10368));
    CHECK(spec.lambdas.size() == 2);
    CHECK(spec.beta_primes[0] == Rational(7, 6));
}

TEST_CASE("catalog: resonant recurrence, seeds, degeneration at m = 0") {
    std::map<std::string, Rational> p0{{"m", Rational(0)}};
    auto s0 = build_catalog_equation("resonant", p0);
    auto t0 = generate_coefficients(s0, 5);
    CHECK(t0.a[0] == Rational(0));
    Rational fact(1);
    for (long k = 1; k <= 5; ++k) {
        fact *= Rational(k);
        CHECK(t0.a[k] == fact);
    }
    CHECK(t0.a[5] == Rational(120));

    std::map<std::string, Rational> p1{{"m", Rational(1)}};
    auto s1 = build_catalog_equation("resonant", p1);
    auto t1 = generate_coefficients(s1, 2);
    CHECK(t1.a[2] == Rational(1));  // (2*1 - 1) * a_1
}

TEST_CASE("catalog: unknown name") {
    CHECK_THROWS_AS(build_catalog_equation("does-not-exist"), Error);
}

TEST_CASE("scaled coefficients: b_k = k for toy and resonant(0); (r1b) exactly for m=1") {
    auto toy = generate_coefficients(build_catalog_equation("toy"), 40);
    auto b = scaled_coefficients(toy);
    for (long k = 1; k <= 40; ++k) CHECK(b[k] == Rational(k));

    std::map<std::string, Rational> p1{{"m", Rational(1)}};
    auto t1 = generate_coefficients(build_catalog_equation("resonant", p1), 102);
    auto b1 = scaled_coefficients(t1);
    // b_{k+1} = (2 - m^2/k) b_k - b_{k-1}
    for (long k = 2; k <= 100; ++k) {
        Rational want = (Rational(2) - Rational(1, k)) * b1[k] - b1[k - 1];
        CHECK(b1[k + 1] == want);
    }
}

TEST_CASE("recurrence-vs-ODE consistency in exact rational arithmetic") {
    // residual of the truncated series in the defining equation vanishes
    // through x^{-(8+offset)}
    const size_t keep = 14;

    SUBCASE("toy: y' + y - 1/x") {
        auto t = generate_coefficients(build_catalog_equation("toy"), 8);
        Laurent y = series_of(t, 8);
        Laurent r = derivative(y);
        add_scaled(r, y, Rational(1));
        r.c[1] -= Rational(1);
        for (size_t e = 0; e <= 9; ++e) CHECK(r.at(e).is_zero());
        CHECK(!r.at(10).is_zero());
    }

    SUBCASE("resonant(m=2): y'' + 2y' + (1 + m^2/x) y - 1/x") {
        std::map<std::string, Rational> pm{{"m", Rational(2)}};
        auto t = generate_coefficients(build_catalog_equation("resonant", pm), 8);
        Laurent y = series_of(t, 8);
        Laurent dy = derivative(y);
        Laurent r = derivative(dy);
        add_scaled(r, dy, Rational(2));
        add_scaled(r, y, Rational(1));
        add_scaled(r, shift(y, 1), Rational(4));  // m^2 = 4
        r.c[1] -= Rational(1);
        for (size_t e = 0; e <= 8; ++e) CHECK(r.at(e).is_zero());
    }

    SUBCASE("airy reduced frame: u'' - 2u' + (5/36) u / t^2") {
        auto t = generate_coefficients(build_catalog_equation("airy"), 8);
        Laurent u = series_of(t, 8);
        Laurent du = derivative(u);
        Laurent r = derivative(du);
        add_scaled(r, du, Rational(-2));
        add_scaled(r, shift(u, 2), Rational(5, 36));
        for (size_t e = 0; e <= 9; ++e) CHECK(r.at(e).is_zero());
        CHECK(!r.at(10).is_zero());
    }

    SUBCASE("painleve1: h'' + h'/t - h - (3/2) h^2 - 392/(1875 t^4)") {
        auto t = generate_coefficients(build_catalog_equation("painleve1"), 8);
        Laurent h = series_of(t, 8);
        Laurent dh = derivative(h);
        Laurent r = derivative(dh);
        add_scaled(r, shift(dh, 1), Rational(1));
        add_scaled(r, h, Rational(-1));
        add_scaled(r, product(h, h, keep), Rational(-3, 2));
        r.c[4] -= Rational(392, 1875);
        for (size_t e = 0; e <= 8; ++e) CHECK(r.at(e).is_zero());
    }
}

TEST_CASE("factorial-type growth: |a_k| eventually log-convex") {
    for (const char* name : {"toy", "airy"}) {
        auto t = generate_coefficients(build_catalog_equation(name), 64);
        for (long k = 12; k <= 62; ++k) {
            // a_k^2 <= |a_{k-1} a_{k+1}|
            Rational lhs = t.a[k] * t.a[k];
            Rational rhs = t.a[k - 1] * t.a[k + 1];
            if (rhs.sign() < 0) rhs = -rhs;
            CHECK(!(rhs < lhs));
        }
    }
}

TEST_CASE("toy oracle: e^{-1} Ei(1) and leading asymptotics") {
    auto spec = build_catalog_equation("toy");
    Complex y1 = exact_solution(spec, Complex(1L, kCtx.working()), kCtx);
    Real want("0.697174883235066068765478681919551595317175430954369517320055", 320);
    CHECK(abs(y1.re - want).to_double() < 1e-55);
    CHECK(abs(y1.im).to_double() < 1e-55);

    Complex y80 = exact_solution(spec, Complex(80L, kCtx.working()), kCtx);
    CHECK(std::fabs((y80 * Real(80L, y80.prec())).re.to_double() - 1.0) < 2.0 / 80);
}

TEST_CASE("toy oracle satisfies the ODE: |y' + y - 1/x| small") {
    auto spec = build_catalog_equation("toy");
    PrecisionContext hctx(640, 64);
    mpfr_prec_t wp = hctx.working();
    for (double xv : {3.0, 7.5}) {
        // 6th-order central difference for y'
        Real h = Real::pow2(-56, wp);
        Complex x(xv, 0.0, wp);
        auto y = [&](const Real& o) { return exact_solution(spec, Complex(x.re + o, x.im), hctx); };
        Complex d = (y(h) - y(-h)) * Real(45L, wp) - (y(h * 2) - y(h * -2)) * Real(9L, wp) +
                    (y(h * 3) - y(h * -3));
        Complex yp = d / (Real(60L, wp) * h);
        Complex resid = yp + y(Real(0L, wp)) - Complex(Real(1L, wp) / x.re);
        CHECK(abs(resid).to_double() < std::pow(2.0, -hctx.bits / 2.0));
    }
}

TEST_CASE("airy oracle: frozen value, domain guard") {
    auto spec = build_catalog_equation("airy");
    Complex f5 = exact_solution(spec, Complex(5L, kCtx.working()), kCtx);
    Real want("0.98735950073422373559304757213139682557036522497042", 320);
    CHECK(abs(f5.re - want).to_double() < 1e-45);
    CHECK_THROWS_AS(exact_solution(spec, Complex(-4L, kCtx.working()), kCtx), Error);
}

TEST_CASE("airy connection oracle gives S = i") {
    Complex s = airy_stokes_oracle(kCtx);
    CHECK(std::abs(s.to_std() - std::complex<double>(0, 1)) < 1e-15);
}

TEST_CASE("resonant oracle: frozen Bessel variation-of-parameters value at x = 50") {
    std::map<std::string, Rational> pm{{"m", Rational(1)}};
    auto spec = build_catalog_equation("resonant", pm);
    Complex y = exact_solution(spec, Complex(50L, kCtx.working()), kCtx);
    CHECK(std::fabs(y.re.to_double() - 0.0204077679052884088) < 1e-12);
    CHECK(std::fabs(y.im.to_double()) < 1e-12);
}

TEST_CASE("painleve1 has no oracle") {
    auto spec = build_catalog_equation("painleve1");
    CHECK_THROWS_AS(exact_solution(spec, Complex(30L, 256), kCtx), Error);
}

TEST_CASE("custom equations: constant series and factorials") {
    CustomRecurrence geom;
    geom.poly = {{Rational(1)}};  // a_{k+1} = a_k
    geom.seeds = {Rational(1)};
    auto spec = make_custom_equation("ones", geom, 1, {{Rational(1), Rational(0)}}, {});
    auto t = generate_coefficients(spec, 12);
    for (long k = 0; k <= 12; ++k) CHECK(t.a[k] == Rational(1));

    CustomRecurrence fact;
    fact.poly = {{Rational(1), Rational(1)}};  // a_{k+1} = (k+1) a_k
    fact.seeds = {Rational(1)};
    auto spec2 = make_custom_equation("fact", fact, 1, {{Rational(1), Rational(0)}}, {});
    auto t2 = generate_coefficients(spec2, 6);
    CHECK(t2.a[6] == Rational(720));
}

TEST_CASE("nonresonance checker") {
    mpfr_prec_t wp = kCtx.working();
    // (1, i): rationally independent, perpendicular
    auto r1 = check_nonresonance({Complex(1L, wp), Complex::i_unit(wp)}, 4, kCtx);
    CHECK(r1.pass());

    // (1, 2): integer relation 2*l1 - l2 = 0
    auto r2 = check_nonresonance({Complex(1L, wp), Complex(2L, wp)}, 4, kCtx);
    CHECK(!r2.pass_independence);
    CHECK(!r2.witnesses.empty());

    // (1, -1): airy/painleve normalized pair
    auto r3 = check_nonresonance({Complex(1L, wp), Complex(-1L, wp)}, 4, kCtx);
    CHECK(r3.pass());
}

TEST_CASE("prepared-form checker") {
    auto toy = build_catalog_equation("toy");
    CHECK(check_prepared(toy, std::nullopt, kCtx).pass());

    EquationSpec bad = toy;
    bad.lambdas = {{Rational(1, 2), Rational(0)}};
    auto rep = check_prepared(bad, std::nullopt, kCtx);
    CHECK(!rep.pass_n3);

    auto airy = build_catalog_equation("airy");
    auto rep6 = check_prepared(airy, 0.0, kCtx);
    REQUIRE(rep6.n6_selected.size() == 1);
    CHECK(rep6.n6_selected[0] == 0);  // only lambda = +1 decays on the positive axis
}

TEST_CASE("ei_principal approaches +i pi on the upper imaginary axis") {
    Complex v = ei_principal(Complex(0.0, 200.0, 320), kCtx);
    CHECK(rel_err_c(v, std::complex<double>(-0.004378, 3.139179)) < 1e-3);
}
