#pragma once

#include <complex>

#include "stokeslab/bigfloat.hpp"

namespace stokeslab {

// Complex value over Real. MPC is not assumed present; the handful of
// elementary functions the toolkit needs are spelled out here.
struct Complex {
    Real re, im;

    explicit Complex(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(long r, mpfr_prec_t prec) : re(r, prec), im(0L, prec) {}
    Complex(int r, mpfr_prec_t prec) : re(static_cast<long>(r), prec), im(0L, prec) {}
    Complex(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}
    explicit Complex(const Real& r) : re(r), im(0L, r.prec()) {}

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_finite() const { return re.is_finite() && im.is_finite(); }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    Complex operator-() const { return {-re, -im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
    friend Complex operator*(const Real& s, const Complex& a) { return a * s; }
    friend Complex operator*(const Complex& a, long s) { return {a.re * s, a.im * s}; }
    friend Complex operator*(const Complex& a, int s) { return a * static_cast<long>(s); }
    friend Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }
    friend Complex operator/(const Complex& a, long s) { return {a.re / s, a.im / s}; }
    friend Complex operator/(const Complex& a, int s) { return a / static_cast<long>(s); }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }

    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

    friend Complex conj(const Complex& a) { return {a.re, -a.im}; }
    friend Real abs(const Complex& a) { return hypot(a.re, a.im); }
    friend Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }
    friend Real arg(const Complex& a) { return atan2(a.im, a.re); }

    friend Complex exp(const Complex& a) {
        Real m = exp(a.re);
        return {m * cos(a.im), m * sin(a.im)};
    }
    // principal branch
    friend Complex log(const Complex& a) { return {log(abs(a)), arg(a)}; }
    friend Complex sqrt(const Complex& a) {
        if (a.is_zero()) return Complex(a.prec());
        Real m = sqrt(abs(a));
        Real half_arg = arg(a) / 2;
        return {m * cos(half_arg), m * sin(half_arg)};
    }
    // principal power z^w for real w
    friend Complex pow(const Complex& a, const Real& w) {
        if (a.is_zero()) return Complex(a.prec());
        Real m = pow(abs(a), w);
        Real th = arg(a) * w;
        return {m * cos(th), m * sin(th)};
    }
    friend Complex pow(const Complex& a, const Complex& w) { return exp(w * log(a)); }

    static Complex i_unit(mpfr_prec_t prec) { return {Real(0L, prec), Real(1L, prec)}; }
    static Complex polar(const Real& r, const Real& theta) { return {r * cos(theta), r * sin(theta)}; }

    std::string to_string(int digits = 0) const {
        return re.to_string(digits) + (im.sign() < 0 ? " - " : " + ") + abs(im).to_string(digits) + "i";
    }

    std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }
};

}  // namespace stokeslab
