#pragma once

#include <gmp.h>

#include <cstdlib>
#include <string>
#include <utility>

#include "stokeslab/error.hpp"

namespace stokeslab {

// Exact rational arithmetic (GMP mpq). Coefficient tables are generated in
// this type whenever the recurrence and seeds are rational, which covers the
// whole built-in catalog.
class Rational {
public:
    Rational() { mpq_init(v_); }
    Rational(long n) {
        mpq_init(v_);
        mpq_set_si(v_, n, 1);
    }
    Rational(long n, long d) {
        if (d == 0) fail(errc::bad_parameter, "rational with zero denominator");
        mpq_init(v_);
        mpq_set_si(v_, n, d);
        mpq_canonicalize(v_);
    }
    // Accepts "n", "n/d" and plain decimal strings such as "-0.25".
    explicit Rational(const std::string& s) {
        mpq_init(v_);
        auto dot = s.find('.');
        if (dot == std::string::npos) {
            if (mpq_set_str(v_, s.c_str(), 10) != 0)
                fail(errc::bad_parameter, "cannot parse rational '" + s + "'");
            mpq_canonicalize(v_);
        } else {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            std::string frac = digits + "/1" + std::string(s.size() - dot - 1, '0');
            if (mpq_set_str(v_, frac.c_str(), 10) != 0)
                fail(errc::bad_parameter, "cannot parse rational '" + s + "'");
            mpq_canonicalize(v_);
        }
    }
    Rational(const Rational& o) {
        mpq_init(v_);
        mpq_set(v_, o.v_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(v_);
        mpq_swap(v_, o.v_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(v_, o.v_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(v_, o.v_);
        return *this;
    }
    ~Rational() { mpq_clear(v_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        mpq_add(r.v_, a.v_, b.v_);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        Rational r;
        mpq_sub(r.v_, a.v_, b.v_);
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        mpq_mul(r.v_, a.v_, b.v_);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (mpq_sgn(b.v_) == 0) fail(errc::bad_parameter, "rational division by zero");
        Rational r;
        mpq_div(r.v_, a.v_, b.v_);
        return r;
    }
    Rational operator-() const {
        Rational r;
        mpq_neg(r.v_, v_);
        return r;
    }
    Rational& operator+=(const Rational& o) {
        mpq_add(v_, v_, o.v_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(v_, v_, o.v_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(v_, v_, o.v_);
        return *this;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_, b.v_) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.v_, b.v_) < 0; }

    int sign() const { return mpq_sgn(v_); }
    bool is_zero() const { return mpq_sgn(v_) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(v_), 1) == 0; }

    // floor as a machine integer; only used for the small exponents m_i.
    long floor_long() const {
        mpz_t q;
        mpz_init(q);
        mpz_fdiv_q(q, mpq_numref(v_), mpq_denref(v_));
        long r = mpz_get_si(q);
        mpz_clear(q);
        return r;
    }

    double to_double() const { return mpq_get_d(v_); }

    std::string to_string() const {
        char* s = mpq_get_str(nullptr, 10, v_);
        std::string out(s);
        std::free(s);
        return out;
    }

    const mpq_t& raw() const { return v_; }

private:
    mpq_t v_;
};

}  // namespace stokeslab
