#include "stokeslab/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace stokeslab::numerics {

namespace {

Complex round_c(const Complex& z, mpfr_prec_t prec) { return {Real(z.re, prec), Real(z.im, prec)}; }

Complex sin_c(const Complex& z) {
    return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}

// ---- Spouge gamma ---------------------------------------------------------

struct SpougeKey {
    long a;
    long prec;
    bool operator<(const SpougeKey& o) const { return a != o.a ? a < o.a : prec < o.prec; }
};

const std::vector<Real>& spouge_coeffs(long a, mpfr_prec_t prec) {
    static std::map<SpougeKey, std::vector<Real>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({a, prec});
    if (it != cache.end()) return it->second;

    mpfr_prec_t wp = prec + 64;
    std::vector<Real> c;
    c.reserve(a);
    c.push_back(sqrt(Real::pi(wp) * 2));  // c0 = sqrt(2 pi)
    Real fact(1L, wp);                    // (k-1)!
    for (long k = 1; k < a; ++k) {
        if (k > 1) fact *= Real(k - 1, wp);
        Real ak(a - k, wp);
        Real ck = pow(ak, Real(k, wp) - Real(1L, wp) / 2) * exp(ak) / fact;
        if (k % 2 == 0) ck = -ck;
        c.push_back(ck);
    }
    auto [pos, ok] = cache.emplace(SpougeKey{a, prec}, std::move(c));
    return pos->second;
}

Complex gamma_spouge(const Complex& z, mpfr_prec_t wp) {
    // a sized so the Spouge bound (2 pi)^{-(a+1/2)} sits below 2^{-wp}.
    // The alternating sum cancels more strongly as |z| grows, so the working
    // precision is boosted until the measured loss fits the budget.
    long a = static_cast<long>(wp * 0.381) + 8;
    mpfr_prec_t cur = wp + 64;
    for (int attempt = 0; attempt < 4; ++attempt) {
        const auto& c = spouge_coeffs(a, cur);
        Complex zz = round_c(z, cur) - Complex(1L, cur);
        Complex acc(c[0]);
        Real absum(c[0]);
        for (long k = 1; k < a; ++k) {
            Complex t = Complex(c[k]) / (zz + Complex(k, cur));
            acc += t;
            absum += abs(t);
        }
        long loss = mpfr_get_exp(absum.raw()) - mpfr_get_exp(abs(acc).raw());
        if (loss < 0) loss = 0;
        if (static_cast<mpfr_prec_t>(wp + loss + 32) <= cur || attempt == 3) {
            Complex base = zz + Complex(a, cur);
            Complex expo = zz + Complex(Real(1L, cur) / 2);
            return round_c(pow(base, expo) * exp(-base) * acc, wp);
        }
        cur = wp + 64 + static_cast<mpfr_prec_t>(loss) + 64;
    }
    fail(errc::non_convergence, "spouge evaluation failed");
}

// ---- linear solve (partial pivoting) ---------------------------------------

// Solves A q = b in place; returns false if the best pivot falls below eps.
bool solve_complex(std::vector<std::vector<Complex>>& A, std::vector<Complex>& b, const Real& eps) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int best = col;
        Real best_mag = abs(A[col][col]);
        for (int r = col + 1; r < n; ++r) {
            Real mag = abs(A[r][col]);
            if (mag > best_mag) {
                best_mag = mag;
                best = r;
            }
        }
        if (!(best_mag > eps)) return false;
        std::swap(A[col], A[best]);
        std::swap(b[col], b[best]);
        for (int r = col + 1; r < n; ++r) {
            Complex f = A[r][col] / A[col][col];
            for (int cc = col; cc < n; ++cc) A[r][cc] -= f * A[col][cc];
            b[r] -= f * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        Complex s = b[r];
        for (int cc = r + 1; cc < n; ++cc) s -= A[r][cc] * b[cc];
        b[r] = s / A[r][r];
    }
    return true;
}

bool solve_rational(std::vector<std::vector<Rational>>& A, std::vector<Rational>& b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!A[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return false;
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < n; ++r) {
            if (A[r][col].is_zero()) continue;
            Rational f = A[r][col] / A[col][col];
            for (int cc = col; cc < n; ++cc) A[r][cc] -= f * A[col][cc];
            b[r] -= f * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        Rational s = b[r];
        for (int cc = r + 1; cc < n; ++cc) s -= A[r][cc] * b[cc];
        b[r] = s / A[r][r];
    }
    return true;
}

}  // namespace

Complex gamma_complex(const Complex& z, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working();
    Complex zw = round_c(z, wp);

    // pole at nonpositive integers
    Real tol = Real::pow2(-(ctx.bits / 2), wp);
    if (abs(zw.im) < tol) {
        Real nearest = floor(zw.re + Real(1L, wp) / 2);
        if (nearest.sign() <= 0 && abs(zw.re - nearest) < tol)
            fail(errc::pole_of_gamma, "gamma evaluated at nonpositive integer " + nearest.to_string(6));
    }

    if (zw.re < Real(1L, wp) / 2) {
        // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        Real pi = Real::pi(wp);
        Complex s = sin_c(zw * pi);
        Complex g = gamma_spouge(Complex(1L, wp) - zw, wp);
        return Complex(pi) / (s * g);
    }
    return gamma_spouge(zw, wp);
}

Complex erf_complex(const Complex& z, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working();
    Complex zw = round_c(z, wp);
    double az = abs(zw).to_double();
    double rez = zw.re.to_double();

    if (az > 4.0 && std::fabs(rez) >= std::fabs(zw.im.to_double())) {
        // continued fraction for erfc, reflected into Re z > 0
        bool flip = rez < 0;
        Complex w = flip ? -zw : zw;
        Complex tiny(Real::pow2(-wp - 200, wp), Real(0L, wp));
        Complex f = w, C = w, D(wp);
        Real one(1L, wp);
        Real eps = Real::pow2(-wp + 4, wp);
        bool converged = false;
        for (long j = 1; j < 4 * wp; ++j) {
            Real aj = Real(j, wp) / 2;
            D = Complex(w) + Complex(aj) * D;
            if (abs(D) < tiny.re) D = tiny;
            C = w + Complex(aj) / C;
            if (abs(C) < tiny.re) C = tiny;
            D = Complex(1L, wp) / D;
            Complex delta = C * D;
            f = f * delta;
            if (abs(delta - Complex(1L, wp)) < eps) {
                converged = true;
                break;
            }
        }
        if (!converged) fail(errc::non_convergence, "erfc continued fraction did not converge");
        Complex erfc = exp(-(w * w)) / (sqrt(Real::pi(wp)) * f);
        Complex r = Complex(1L, wp) - erfc;
        return flip ? -r : r;
    }

    // Maclaurin with cancellation guard: losses ~ 1.443 * min(|z|^2, 2 Re(z)^2)
    double loss = std::min(az * az, 2.0 * rez * rez);
    mpfr_prec_t gp = wp + static_cast<mpfr_prec_t>(1.5 * loss) + 48;
    Complex zg = round_c(zw, gp);
    Complex z2 = zg * zg;
    Complex term = zg;  // z^(2k+1)/k!
    Complex sum(gp);
    Real eps = Real::pow2(-wp - 32, gp);
    for (long k = 0; k < 8 * gp; ++k) {
        Complex add = term / Real(2 * k + 1, gp);
        sum += add;
        term = term * (-(z2)) / Real(k + 1, gp);
        if (abs(term) < eps * (abs(sum) + Real(1L, gp)) && k > 4) break;
    }
    Complex r = sum * (Real(2L, gp) / sqrt(Real::pi(gp)));
    return round_c(r, wp);
}

Complex richardson(const std::vector<Complex>& seq, long r0, int order) {
    if (order < 0) fail(errc::bad_parameter, "richardson order must be >= 0");
    if (static_cast<long>(seq.size()) < order + 2)
        fail(errc::insufficient_data, "richardson needs at least order+2 sequence entries");
    mpfr_prec_t wp = 64;
    for (const auto& s : seq) wp = std::max(wp, s.prec());

    const long i0 = static_cast<long>(seq.size()) - (order + 1);
    const long n0 = r0 + i0;
    Complex acc(wp);
    Real ofact(1L, wp);
    for (int j = 2; j <= order; ++j) ofact *= Real(j, wp);
    Real binom(1L, wp);
    for (int k = 0; k <= order; ++k) {
        if (k > 0) binom = binom * Real(order - k + 1, wp) / Real(k, wp);
        Real w = binom * pow_si(Real(n0 + k, wp), order) / ofact;
        if ((order + k) % 2 != 0) w = -w;
        acc += seq[i0 + k] * w;
    }
    return acc;
}

Complex PadeApproximant::eval(const Complex& p) const {
    mpfr_prec_t wp = std::max(p.prec(), num.empty() ? 64 : num[0].prec());
    Complex np(wp), dp(wp);
    for (int i = m; i >= 0; --i) np = np * p + num[i];
    for (int i = n; i >= 0; --i) dp = dp * p + den[i];
    return np / dp;
}

PadeApproximant pade(const std::vector<Complex>& taylor, int m, int n, const PrecisionContext& ctx) {
    if (static_cast<int>(taylor.size()) < m + n + 1)
        fail(errc::insufficient_data, "pade needs m+n+1 Taylor coefficients");
    mpfr_prec_t wp = ctx.working();
    auto coef = [&](int k) -> Complex {
        if (k < 0 || k >= static_cast<int>(taylor.size())) return Complex(wp);
        return round_c(taylor[k], wp);
    };

    int reductions = 0;
    while (true) {
        PadeApproximant ap;
        ap.m = m;
        ap.n = n;
        ap.reductions = reductions;
        if (n == 0) {
            for (int i = 0; i <= m; ++i) ap.num.push_back(coef(i));
            ap.den.push_back(Complex(1L, wp));
            return ap;
        }
        std::vector<std::vector<Complex>> A(n, std::vector<Complex>(n, Complex(wp)));
        std::vector<Complex> b(n, Complex(wp));
        Real scale(0L, wp);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                A[i][j] = coef(m + 1 + i - 1 - j);
                Real mag = abs(A[i][j]);
                if (mag > scale) scale = mag;
            }
            b[i] = -coef(m + 1 + i);
        }
        Real eps = scale * Real::pow2(-ctx.bits / 2, wp);
        if (eps.is_zero()) eps = Real::pow2(-ctx.bits, wp);
        auto A2 = A;
        auto q = b;
        if (solve_complex(A2, q, eps)) {
            ap.den.push_back(Complex(1L, wp));
            for (int j = 0; j < n; ++j) ap.den.push_back(q[j]);
            for (int i = 0; i <= m; ++i) {
                Complex s = coef(i);
                for (int j = 1; j <= std::min(i, n); ++j) s += ap.den[j] * coef(i - j);
                ap.num.push_back(s);
            }
            return ap;
        }
        if (m == 0 || n == 0)
            fail(errc::singular_pade, "degenerate Pade table could not be reduced further");
        --m;
        --n;
        ++reductions;
    }
}

RationalPade pade_exact(const std::vector<Rational>& taylor, int m, int n) {
    if (static_cast<int>(taylor.size()) < m + n + 1)
        fail(errc::insufficient_data, "pade needs m+n+1 Taylor coefficients");
    auto coef = [&](int k) -> Rational {
        if (k < 0 || k >= static_cast<int>(taylor.size())) return Rational(0);
        return taylor[k];
    };
    int reductions = 0;
    while (true) {
        RationalPade ap;
        ap.m = m;
        ap.n = n;
        ap.reductions = reductions;
        if (n == 0) {
            for (int i = 0; i <= m; ++i) ap.num.push_back(coef(i));
            ap.den.push_back(Rational(1));
            return ap;
        }
        std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n));
        std::vector<Rational> b(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) A[i][j] = coef(m + 1 + i - 1 - j);
            b[i] = -coef(m + 1 + i);
        }
        if (solve_rational(A, b)) {
            ap.den.push_back(Rational(1));
            for (int j = 0; j < n; ++j) ap.den.push_back(b[j]);
            for (int i = 0; i <= m; ++i) {
                Rational s = coef(i);
                for (int j = 1; j <= std::min(i, n); ++j) s += ap.den[j] * coef(i - j);
                ap.num.push_back(s);
            }
            return ap;
        }
        if (m == 0 || n == 0)
            fail(errc::singular_pade, "degenerate Pade table could not be reduced further");
        --m;
        --n;
        ++reductions;
    }
}

// ---- Gauss-Legendre --------------------------------------------------------

const std::pair<std::vector<Real>, std::vector<Real>>& gauss_legendre(int n, mpfr_prec_t prec) {
    static std::map<std::pair<int, long>, std::pair<std::vector<Real>, std::vector<Real>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, static_cast<long>(prec));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    mpfr_prec_t wp = prec + 32;
    std::vector<Real> xs, ws;
    for (int i = 1; i <= n; ++i) {
        double seed = std::cos(M_PI * (i - 0.25) / (n + 0.5));
        Real x(seed, wp);
        Real dp(0L, wp);
        for (int it2 = 0; it2 < 200; ++it2) {
            // Legendre recurrence
            Real p0(1L, wp), p1 = x;
            for (int k = 2; k <= n; ++k) {
                Real p2 = (x * p1 * (2 * k - 1) - p0 * (k - 1)) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = (x * p1 - p0) * n / (x * x - 1);
            Real dx = p1 / dp;
            x -= dx;
            if (abs(dx) < Real::pow2(-prec - 8, wp)) break;
        }
        // final derivative at the converged node
        Real p0(1L, wp), p1 = x;
        for (int k = 2; k <= n; ++k) {
            Real p2 = (x * p1 * (2 * k - 1) - p0 * (k - 1)) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = (x * p1 - p0) * n / (x * x - 1);
        xs.push_back(Real(x, prec));
        ws.push_back(Real(Real(2L, wp) / ((Real(1L, wp) - x * x) * dp * dp), prec));
    }
    auto [pos, ok] = cache.emplace(key, std::make_pair(std::move(xs), std::move(ws)));
    return pos->second;
}

namespace {

constexpr int kGlNodes = 24;

Complex gl_segment(const std::function<Complex(const Complex&)>& g, const Complex& a, const Complex& b,
                   mpfr_prec_t wp) {
    const auto& [xs, ws] = gauss_legendre(kGlNodes, wp);
    Complex mid = (a + b) / Real(2L, wp);
    Complex half = (b - a) / Real(2L, wp);
    Complex acc(wp);
    for (int i = 0; i < kGlNodes; ++i) acc += g(mid + half * xs[i]) * ws[i];
    return acc * half;
}

// adaptive bisection of one straight segment
Complex adaptive_segment(const std::function<Complex(const Complex&)>& g, const Complex& a,
                         const Complex& b, const Real& tol, mpfr_prec_t wp, int depth) {
    Complex whole = gl_segment(g, a, b, wp);
    Complex mid = (a + b) / Real(2L, wp);
    Complex left = gl_segment(g, a, mid, wp);
    Complex right = gl_segment(g, mid, b, wp);
    Complex refined = left + right;
    if (abs(whole - refined) <= tol) return refined;
    if (depth >= 48) fail(errc::quad_nonconvergence, "adaptive quadrature exceeded depth limit");
    Real half_tol = tol / 2;
    return adaptive_segment(g, a, mid, half_tol, wp, depth + 1) +
           adaptive_segment(g, mid, b, half_tol, wp, depth + 1);
}

}  // namespace

Complex quad_laplace(const std::function<Complex(const Complex&)>& f, const Contour& c,
                     const Complex& x, const PrecisionContext& ctx, const Real& abs_tol) {
    if (c.vertices.empty()) fail(errc::bad_parameter, "contour needs at least one vertex");
    mpfr_prec_t wp = ctx.working();
    Complex xw = round_c(x, wp);
    auto g = [&](const Complex& p) { return f(p) * exp(-(xw * p)); };

    Real tol(abs_tol, wp);
    Complex total(wp);
    const size_t nseg = c.vertices.size() - 1;
    for (size_t s = 0; s < nseg; ++s)
        total += adaptive_segment(g, round_c(c.vertices[s], wp), round_c(c.vertices[s + 1], wp),
                                  tol / Real(2 * static_cast<long>(nseg ? nseg : 1), wp), wp, 0);

    if (c.has_ray) {
        Complex d = Complex::polar(Real(1L, wp), Real(c.ray_angle, wp));
        Real decay = (xw * d).re;
        if (!(decay > Real(0L, wp)))
            fail(errc::nondecaying_ray, "Re(x * ray direction) <= 0, Laplace ray does not decay");
        Real chunk_len = Real(3L, wp) / decay;
        if (chunk_len < Real(0.25, wp)) chunk_len = Real(0.25, wp);
        Complex p0 = round_c(c.vertices.back(), wp);
        Real ray_tol = tol / 4;
        for (long k = 0; k < 100000; ++k) {
            Complex p1 = p0 + d * chunk_len;
            total += adaptive_segment(g, p0, p1, ray_tol, wp, 0);
            p0 = p1;
            ray_tol = ray_tol / 2;
            // integrand bound over the remaining tail, compared against tol/100
            Real bound = abs(f(p1)) * exp(-(xw * p1).re) / decay;
            if (bound < tol / 100) return total;
        }
        fail(errc::quad_nonconvergence, "Laplace ray truncation not reached");
    }
    return total;
}

// ---- Bessel functions ------------------------------------------------------

namespace {

mpfr_prec_t bessel_guard(const Complex& z, mpfr_prec_t wp) {
    double az = abs(z).to_double();
    return wp + static_cast<mpfr_prec_t>(1.5 * az) + 48;
}

}  // namespace

Complex bessel_j0(const Complex& z, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working();
    mpfr_prec_t gp = bessel_guard(z, wp);
    Complex zw = round_c(z, gp);
    Complex q = -(zw * zw) / Real(4L, gp);
    Complex term(1L, gp), sum(1L, gp);
    Real eps = Real::pow2(-wp - 32, gp);
    for (long k = 1; k < 4 * gp; ++k) {
        term = term * q / Real(k, gp) / Real(k, gp);
        sum += term;
        if (abs(term) < eps * (abs(sum) + Real(1L, gp)) && k > 4) break;
    }
    return round_c(sum, wp);
}

Complex bessel_j1(const Complex& z, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working();
    mpfr_prec_t gp = bessel_guard(z, wp);
    Complex zw = round_c(z, gp);
    Complex q = -(zw * zw) / Real(4L, gp);
    Complex term = zw / Real(2L, gp);
    Complex sum = term;
    Real eps = Real::pow2(-wp - 32, gp);
    for (long k = 1; k < 4 * gp; ++k) {
        term = term * q / Real(k, gp) / Real(k + 1, gp);
        sum += term;
        if (abs(term) < eps * (abs(sum) + Real(1L, gp)) && k > 4) break;
    }
    return round_c(sum, wp);
}

Complex bessel_y0(const Complex& z, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working();
    mpfr_prec_t gp = bessel_guard(z, wp);
    Complex zw = round_c(z, gp);
    Real pi = Real::pi(gp);
    Real g = Real::euler_gamma(gp);
    PrecisionContext gctx(gp, 32);
    Complex j0 = round_c(bessel_j0(zw, gctx), gp);

    // (2/pi) [ (ln(z/2)+gamma) J0(z) + sum_{k>=1} (-1)^{k+1} H_k (z^2/4)^k / (k!)^2 ]
    Complex q = (zw * zw) / Real(4L, gp);
    Complex term(1L, gp);
    Complex sum(gp);
    Real Hk(0L, gp);
    Real eps = Real::pow2(-wp - 32, gp);
    for (long k = 1; k < 4 * gp; ++k) {
        term = term * q / Real(k, gp) / Real(k, gp);
        Hk += Real(1L, gp) / Real(k, gp);
        Complex add = term * Hk;
        if (k % 2 == 0) add = -add;
        sum += add;
        if (abs(term) * (Hk + Real(1L, gp)) < eps * (abs(sum) + Real(1L, gp)) && k > 4) break;
    }
    Complex r = ((log(zw / Real(2L, gp)) + Complex(g)) * j0 + sum) * (Real(2L, gp) / pi);
    return round_c(r, wp);
}

Complex bessel_y1(const Complex& z, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working();
    mpfr_prec_t gp = bessel_guard(z, wp);
    Complex zw = round_c(z, gp);
    Real pi = Real::pi(gp);
    PrecisionContext gctx(gp, 32);
    Complex j1 = round_c(bessel_j1(zw, gctx), gp);

    // Y1(z) = (2/pi) ln(z/2) J1(z) - 2/(pi z)
    //         - (1/pi) sum_{k>=0} (psi(k+1)+psi(k+2)) (-1)^k (z/2)^{2k+1} / (k!(k+1)!)
    Complex q = -(zw * zw) / Real(4L, gp);
    Complex term = zw / Real(2L, gp);
    Complex sum(gp);
    Real g = Real::euler_gamma(gp);
    Real Hk(0L, gp), Hk1(1L, gp);
    Real eps = Real::pow2(-wp - 32, gp);
    for (long k = 0; k < 4 * gp; ++k) {
        Real psis = Hk + Hk1 - g * 2;
        sum += term * psis;
        term = term * q / Real(k + 1, gp) / Real(k + 2, gp);
        Hk += Real(1L, gp) / Real(k + 1, gp);
        Hk1 += Real(1L, gp) / Real(k + 2, gp);
        if (abs(term) * (abs(psis) + Real(3L, gp)) < eps * (abs(sum) + Real(1L, gp)) && k > 4) break;
    }
    Complex r = log(zw / Real(2L, gp)) * j1 * (Real(2L, gp) / pi) -
                Complex(Real(2L, gp)) / (Complex(pi) * zw) - sum / pi;
    return round_c(r, wp);
}

}  // namespace stokeslab::numerics
