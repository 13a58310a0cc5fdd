#include "stokeslab/borel.hpp"

#include <algorithm>
#include <cmath>

namespace stokeslab::borel {

namespace {

Complex round_c(const Complex& z, mpfr_prec_t prec) { return {Real(z.re, prec), Real(z.im, prec)}; }

// Closed-form or Pade evaluation away from the singular ray (no side logic).
Complex eval_plain(const BorelFunction& bf, const Complex& p, mpfr_prec_t wp) {
    if (bf.closed_form_geometric) {
        Complex pole = round_c(bf.geom_pole, wp);
        return round_c(bf.geom_scale, wp) / (Complex(1L, wp) - round_c(p, wp) / pole);
    }
    return bf.pade_diag.eval(round_c(p, wp));
}

void check_trust(const BorelFunction& bf, const Complex& p, const PrecisionContext& ctx) {
    if (bf.closed_form_geometric) return;
    mpfr_prec_t wp = ctx.working();
    if (abs(p) > bf.trust_radius)
        fail(errc::outside_trust_region,
             "Borel continuation requested at |p| = " + abs(p).to_string(4) + " beyond trust radius " +
                 bf.trust_radius.to_string(4));
    // cross-validate the diagonal and subdiagonal approximants
    Complex a = bf.pade_diag.eval(round_c(p, wp));
    Complex b = bf.pade_sub.eval(round_c(p, wp));
    Real scale = abs(a) + abs(b) + Real(1L, wp);
    if (abs(a - b) > scale * Real(0.02, wp))
        fail(errc::outside_trust_region, "Pade approximants disagree at |p| = " + abs(p).to_string(4));
}

}  // namespace

BorelFunction borel_transform(const CoefficientTable& table, const EquationSpec& spec,
                              const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working();
    BorelFunction bf;
    bf.source = table.spec_name;
    bf.bits = ctx.bits;

    // b_k = [x^{-(k+1)}-coefficient] / k!
    Real fact(1L, wp);
    for (long k = 0;; ++k) {
        long idx = k + 1 - table.offset;
        if (idx > table.K) break;
        if (k > 0) fact *= Real(k, wp);
        if (idx < 0)
            bf.taylor.push_back(Complex(wp));
        else
            bf.taylor.push_back(Complex(Real(table.a[idx], wp) / fact));
    }

    // singularity lattice from the spec's Stokes points. The toy Borel
    // transform is a single simple pole; other entries get the first few
    // lattice multiples of each recorded point.
    Real huge = Real::pow2(400, wp);
    bf.radius = huge;
    bf.entire = spec.stokes_points.empty();
    const bool pole_only = spec.kind == equations::EquationKind::toy;
    for (const auto& sp : spec.stokes_points) {
        Complex loc = sp.location_c(wp);
        Real mod = abs(loc);
        if (mod < bf.radius) bf.radius = mod;
        for (int l = 1; l <= (pole_only ? 1 : 3); ++l) bf.singularities.push_back(loc * Real(l, wp));
    }

    if (pole_only) {
        bf.closed_form_geometric = true;
        bf.geom_pole = spec.stokes_points[0].location_c(wp);
        bf.geom_scale = bf.taylor.empty() ? Complex(1L, wp) : bf.taylor[0];
    }

    // rational continuation
    if (bf.taylor.size() < 5 && !bf.closed_form_geometric)
        fail(errc::insufficient_data, "Borel transform needs at least 5 Taylor coefficients");
    int half = static_cast<int>(bf.taylor.size() - 1) / 2;
    int m = std::min(half, 60);
    if (m >= 2) {
        bf.pade_diag = numerics::pade(bf.taylor, m, m, ctx);
        bf.pade_sub = numerics::pade(bf.taylor, m - 1, m, ctx);
    }

    if (bf.entire) {
        bf.trust_radius = Real(std::max(2, m / 2), wp);  // validated by approximant agreement
    } else {
        // 1.5 x the second singularity distance
        Real second = huge;
        for (const auto& s : bf.singularities) {
            Real mod = abs(s);
            if (mod > bf.radius && mod < second) second = mod;
        }
        if (second == huge) second = bf.radius * 2;
        bf.trust_radius = second * Real(1.5, wp);
    }
    return bf;
}

Complex continue_borel(const BorelFunction& bf, const Complex& p, Side side,
                       const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working();
    Complex pw = round_c(p, wp);

    for (const auto& s : bf.singularities)
        if (abs(pw - round_c(s, wp)) < bf.radius * Real(0.02, wp))
            fail(errc::at_singularity, "Borel continuation at a recorded singular point");

    if (!bf.closed_form_geometric) check_trust(bf, pw, ctx);

    // Determine whether p sits on (or hugs) a singular ray beyond the first
    // singular point of that ray.
    bool on_cut = false;
    Complex ray_dir(wp);
    for (const auto& s : bf.singularities) {
        Complex sw = round_c(s, wp);
        Real mod = abs(sw);
        Complex dir = sw / mod;
        // component of p along/perpendicular to the ray
        Complex rel = pw / dir;
        if (rel.re > mod * Real(0.999, wp) && abs(rel.im) < mod * Real(0.01, wp)) {
            on_cut = true;
            ray_dir = dir;
            break;
        }
    }
    if (!on_cut) return eval_plain(bf, pw, wp);

    // boundary value: Richardson-extrapolate f(p +- i delta dir) as delta -> 0
    Real base_delta(0.05, wp);
    base_delta = base_delta * abs(round_c(bf.singularities.front(), wp));
    Complex perp = Complex::i_unit(wp) * ray_dir;
    if (side == Side::below) perp = -perp;
    std::vector<Complex> f;
    std::vector<Real> d;
    for (int j = 0; j < 3; ++j) {
        Real delta = base_delta / Real(1L << j, wp);
        f.push_back(eval_plain(bf, pw + perp * delta, wp));
        d.push_back(delta);
    }
    // quadratic extrapolation to delta = 0 (Neville tableau)
    for (int lev = 1; lev < 3; ++lev)
        for (int i = 0; i + lev < 3; ++i)
            f[i] = (f[i + 1] * d[i] - f[i] * d[i + lev]) / (d[i] - d[i + lev]);
    return f[0];
}

namespace {

// displaced polyline + terminal ray for a lateral Laplace contour
numerics::Contour lateral_contour(const BorelFunction& bf, const Complex& x, Side side,
                                  mpfr_prec_t wp) {
    Real theta = -arg(round_c(x, wp));
    Complex d = Complex::polar(Real(1L, wp), theta);
    Real delta = bf.entire ? Real(0L, wp) : Real(0.05, wp) * bf.radius;
    if (side == Side::below) delta = -delta;
    Complex off = Complex::i_unit(wp) * d * delta;

    numerics::Contour c;
    c.vertices.push_back(Complex(wp));
    if (!bf.entire) {
        Real run(0L, wp);
        for (const auto& s : bf.singularities) {
            Complex rel = round_c(s, wp) / d;
            if (abs(rel.im) < abs(rel) * Real(0.01, wp) && rel.re > Real(0L, wp) && rel.re > run)
                run = rel.re;
        }
        if (run.is_zero()) {
            // no singularity on this ray: straight ray from the origin
            c.has_ray = true;
            c.ray_angle = theta;
            return c;
        }
        c.vertices.push_back(d * (bf.radius * Real(0.2, wp)) + off);
        c.vertices.push_back(d * (run + bf.radius * Real(0.5, wp)) + off);
        c.vertices.push_back(d * (run + bf.radius));
    }
    c.has_ray = true;
    c.ray_angle = theta;
    return c;
}

Real lateral_tolerance(const Complex& x, const PrecisionContext& ctx) {
    // absolute x-space tolerance: 2^{-bits+64} relative to the leading scale 1/|x|
    Real t = Real::pow2(-ctx.bits + 64, ctx.working());
    return t / (abs(x) + Real(1L, ctx.working()));
}

}  // namespace

Complex lateral_laplace(const BorelFunction& bf, const Complex& x, Side side,
                        const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working();
    Complex xw = round_c(x, wp);
    if (abs(xw) < Real(2L, wp))
        fail(errc::bad_parameter, "lateral Laplace sums need |x| >= 2 (growth-rate margin)");

    auto c = lateral_contour(bf, xw, side, wp);
    auto f = [&](const Complex& p) { return eval_plain(bf, p, wp); };
    if (!bf.closed_form_geometric && !bf.entire) {
        // keep quadrature nodes inside the certified region
        Real cap = bf.trust_radius;
        for (const auto& v : c.vertices)
            if (abs(v) > cap)
                fail(errc::outside_trust_region, "lateral contour leaves the Pade trust region");
    }
    return numerics::quad_laplace(f, c, xw, ctx, lateral_tolerance(xw, ctx));
}

Complex averaged_sum(const BorelFunction& bf, const Complex& x, const AverageSpec& avg,
                     const PrecisionContext& ctx) {
    if (avg.depth < 1) fail(errc::bad_parameter, "average depth must be >= 1");
    if (avg.alpha < 0.0 || avg.alpha > 1.0) fail(errc::bad_parameter, "alpha must lie in [0,1]");
    mpfr_prec_t wp = ctx.working();
    Complex la = lateral_laplace(bf, x, Side::above, ctx);
    Complex lb = lateral_laplace(bf, x, Side::below, ctx);
    Real alpha(avg.alpha, wp);
    Complex result = la * (Real(1L, wp) - alpha) + lb * alpha;
    if (avg.depth == 1) return result;

    if (!bf.closed_form_geometric)
        fail(errc::unsupported_depth,
             "multi-crossing averages need a closed-form continuation (first-singularity "
             "truncation otherwise)");

    // Weighted multi-crossing combination: weight 2^{-j} for a contour turning
    // around the (j+1)-th singular point; the j-th term is L^- minus the
    // single-crossing contour passing between j lambda and (j+1) lambda.
    Complex xw = round_c(x, wp);
    Real theta = -arg(xw);
    Complex d = Complex::polar(Real(1L, wp), theta);
    Real delta = Real(0.05, wp) * bf.radius;
    Complex off = Complex::i_unit(wp) * d * delta;
    auto f = [&](const Complex& p) { return eval_plain(bf, p, wp); };
    Real tol = lateral_tolerance(xw, ctx);
    Real half(0.5, wp);
    Real weight = half;
    for (int j = 2; j <= avg.depth; ++j) {
        weight *= half;
        Real cross = abs(bf.geom_pole) * (Real(j - 1, wp) + half);
        numerics::Contour cj;
        cj.vertices.push_back(Complex(wp));
        cj.vertices.push_back(d * (bf.radius * Real(0.2, wp)) - off);
        cj.vertices.push_back(d * cross - off);
        cj.vertices.push_back(d * cross + off);
        cj.has_ray = true;
        cj.ray_angle = theta;
        Complex l_cross = numerics::quad_laplace(f, cj, xw, ctx, tol);
        result += (lb - l_cross) * weight;
    }
    return result;
}

JumpCheckReport borel_jump_check(const BorelFunction& bf, const EquationSpec& spec,
                                 const Complex& s_estimate, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working();
    JumpCheckReport rep;
    rep.model = s_estimate;

    if (bf.entire) {
        rep.mode = JumpCheckReport::Mode::entire;
        PrecisionContext pctx(std::max<long>(ctx.bits, 64), ctx.guard_bits);
        double worst = 0.0;
        for (double pr : {0.8, 1.2, 1.6}) {
            Complex p(pr, 0.0, wp);
            Complex up = continue_borel(bf, p, Side::above, pctx);
            Complex dn = continue_borel(bf, p, Side::below, pctx);
            worst = std::max(worst, abs(up - dn).to_double() / (abs(up).to_double() + 1e-30));
        }
        rep.max_jump = worst;
        rep.pass = worst < 1e-8;
        return rep;
    }

    if (!spec.stokes_points.empty() && !spec.stokes_points[0].beta_asym.is_integer())
        fail(errc::bad_parameter,
             "jump check implemented for the integer-exponent (pole + log) singularity type");

    // residue route: (lambda - p) Y(p) -> S / (2 pi i) as p -> lambda from the left,
    // with a z log z correction from the logarithmic part
    Complex lam = spec.stokes_points[0].location_c(wp);
    std::vector<double> zs;
    for (int i = 0; i < 12; ++i) zs.push_back(0.05 + 0.25 * i / 11.0);

    // complex least squares for  g(z) = c0 + c1 z ln z + c2 z
    std::complex<double> sum_g[3] = {};
    double gram[3][3] = {};
    auto basis = [](double z, int j) {
        return j == 0 ? 1.0 : (j == 1 ? z * std::log(z) : z);
    };
    for (double z : zs) {
        Complex p = lam * Real(1.0 - z, wp);
        Complex y = eval_plain(bf, p, wp);
        Complex val = (lam - p) * y;  // -> S/(2 pi i)
        std::complex<double> v = val.to_std();
        for (int j = 0; j < 3; ++j) {
            sum_g[j] += v * basis(z, j);
            for (int k = 0; k < 3; ++k) gram[j][k] += basis(z, j) * basis(z, k);
        }
    }
    // solve the 3x3 normal equations
    std::complex<double> rhs[3] = {sum_g[0], sum_g[1], sum_g[2]};
    double A[3][3];
    std::copy(&gram[0][0], &gram[0][0] + 9, &A[0][0]);
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (int r = col + 1; r < 3; ++r) {
            double fpiv = A[r][col] / A[col][col];
            for (int cc = col; cc < 3; ++cc) A[r][cc] -= fpiv * A[col][cc];
            rhs[r] -= fpiv * rhs[col];
        }
    }
    for (int r = 2; r >= 0; --r) {
        for (int cc = r + 1; cc < 3; ++cc) rhs[r] -= A[r][cc] * rhs[cc];
        rhs[r] /= A[r][r];
    }
    std::complex<double> c0 = rhs[0];
    std::complex<double> s_meas = c0 * std::complex<double>(0, 2 * M_PI);
    rep.measured = Complex(Real(s_meas.real(), wp), Real(s_meas.imag(), wp));
    double denom = std::abs(s_estimate.to_std());
    rep.rel_deviation = denom > 0 ? std::abs(s_meas - s_estimate.to_std()) / denom : 0.0;
    rep.pass = rep.rel_deviation < 0.10;
    return rep;
}

}  // namespace stokeslab::borel
