#include "stokeslab/stokes.hpp"

#include <cmath>

#include "stokeslab/numerics.hpp"
#include "stokeslab/truncation.hpp"

namespace stokeslab::stokes {

namespace {

Complex round_c(const Complex& z, mpfr_prec_t prec) { return {Real(z.re, prec), Real(z.im, prec)}; }

}  // namespace

StokesEstimate extract_stokes(const CoefficientTable& table, const EquationSpec& spec, int j,
                              std::pair<long, long> r_window, int richardson_order,
                              const PrecisionContext& ctx) {
    if (j < 0 || j >= static_cast<int>(spec.stokes_points.size()))
        fail(errc::bad_parameter, "no Stokes point with index " + std::to_string(j));
    const auto& sp = spec.stokes_points[j];

    // single dominant singularity required for plain inversion
    mpfr_prec_t wp = ctx.working();
    Real target_mod = abs(sp.location_c(wp));
    int equimodular = 0;
    for (const auto& other : spec.stokes_points)
        if (abs(other.location_c(wp)) < target_mod * Real(1.0001, wp)) ++equimodular;
    bool dominant = equimodular == 1;

    auto [r1, r2] = r_window;
    if (r1 < 1 || r2 - r1 < richardson_order + 2)
        fail(errc::bad_parameter, "window too small for the requested Richardson order");
    if (r2 + 1 - table.offset > table.K)
        fail(errc::table_too_short, "window requires coefficients beyond the table");

    Complex lam = sp.location_c(wp);
    Real beta(sp.beta_asym, wp);
    Complex two_pi_i = Complex(Real(0L, wp), Real::pi(wp) * 2);
    Complex log_lam = log(lam);

    StokesEstimate est;
    est.j = j;
    est.r_begin = r1;
    est.richardson_order = richardson_order;
    for (long r = r1; r <= r2; ++r) {
        // coefficient of x^{-(r+1)} in the series
        Complex c_r(Real(table.a[r + 1 - table.offset], wp));
        Complex g = numerics::gamma_complex(Complex(Real(r + 1, wp) - beta), ctx);
        Complex lam_pow = exp(log_lam * (Real(r + 1, wp) - beta));
        est.raw.push_back(two_pi_i * lam_pow * c_r / g);
    }

    Complex v_hi = numerics::richardson(est.raw, r1, richardson_order);
    Complex v_lo = numerics::richardson(est.raw, r1, std::max(0, richardson_order - 1));
    est.value = v_hi;
    est.error_estimate = abs(v_hi - v_lo);

    Real mag = abs(est.value);
    if (!dominant || !est.value.is_finite() || est.error_estimate > mag * Real(0.05, wp) ||
        mag.is_zero())
        fail(errc::oscillation_detected,
             "late-term inversion unstable over the window (equimodular singularities or "
             "resonance): " +
                 spec.name);
    return est;
}

DingleReport dingle_phase_check(const CoefficientTable& table, const EquationSpec& spec, int j,
                                const Complex& x, long window_width, const PrecisionContext& ctx) {
    if (j < 0 || j >= static_cast<int>(spec.stokes_points.size()))
        fail(errc::bad_parameter, "no Stokes point with index " + std::to_string(j));
    int dominant_count = 0;
    mpfr_prec_t wp = ctx.working();
    Real mod = abs(spec.stokes_points[j].location_c(wp));
    for (const auto& other : spec.stokes_points)
        if (!(abs(other.location_c(wp)) > mod)) ++dominant_count;
    if (dominant_count != 1 || spec.resonant_family)
        fail(errc::model_unavailable,
             "late-term phase model needs a single dominant Stokes point: " + spec.name);

    DingleReport rep;
    rep.stokes_angle = arg(spec.stokes_points[j].location_c(wp)).to_double();
    rep.ray_angle = arg(x).to_double();

    long n = truncation::least_term_index(table, x);
    long lo = n - window_width / 2;
    long hi = lo + window_width;
    if (lo < 1) {
        lo = 1;
        hi = lo + window_width;
    }
    if (hi + 1 - table.offset > table.K) fail(errc::table_too_short, "phase window beyond table");

    // unwrapped phases of the terms a_k x^{-k-offset}
    Complex xw = round_c(x, wp);
    double prev = 0.0, acc = 0.0, mn = 0.0, mx = 0.0;
    bool first = true;
    for (long k = lo; k <= hi; ++k) {
        if (table.a[k].is_zero()) fail(errc::model_unavailable, "zero coefficient inside the window");
        Complex term = Complex(Real(table.a[k], wp)) * exp(-log(xw) * Real(k + table.offset, wp));
        double ph = arg(term).to_double();
        if (first) {
            prev = ph;
            first = false;
        } else {
            double d = std::remainder(ph - prev, 2 * M_PI);
            acc += d;
            prev = ph;
            mn = std::min(mn, acc);
            mx = std::max(mx, acc);
        }
    }
    rep.spread = mx - mn;
    double dray = std::fabs(std::remainder(rep.ray_angle - rep.stokes_angle, 2 * M_PI));
    rep.on_stokes_line = dray < 1e-9;
    rep.pass = rep.on_stokes_line ? (rep.spread < rep.eps) : (rep.spread >= rep.eps);
    return rep;
}

Complex antistokes_constant(const EquationSpec& spec, const Complex& c_reference, int direction,
                            const std::vector<long>& r_grid, const PrecisionContext& ctx) {
    if (direction != 1 && direction != -1) fail(errc::bad_parameter, "direction must be +-1");
    if (!spec.has_exact_oracle) fail(errc::oracle_unavailable, spec.name + " has no oracle");
    if (spec.stokes_points.size() != 1 || !spec.stokes_points[0].invertible)
        fail(errc::bad_parameter, "anti-Stokes reading needs a single invertible Stokes point");
    if (r_grid.size() < 2) fail(errc::insufficient_data, "anti-Stokes grid needs >= 2 points");

    mpfr_prec_t wp = ctx.working();
    Real beta(spec.stokes_points[0].beta_asym, wp);
    Complex lam = spec.stokes_points[0].location_c(wp);

    // g(r) = y(x_r) x^{B} e^{lambda x_r} on the curve Re(lambda x) = B ln|x|;
    // fitted against const + a e^{lambda x}/x to remove the series part.
    std::vector<Complex> g;
    std::vector<Complex> osc;
    mpfr_prec_t wq = 0;
    for (long r : r_grid) {
        // x_r = i * direction * r (+ curvature correction when B != 0)
        Real rr(r, wp);
        Real re_part = beta.is_zero() ? Real(0L, wp) : Real(beta, wp) * log(rr);
        Complex x{re_part, direction > 0 ? rr : -rr};
        Complex y = equations::exact_solution(spec, x, ctx);
        wq = std::max(wq, y.prec());
        Complex xq = round_c(x, wq);
        Complex yq = round_c(y, wq);
        if (!c_reference.is_zero())
            yq += round_c(c_reference, wq) * exp(-(lam * xq)) * pow(xq, -Real(beta, wq));
        Complex e = exp(lam * xq) * pow(xq, Real(beta, wq));
        g.push_back(yq * e);
        osc.push_back(e / xq);
    }
    // least squares for g(r) = c + a osc(r)
    mpfr_prec_t wf = wq ? wq : wp;
    Complex n_c(Real(static_cast<long>(g.size()), wf), Real(0L, wf));
    Complex s_o(wf), s_oo(wf), s_g(wf), s_og(wf);
    for (size_t i = 0; i < g.size(); ++i) {
        Complex o = round_c(osc[i], wf);
        s_o += o;
        s_oo += conj(o) * o;
        s_g += round_c(g[i], wf);
        s_og += conj(o) * round_c(g[i], wf);
    }
    Complex det = n_c * s_oo - s_o * conj(s_o);
    if (abs(det) < Real::pow2(-ctx.bits / 2, wf))
        fail(errc::non_convergence, "anti-Stokes grid too degenerate to separate the limit");
    Complex c = (s_oo * s_g - s_o * s_og) / det;

    // the raw values must already hover near the fitted limit
    Real scatter(0L, wf);
    for (const auto& gi : g) {
        Real dev = abs(round_c(gi, wf) - c);
        if (dev > scatter) scatter = dev;
    }
    if (scatter > (abs(c) + Real(1L, wf)) * Real(0.5, wf))
        fail(errc::non_convergence, "anti-Stokes limit did not stabilize over the grid");
    return c;
}

}  // namespace stokeslab::stokes
