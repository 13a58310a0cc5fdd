#include "stokeslab/berry.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "stokeslab/truncation.hpp"

namespace stokeslab::berry {

namespace {

Complex round_c(const Complex& z, mpfr_prec_t prec) { return {Real(z.re, prec), Real(z.im, prec)}; }

double sqr(double v) { return v * v; }

}  // namespace

ErfFit fit_erf(const std::vector<double>& ts, const std::vector<std::complex<double>>& cs,
               bool free_width) {
    const size_t n = ts.size();
    if (n < 5 || cs.size() != n) fail(errc::insufficient_data, "erf fit needs >= 5 grid points");
    double t_lo = *std::min_element(ts.begin(), ts.end());
    double t_hi = *std::max_element(ts.begin(), ts.end());

    ErfFit best;
    double best_r2 = -1.0;
    const double sqrt2 = std::sqrt(2.0);
    std::vector<double> widths;
    if (free_width)
        for (int i = 0; i < 120; ++i) widths.push_back(0.3 + 3.2 * i / 119.0);
    else
        widths.push_back(sqrt2);

    for (int ci = 0; ci <= 240; ++ci) {
        double c = t_lo + (t_hi - t_lo) * ci / 240.0;
        for (double wdt : widths) {
            // linear LS for amplitude/offset at fixed (center, width)
            double se = 0, see = 0;
            std::complex<double> sc{}, sce{};
            for (size_t i = 0; i < n; ++i) {
                double e = std::erf((ts[i] - c) / wdt);
                se += e;
                see += e * e;
                sc += cs[i];
                sce += cs[i] * e;
            }
            double det = static_cast<double>(n) * see - se * se;
            if (std::fabs(det) < 1e-12) continue;
            std::complex<double> amp = (static_cast<double>(n) * sce - se * sc) / det;
            std::complex<double> off = (sc - amp * se) / static_cast<double>(n);
            double r2 = 0;
            for (size_t i = 0; i < n; ++i)
                r2 += std::norm(cs[i] - amp * std::erf((ts[i] - c) / wdt) - off);
            if (best_r2 < 0 || r2 < best_r2) {
                best_r2 = r2;
                best.s_fit = 2.0 * amp;
                best.offset = off;
                best.center = c;
                best.width = wdt;
                best.residual_rms = std::sqrt(r2 / n);
            }
        }
    }
    return best;
}

BerryScan berry_scan(const EquationSpec& spec, const CoefficientTable& table, long r,
                     const std::vector<double>& omega_grid, const borel::AverageSpec& avg,
                     const PrecisionContext& ctx) {
    if (spec.stokes_points.empty()) fail(errc::bad_parameter, "no Stokes data for a Berry scan");
    const auto& sp = spec.stokes_points[0];
    {
        // scan normalization assumes the lambda_1 = 1 Stokes line
        if (!(sp.location.first == Rational(1)) || !sp.location.second.is_zero())
            fail(errc::bad_parameter, "Berry scan implemented on the lambda = 1 Stokes line");
    }
    mpfr_prec_t wp = ctx.working();
    BerryScan scan;
    scan.spec_name = spec.name;
    scan.r = r;
    scan.omega = omega_grid;
    Real beta(sp.beta_asym, wp);

    std::optional<borel::BorelFunction> bf;
    if (!spec.has_exact_oracle) bf = borel::borel_transform(table, spec, ctx);

    double max_arg = 0;
    for (double om : omega_grid) max_arg = std::max(max_arg, std::fabs(om) / std::sqrt(double(r)));
    if (max_arg > 0.16)
        scan.warnings.push_back("scan leaves the Berry window: |arg x| up to " + std::to_string(max_arg));

    for (double om : omega_grid) {
        Real theta = Real(om, wp) / sqrt(Real(r, wp));
        Complex x = Complex::polar(Real(r, wp), theta);
        long n = truncation::least_term_index(table, x);
        Complex ts = truncation::truncated_sum(table, x, n, ctx);
        Complex ref = spec.has_exact_oracle ? equations::exact_solution(spec, x, ctx)
                                            : borel::averaged_sum(*bf, x, avg, ctx);
        mpfr_prec_t wq = std::max(ref.prec(), ts.prec());
        Complex xq = round_c(x, wq);
        Complex normalize = exp(xq) * pow(xq, Real(beta, wq));  // divide by e^{-x} x^{-B}
        scan.measured.push_back(round_c((round_c(ref, wq) - round_c(ts, wq)) * normalize, wp));
    }

    std::vector<std::complex<double>> cs;
    for (const auto& m : scan.measured) cs.push_back(m.to_std());
    scan.fit = fit_erf(omega_grid, cs, /*free_width=*/false);
    return scan;
}

AlphaSweep alpha_sweep(const EquationSpec& spec, const CoefficientTable& table,
                       const std::vector<long>& r_grid, const std::vector<double>& alpha_set,
                       const PrecisionContext& ctx) {
    if (r_grid.size() < 2) fail(errc::insufficient_data, "alpha sweep needs >= 2 radii");
    auto bf = borel::borel_transform(table, spec, ctx);

    AlphaSweep sweep;
    sweep.alphas = alpha_set;
    for (long r : r_grid) sweep.rs.push_back(r);
    sweep.ratios.assign(alpha_set.size(), {});

    for (long r : r_grid) {
        Complex x(r, ctx.working());
        Complex la = borel::lateral_laplace(bf, x, borel::Side::above, ctx);
        Complex lb = borel::lateral_laplace(bf, x, borel::Side::below, ctx);
        long n = truncation::least_term_index(table, x);
        Complex ts = truncation::truncated_sum(table, x, n, ctx);
        Real lt = truncation::least_term_magnitude(table, x, ctx);
        for (size_t ai = 0; ai < alpha_set.size(); ++ai) {
            mpfr_prec_t wq = std::max(la.prec(), ts.prec());
            Real alpha(alpha_set[ai], wq);
            Complex y = round_c(la, wq) * (Real(1L, wq) - alpha) + round_c(lb, wq) * alpha;
            Real ratio = abs(y - round_c(ts, wq)) / Real(lt, wq);
            sweep.ratios[ai].push_back(ratio.to_double());
        }
    }
    // log-log slope per alpha
    for (size_t ai = 0; ai < alpha_set.size(); ++ai) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const size_t n = r_grid.size();
        for (size_t i = 0; i < n; ++i) {
            double lx = std::log(static_cast<double>(r_grid[i]));
            double ly = std::log(std::max(sweep.ratios[ai][i], 1e-300));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        sweep.slopes.push_back((n * sxy - sx * sy) / (n * sxx - sx * sx));
    }
    return sweep;
}

ResonantFit resonant_coefficient_fit(const Rational& m, const CoefficientTable& table,
                                     std::pair<long, long> k_window, const PrecisionContext& ctx) {
    if (!(m.sign() > 0))
        fail(errc::bad_parameter,
             "resonant fit needs m > 0 (at m = 0 the model degenerates: b_k k^{-1/4} = k^{3/4} is "
             "unbounded)");
    auto [k1, k2] = k_window;
    if (k1 < 1 || k2 <= k1 + 8) fail(errc::bad_parameter, "fit window too small");
    if (k2 > table.K) fail(errc::table_too_short, "fit window beyond the table");

    mpfr_prec_t wp = ctx.working();
    Real mr(m, wp);
    Real quarter = Real(1L, wp) / 4;

    // normal equations over the two-phase basis
    Complex g11(wp), g12(wp), g22(wp), h1(wp), h2(wp);
    Real fact(1L, wp);
    for (long k = 1; k < k1; ++k) fact *= Real(k, wp);
    std::vector<Complex> ys;
    std::vector<Complex> e1s, e2s;
    Real y2(0L, wp);
    for (long k = k1; k <= k2; ++k) {
        if (k > 1) fact *= Real(k - 1, wp);  // (k-1)!
        Real bk = Real(table.a[k], wp) / fact;
        Real ph = sqrt(Real(k, wp)) * mr * 2;
        Complex e1 = Complex::polar(Real(1L, wp), ph);
        Complex e2 = conj(e1);
        Complex y(bk * pow(Real(k, wp), -quarter));
        g11 += Complex(Real(1L, wp));  // |e1|^2 = 1
        g12 += conj(e1) * e2;
        g22 += Complex(Real(1L, wp));
        h1 += conj(e1) * y;
        h2 += conj(e2) * y;
        ys.push_back(y);
        e1s.push_back(e1);
        e2s.push_back(e2);
        y2 += norm(y);
    }
    Complex det = g11 * g22 - g12 * conj(g12);
    Real scale = abs(g11) * abs(g22);
    if (abs(det) < scale * Real::pow2(-24, wp))
        fail(errc::mode_separation_failure, "phases do not separate over the window (m too small)");
    Complex ap = (g22 * h1 - g12 * h2) / det;
    Complex am = (g11 * h2 - conj(g12) * h1) / det;

    Real r2(0L, wp);
    for (size_t i = 0; i < ys.size(); ++i) r2 += norm(ys[i] - ap * e1s[i] - am * e2s[i]);
    ResonantFit fit;
    fit.a_plus = ap.to_std();
    fit.a_minus = am.to_std();
    fit.residual_rms = std::sqrt((r2 / Real(static_cast<long>(ys.size()), wp)).to_double());
    fit.window_rms = std::sqrt((y2 / Real(static_cast<long>(ys.size()), wp)).to_double());
    return fit;
}

ResonantBerryScan resonant_berry_scan(const Rational& m, long r, const std::vector<double>& beta_grid,
                                      const PrecisionContext& ctx) {
    (void)ctx;  // w-frame precision is set internally from the scan geometry
    if (!(m.sign() > 0)) fail(errc::bad_parameter, "resonant Berry scan needs m > 0");
    if (r < 100) fail(errc::bad_parameter, "resonant Berry scan needs r >= 100");
    if (beta_grid.size() < 7) fail(errc::insufficient_data, "beta grid too small");

    const long window = 180;
    const long stride = 6;
    const long margin = std::max<long>(150, r / 5);
    const long K = r + window + margin + 40;

    std::map<std::string, Rational> params{{"m", m}};
    EquationSpec spec = equations::build_catalog_equation("resonant", params);
    CoefficientTable table = equations::generate_coefficients(spec, K);

    // w-frame precision: anchor-matching cancels values of size
    // exp((margin+window)^2 / (2 xa)); budget that plus measurement headroom.
    double xa_d = static_cast<double>(r + window + margin);
    double carry = sqr(static_cast<double>(margin + window)) / (2.0 * xa_d);
    mpfr_prec_t wpw = 384 + static_cast<mpfr_prec_t>(1.6 * carry);

    equations::ResonantDefectSolver solver(table, m, r, Real(static_cast<double>(r), wpw), wpw);
    solver.anchor(Real(xa_d, wpw));

    ResonantBerryScan scan;
    scan.m = m;
    scan.r = r;
    scan.beta = beta_grid;
    scan.window = window;
    scan.stride = stride;

    const mpfr_prec_t wp = wpw;
    Real mr(m, wp);

    // WKB renormalization: sqrt(x) H^(1)_1(2m sqrt x) -> x^{1/4} e^{+-2im sqrt x}
    // times (pi m)^{-1/2} e^{-+ 3 pi i/4}
    Real pm = sqrt(Real::pi(wp) * mr);
    Complex scale_p = Complex::polar(Real(1L, wp) / pm, -Real::pi(wp) * 3 / 4);
    Complex scale_m = conj(scale_p);

    for (double beta : beta_grid) {
        // walk the window r' = r .. r+window at fixed Berry coordinate beta
        Complex g11(wp), g12(wp), g22(wp), h1(wp), h2(wp);
        for (long rp = r; rp <= r + window; rp += stride) {
            Real rr(rp, wp);
            Real theta = Real(beta, wp) / sqrt(rr);
            Complex xt = Complex::polar(rr, theta);
            solver.advance(xt);
            Complex wv = solver.w_value();
            // remainder against truncation at index r' (pinned to the modulus)
            long n_here = rp;
            if (n_here < solver.n_ref())
                wv += solver.tail_w_units(xt, n_here, solver.n_ref());
            else if (n_here > solver.n_ref())
                wv -= solver.tail_w_units(xt, solver.n_ref(), n_here);
            Complex e1 = solver.mode_h1();
            Complex e2 = solver.mode_h2();
            g11 += conj(e1) * e1;
            g12 += conj(e1) * e2;
            g22 += conj(e2) * e2;
            h1 += conj(e1) * wv;
            h2 += conj(e2) * wv;
        }
        Complex det = g11 * g22 - g12 * conj(g12);
        Real cond = (abs(g11) * abs(g22)) / (abs(det) + Real::pow2(-wp + 8, wp));
        scan.worst_conditioning = std::max(scan.worst_conditioning, cond.to_double());
        if (cond > Real("1e12", wp))
            fail(errc::mode_separation_failure, "mode projection ill-conditioned at beta = " +
                                                    std::to_string(beta));
        Complex cp = (g22 * h1 - g12 * h2) / det;
        Complex cm = (g11 * h2 - conj(g12) * h1) / det;
        scan.c_plus.push_back((cp * scale_p).to_std());
        scan.c_minus.push_back((cm * scale_m).to_std());

        // return to the real axis before the next beta to keep path hops short
        solver.advance(Complex(Real(r + window, wp), Real(0L, wp)));
        solver.advance(Complex(Real(r, wp), Real(0L, wp)));
    }

    scan.fit_plus = fit_erf(beta_grid, scan.c_plus, /*free_width=*/true);
    scan.fit_minus = fit_erf(beta_grid, scan.c_minus, /*free_width=*/true);
    return scan;
}

}  // namespace stokeslab::berry
