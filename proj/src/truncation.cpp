#include "stokeslab/truncation.hpp"

#include <cmath>

#include "stokeslab/borel.hpp"

namespace stokeslab::truncation {

namespace {

Complex round_c(const Complex& z, mpfr_prec_t prec) { return {Real(z.re, prec), Real(z.im, prec)}; }

}  // namespace

long least_term_index(const CoefficientTable& table, const Complex& x) {
    const mpfr_prec_t wp = 128;
    Real ax = Real(abs(x), wp);
    if (Real(table.K, wp) < ax + 10) fail(errc::table_too_short, "need K >= |x| + 10");

    Real lax = log(ax);
    long best = -1;
    Real bestv(0L, wp);
    for (long k = 0; k <= table.K; ++k) {
        if (table.a[k].is_zero()) continue;
        Real v = log(abs(Real(table.a[k], wp))) - lax * Real(k + table.offset, wp);
        if (best < 0 || v < bestv) {
            bestv = v;
            best = k;
        }
    }
    return best;
}

Complex truncated_sum(const CoefficientTable& table, const Complex& x, long N,
                      const PrecisionContext& ctx) {
    if (N > table.K) fail(errc::table_too_short, "partial sum index beyond table");
    double ax = abs(x).to_double();
    mpfr_prec_t wp = ctx.working() + static_cast<mpfr_prec_t>(1.5 * ax) + 64;
    Complex xi = Complex(1L, wp) / round_c(x, wp);
    Complex s(wp);
    for (long k = N; k >= 0; --k) s = s * xi + Complex(Real(table.a[k], wp));
    for (int j = 0; j < table.offset; ++j) s = s * xi;
    return s;
}

Real least_term_magnitude(const CoefficientTable& table, const Complex& x,
                          const PrecisionContext& ctx) {
    long N = least_term_index(table, x);
    mpfr_prec_t wp = ctx.working() + static_cast<mpfr_prec_t>(1.5 * abs(x).to_double()) + 64;
    Real ax = Real(abs(x), wp);
    return abs(Real(table.a[N], wp)) * pow_si(ax, -(N + table.offset));
}

Complex balanced_reference(const EquationSpec& spec, const Complex& x, const PrecisionContext& ctx) {
    Complex y = equations::exact_solution(spec, x, ctx);
    if (spec.kind != equations::EquationKind::toy) return y;
    // On a ray off the Stokes line the balanced sum differs from the
    // principal-branch Ei solution by -/+ (S/2) e^{-x}: calibrated against the
    // lateral quadrature (upper lateral = PV + (S/2) e^{-x}).
    double xi = arg(x).to_double();
    if (xi == 0.0) return y;
    mpfr_prec_t wp = y.prec();
    Complex S = spec.known_stokes(wp);
    Complex corr = S * exp(-round_c(x, wp)) / Real(2L, wp);
    return (xi > 0) ? y - corr : y + corr;
}

TruncationReport truncation_error(const EquationSpec& spec, const CoefficientTable& table,
                                  const Complex& x, Reference reference, const PrecisionContext& ctx,
                                  const Complex* extra_c) {
    TruncationReport rep;
    rep.x = x;
    rep.N = least_term_index(table, x);
    rep.partial_sum = truncated_sum(table, x, rep.N, ctx);

    mpfr_prec_t wp = rep.partial_sum.prec();
    Complex xr = round_c(x, wp);
    rep.least_term =
        Complex(Real(table.a[rep.N], wp)) * exp(-log(xr) * Real(rep.N + table.offset, wp));

    Complex ref(wp);
    switch (reference) {
        case Reference::exact_oracle: {
            if (!spec.has_exact_oracle) fail(errc::no_reference, spec.name + " has no exact oracle");
            ref = balanced_reference(spec, x, ctx);
            break;
        }
        case Reference::balanced_sum: {
            auto bf = borel::borel_transform(table, spec, ctx);
            borel::AverageSpec avg;
            avg.alpha = 0.5;
            avg.depth = 1;
            ref = borel::averaged_sum(bf, x, avg, ctx);
            break;
        }
    }
    if (extra_c) {
        // shift the reference by extra_c * e^{-lambda_1 x} x^{-B}
        if (spec.stokes_points.empty()) fail(errc::no_reference, "no Stokes data for the C-shift");
        mpfr_prec_t wq = std::max(wp, ref.prec());
        Complex lam = spec.stokes_points[0].location_c(wq);
        Real beta(spec.stokes_points[0].beta_asym, wq);
        Complex xq = round_c(x, wq);
        ref = ref + round_c(*extra_c, wq) * exp(-(lam * xq)) * pow(xq, -beta);
    }

    rep.remainder = ref - rep.partial_sum;
    rep.ratio = abs(rep.remainder) / abs(rep.least_term);
    return rep;
}

}  // namespace stokeslab::truncation
