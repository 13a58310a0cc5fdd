#include "stokeslab/equations.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace stokeslab::equations {

namespace {

Complex round_c(const Complex& z, mpfr_prec_t prec) { return {Real(z.re, prec), Real(z.im, prec)}; }

// log-magnitude argmin of |a_k x^{-k-offset}| over the table (zero terms skipped)
long argmin_term(const CoefficientTable& t, const Real& ax) {
    mpfr_prec_t wp = 128;
    Real lax = log(Real(ax, wp));
    long best = -1;
    Real bestv(0L, wp);
    for (long k = 0; k <= t.K; ++k) {
        if (t.a[k].is_zero()) continue;
        Real v = log(abs(Real(t.a[k], wp))) - lax * Real(k + t.offset, wp);
        if (best < 0 || v < bestv) {
            bestv = v;
            best = k;
        }
    }
    return best;
}

// partial sum sum_{k=0}^{N} a_k x^{-k-offset} (Horner)
Complex partial_sum(const CoefficientTable& t, const Complex& x, long N, mpfr_prec_t wp) {
    Complex xi = Complex(1L, wp) / round_c(x, wp);
    Complex s(wp);
    for (long k = N; k >= 0; --k) s = s * xi + Complex(Real(t.a[k], wp));
    for (int j = 0; j < t.offset; ++j) s = s * xi;
    return s;
}

// Ai(z) by Maclaurin series with cancellation guard (entire function).
Complex airy_ai(const Complex& z, mpfr_prec_t wp) {
    double zeta = 2.0 / 3.0 * std::pow(abs(z).to_double(), 1.5);
    mpfr_prec_t gp = wp + static_cast<mpfr_prec_t>(3.0 * zeta) + 96;
    Complex zg = round_c(z, gp);
    Complex z3 = zg * zg * zg;
    Real eps = Real::pow2(-wp - 48, gp);

    Complex f(1L, gp), tf(1L, gp);
    Complex g = zg, tg = zg;
    for (long k = 0; k < 8 * gp; ++k) {
        tf = tf * z3 / Real((3 * k + 2) * (3 * k + 3), gp);
        tg = tg * z3 / Real((3 * k + 3) * (3 * k + 4), gp);
        f += tf;
        g += tg;
        if (abs(tf) + abs(tg) < eps && k > 4) break;
    }
    Real third(1L, gp);
    third = third / 3;
    Real ai0 = pow(Real(3L, gp), Real(-2.0, gp) / 3) / gamma(Real(2L, gp) / 3);
    Real aip0 = -pow(Real(3L, gp), -third) / gamma(third);
    Complex r = f * ai0 + g * aip0;
    return round_c(r, wp);
}

}  // namespace

Complex EquationSpec::known_stokes(mpfr_prec_t prec) const {
    if (!has_known_stokes) fail(errc::no_reference, "no known Stokes constant for " + name);
    Real mag = Real(s_coeff, prec);
    for (int i = 0; i < s_pi_power; ++i) mag *= Real::pi(prec);
    return {Real(0L, prec), mag};
}

EquationSpec build_catalog_equation(const std::string& name,
                                    const std::map<std::string, Rational>& params) {
    EquationSpec s;
    if (name == "toy") {
        s.name = "toy";
        s.kind = EquationKind::toy;
        s.lambdas = {{Rational(1), Rational(0)}};
        s.betas_prepared = {Rational(-1)};
        s.series_offset = 1;
        s.stokes_points = {{{Rational(1), Rational(0)}, Rational(0), true}};
        s.has_exact_oracle = true;
        s.has_known_stokes = true;
        s.s_coeff = Rational(2);
        s.s_pi_power = 1;
    } else if (name == "airy") {
        s.name = "airy";
        s.kind = EquationKind::airy;
        s.lambdas = {{Rational(1), Rational(0)}, {Rational(-1), Rational(0)}};
        s.betas_prepared = {Rational(-5, 6), Rational(-5, 6)};
        s.series_offset = 0;
        s.stokes_points = {{{Rational(-2), Rational(0)}, Rational(0), true}};
        s.has_exact_oracle = true;
        s.has_stokes_oracle = true;
        s.has_known_stokes = true;
        s.s_coeff = Rational(1);
        s.s_pi_power = 0;
    } else if (name == "painleve1") {
        s.name = "painleve1";
        s.kind = EquationKind::painleve1;
        s.lambdas = {{Rational(1), Rational(0)}, {Rational(-1), Rational(0)}};
        s.betas_prepared = {Rational(-1, 2), Rational(-1, 2)};
        s.series_offset = 0;
        s.stokes_points = {{{Rational(1), Rational(0)}, Rational(1, 2), false},
                           {{Rational(-1), Rational(0)}, Rational(1, 2), false}};
    } else if (name == "resonant") {
        auto it = params.find("m");
        if (it == params.end()) fail(errc::bad_parameter, "resonant requires a real parameter m");
        s.name = "resonant(m=" + it->second.to_string() + ")";
        s.kind = EquationKind::resonant;
        s.m_param = it->second;
        s.lambdas = {{Rational(1), Rational(0)}, {Rational(1), Rational(0)}};
        s.betas_prepared = {Rational(0), Rational(0)};
        s.series_offset = 0;
        s.resonant_family = true;
        s.stokes_points = {{{Rational(1), Rational(0)}, Rational(0), false}};
        s.has_exact_oracle = true;
    } else {
        fail(errc::unknown_equation, "no catalog entry named '" + name + "'");
    }
    for (const auto& b : s.betas_prepared) {
        long m = 1 - b.floor_long();
        s.ms.push_back(m);
        s.beta_primes.push_back(b + Rational(m));
    }
    return s;
}

EquationSpec make_custom_equation(const std::string& name, CustomRecurrence rec, int series_offset,
                                  std::vector<std::pair<Rational, Rational>> lambdas,
                                  std::vector<StokesPoint> stokes_points) {
    if (rec.poly.empty() || rec.seeds.size() < rec.poly.size())
        fail(errc::bad_parameter, "custom recurrence needs order >= 1 and order seed values");
    EquationSpec s;
    s.name = name;
    s.kind = EquationKind::custom;
    s.lambdas = std::move(lambdas);
    s.series_offset = series_offset;
    s.stokes_points = std::move(stokes_points);
    s.custom = std::move(rec);
    for (size_t i = 0; i < s.lambdas.size(); ++i) {
        s.betas_prepared.push_back(Rational(-1));
        s.ms.push_back(2);
        s.beta_primes.push_back(Rational(1));
    }
    return s;
}

std::vector<std::string> catalog_names() { return {"toy", "airy", "painleve1", "resonant"}; }

CoefficientTable generate_coefficients(const EquationSpec& spec, long K) {
    if (K < 2) fail(errc::bad_parameter, "coefficient table needs K >= 2");
    CoefficientTable t;
    t.spec_name = spec.name;
    t.K = K;
    t.offset = spec.series_offset;
    t.a.reserve(K + 1);

    switch (spec.kind) {
        case EquationKind::toy: {
            t.a.push_back(Rational(1));
            for (long k = 0; k < K; ++k) t.a.push_back(t.a.back() * Rational(k + 1));
            break;
        }
        case EquationKind::airy: {
            // c_{k+1} = -(6k+5)(6k+1) / (72 (k+1)) c_k
            t.a.push_back(Rational(1));
            for (long k = 0; k < K; ++k)
                t.a.push_back(t.a.back() * Rational(-(6 * k + 5) * (6 * k + 1), 72 * (k + 1)));
            break;
        }
        case EquationKind::painleve1: {
            // a_n = (n-2)^2 a_{n-2} - (3/2) sum_{j+l=n} a_j a_l - (392/1875) [n=4]
            const Rational c32(3, 2);
            t.a.assign(K + 1, Rational(0));
            if (K >= 4) t.a[4] = Rational(-392, 1875);
            for (long n = 5; n <= K; ++n) {
                Rational v = t.a[n - 2] * Rational((n - 2) * (n - 2));
                Rational conv(0);
                for (long j = 4; j + 4 <= n; ++j) conv += t.a[j] * t.a[n - j];
                t.a[n] = v - c32 * conv;
            }
            break;
        }
        case EquationKind::resonant: {
            Rational m2 = spec.m_param * spec.m_param;
            t.a.push_back(Rational(0));
            t.a.push_back(Rational(1));
            for (long k = 1; k < K; ++k)
                t.a.push_back((Rational(2 * k) - m2) * t.a[k] - Rational(k * (k - 1)) * t.a[k - 1]);
            break;
        }
        case EquationKind::custom: {
            const auto& rec = *spec.custom;
            const long order = static_cast<long>(rec.poly.size());
            for (long i = 0; i < order; ++i) t.a.push_back(rec.seeds[i]);
            auto poly_at = [](const std::vector<Rational>& p, long k) {
                Rational v(0);
                Rational kq(k);
                for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * kq + *it;
                return v;
            };
            for (long k = order - 1; k < K; ++k) {
                Rational v(0);
                for (long j = 0; j < order; ++j) v += poly_at(rec.poly[j], k) * t.a[k - j];
                t.a.push_back(v);
            }
            t.a.resize(K + 1);
            break;
        }
    }
    if (static_cast<long>(t.a.size()) != K + 1) t.a.resize(K + 1, Rational(0));
    return t;
}

std::vector<Rational> scaled_coefficients(const CoefficientTable& table) {
    std::vector<Rational> b;
    b.push_back(Rational(0));  // unused slot: b_k defined for k >= 1
    Rational fact(1);
    for (long k = 1; k <= table.K; ++k) {
        if (k > 1) fact *= Rational(k - 1);
        b.push_back(table.a[k] / fact);
    }
    return b;
}

Complex ei_principal(const Complex& x, const PrecisionContext& ctx) {
    if (x.is_zero()) fail(errc::bad_parameter, "Ei is singular at 0");
    mpfr_prec_t wp = ctx.working();
    double ax = abs(x).to_double();
    double rx = x.re.to_double();
    // cancellation: max term ~ e^{|x|}, result ~ e^{Re x}/|x|
    mpfr_prec_t gp =
        wp + static_cast<mpfr_prec_t>(1.5 * (ax - rx)) + static_cast<mpfr_prec_t>(2 * std::log2(ax + 2)) + 96;
    Complex xg = round_c(x, gp);
    Complex term(1L, gp);
    Complex sum(gp);
    Real eps = Real::pow2(-gp + 16, gp);
    for (long k = 1; k < 16 * gp; ++k) {
        term = term * xg / Real(k, gp);
        Complex add = term / Real(k, gp);
        sum += add;
        if (abs(term) < eps && k > 8 && Real(static_cast<double>(k), gp) > abs(xg)) break;
    }
    Complex r = sum + log(xg) + Complex(Real::euler_gamma(gp));
    return round_c(r, wp + static_cast<mpfr_prec_t>(1.5 * (ax - rx)) + 64);
}

Complex exact_solution(const EquationSpec& spec, const Complex& x, const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working();
    switch (spec.kind) {
        case EquationKind::toy: {
            Complex ei = ei_principal(x, ctx);
            return exp(-round_c(x, ei.prec())) * ei;
        }
        case EquationKind::airy: {
            // F(t) = 2 sqrt(pi) z^{1/4} e^t Ai(z), z = (3t/2)^{2/3}, |arg t| < pi
            double at = std::fabs(arg(x).to_double());
            if (at > M_PI - 1e-12)
                fail(errc::at_singularity, "airy oracle undefined on the Stokes ray arg t = pi");
            double zeta = abs(x).to_double();
            mpfr_prec_t gp = wp + static_cast<mpfr_prec_t>(3.0 * zeta) + 96;
            Complex t = round_c(x, gp);
            Complex z = pow(t * Real(3L, gp) / 2, Real(2L, gp) / 3);
            Complex val = pow(z, Real(1L, gp) / 4) * exp(t) * airy_ai(z, gp) * (sqrt(Real::pi(gp)) * 2);
            return round_c(val, wp + static_cast<mpfr_prec_t>(3.0 * zeta) + 64);
        }
        case EquationKind::resonant: {
            double ax = abs(x).to_double();
            if (ax < 8) fail(errc::bad_parameter, "resonant oracle needs |x| >= 8");
            long nstar = static_cast<long>(std::llround(ax));
            double margin = std::max(150.0, 0.2 * ax);
            double xa_d = ax + margin;
            long K = static_cast<long>(xa_d) + 40;
            CoefficientTable table = generate_coefficients(spec, K);

            mpfr_prec_t wpw =
                384 + static_cast<mpfr_prec_t>(1.5 * margin * margin / xa_d) + 2 * static_cast<mpfr_prec_t>(std::log2(ax));
            ResonantDefectSolver solver(table, spec.m_param, nstar, Real(ax, wpw), wpw);
            solver.anchor(Real(xa_d, wpw));
            solver.advance(round_c(x, wpw));
            Complex w = solver.w_value();

            mpfr_prec_t wpa = wp + static_cast<mpfr_prec_t>(1.5 * ax) + 96;
            Complex xs = round_c(x, wpa);
            Complex y = partial_sum(table, xs, nstar, wpa) + exp(-xs) * round_c(w, wpa);
            return y;
        }
        default:
            fail(errc::oracle_unavailable, spec.name + " has no exact-solution oracle");
    }
}

Complex airy_stokes_oracle(const PrecisionContext& ctx) {
    mpfr_prec_t wp = ctx.working();
    const long tau = 22;
    mpfr_prec_t gp = wp + static_cast<mpfr_prec_t>(3.0 * tau) + 128;

    EquationSpec spec = build_catalog_equation("airy");
    CoefficientTable table = generate_coefficients(spec, 2 * tau + 30);

    // one-sided values of 2 sqrt(pi) z^{1/4} e^{t} Ai(z) at t = -tau
    Real taur(tau, gp);
    Complex zmod = pow(Complex(taur * 3 / 2), Real(2L, gp) / 3);
    Complex rot = exp(Complex(Real(0L, gp), Real::pi(gp) * 2 / 3));
    Complex zp = zmod * rot;
    Complex zm = conj(zp);
    Real pref = sqrt(Real::pi(gp)) * 2;
    Complex f_up = pow(zp, Real(1L, gp) / 4) * exp(Complex(-taur)) * airy_ai(zp, gp) * pref;
    Complex f_dn = pow(zm, Real(1L, gp) / 4) * exp(Complex(-taur)) * airy_ai(zm, gp) * pref;

    // homogeneous series e^{2t} sum u_k t^{-k} at t = -tau, truncated near its least term
    Complex w(gp);
    Real tpow(1L, gp);
    for (long k = 0; k <= 2 * tau; ++k) {
        Real term = abs(Real(table.a[k], gp)) * tpow;
        w += Complex((k % 2 == 0) ? term : -term);  // u_k (-tau)^{-k}
        tpow = tpow / taur;
    }
    Complex jump = (f_up - f_dn) * exp(Real(2 * tau, gp)) / w;
    return round_c(jump, wp);
}

NonresonanceReport check_nonresonance(const std::vector<Complex>& lambdas, int bound,
                                      const PrecisionContext& ctx) {
    if (bound < 1) fail(errc::bad_parameter, "nonresonance search bound must be >= 1");
    NonresonanceReport rep;
    const size_t n = lambdas.size();
    if (n == 0) return rep;
    if (n > 4) fail(errc::bad_parameter, "nonresonance checker supports up to 4 eigenvalues");

    std::vector<std::complex<double>> lam;
    for (const auto& l : lambdas) lam.push_back(l.to_std());
    double tol = std::pow(2.0, -std::min<long>(ctx.bits / 2, 48));

    // candidate half-plane axes: around each eigenvalue's normal, plus a coarse grid
    std::vector<double> thetas;
    for (const auto& l : lam) {
        double a = std::arg(l);
        for (double d : {-1e-3, 1e-3})
            for (double o : {M_PI / 2, -M_PI / 2, 0.0}) thetas.push_back(a + o + d);
    }
    for (int i = 0; i < 64; ++i) thetas.push_back(2 * M_PI * i / 64.0);

    std::set<unsigned> seen;
    for (double th : thetas) {
        unsigned mask = 0;
        std::vector<size_t> idx;
        for (size_t i = 0; i < n; ++i) {
            double d = std::remainder(std::arg(lam[i]) - th, 2 * M_PI);
            if (std::fabs(d) < M_PI / 2 - 1e-9) {
                mask |= 1u << i;
                idx.push_back(i);
            }
        }
        if (idx.empty() || seen.count(mask)) continue;
        seen.insert(mask);
        const size_t p = idx.size();

        // condition (1): Z-linear independence with |k_i| <= bound
        std::vector<int> k(p, -bound);
        while (true) {
            bool all_zero = true;
            std::complex<double> s{0, 0};
            for (size_t i = 0; i < p; ++i) {
                if (k[i] != 0) all_zero = false;
                s += static_cast<double>(k[i]) * lam[idx[i]];
            }
            if (!all_zero && std::abs(s) < tol) {
                rep.pass_independence = false;
                std::string w = "relation";
                for (size_t i = 0; i < p; ++i)
                    w += " + (" + std::to_string(k[i]) + ")*lambda_" + std::to_string(idx[i] + 1);
                rep.witnesses.push_back(w + " = 0");
            }
            size_t pos = 0;
            while (pos < p && ++k[pos] > bound) k[pos++] = -bound;
            if (pos == p) break;
        }

        // condition (2): distinct directions of {lambda_i - k.lambda in H_theta}
        std::vector<std::complex<double>> members;
        double cmin = 1e300, cmax = 0;
        for (size_t i = 0; i < p; ++i) {
            double c = std::cos(std::arg(lam[idx[i]]) - th) * std::abs(lam[idx[i]]);
            cmin = std::min(cmin, c);
            cmax = std::max(cmax, c);
        }
        int kmax = std::max(1, static_cast<int>(cmax / std::max(cmin, 1e-9)) + 2);
        kmax = std::min(kmax, bound + 2);
        std::vector<int> kk(p, 0);
        while (true) {
            for (size_t i = 0; i < p; ++i) {
                std::complex<double> v = lam[idx[i]];
                for (size_t j = 0; j < p; ++j) v -= static_cast<double>(kk[j]) * lam[idx[j]];
                if (std::abs(v) < tol) continue;
                if (std::cos(std::arg(v) - th) <= 1e-12) continue;  // outside H_theta
                bool dup = false;
                for (const auto& w : members)
                    if (std::abs(w - v) < tol * (1 + std::abs(v))) dup = true;
                if (!dup) members.push_back(v);
            }
            size_t pos = 0;
            while (pos < p && ++kk[pos] > kmax) kk[pos++] = 0;
            if (pos == p) break;
        }
        for (size_t i = 0; i < members.size(); ++i)
            for (size_t j = i + 1; j < members.size(); ++j) {
                double d = std::remainder(std::arg(members[i]) - std::arg(members[j]), 2 * M_PI);
                if (std::fabs(d) < tol) {
                    rep.pass_directions = false;
                    rep.witnesses.push_back("coinciding Stokes directions at angle " +
                                            std::to_string(std::arg(members[i])));
                }
            }
    }
    return rep;
}

PreparedReport check_prepared(const EquationSpec& spec, std::optional<double> xi,
                              const PrecisionContext& ctx) {
    (void)ctx;
    PreparedReport rep;
    const Rational one(1);
    for (size_t i = 0; i < spec.lambdas.size(); ++i) {
        Rational mod2 = spec.lambdas[i].first * spec.lambdas[i].first +
                        spec.lambdas[i].second * spec.lambdas[i].second;
        if (mod2 < one) {
            rep.pass_n3 = false;
            rep.notes.push_back("(n3) violated: |lambda_" + std::to_string(i + 1) + "| < 1");
        }
    }
    if (spec.lambdas.empty() || spec.lambdas[0].first != one || !spec.lambdas[0].second.is_zero()) {
        rep.pass_n3 = false;
        rep.notes.push_back("(n3) violated: lambda_1 != 1");
    }
    for (size_t i = 0; i < spec.betas_prepared.size(); ++i) {
        if (!(spec.betas_prepared[i].sign() < 0)) {
            rep.pass_n4 = false;
            rep.notes.push_back("(n4) violated: Re(beta_" + std::to_string(i + 1) + ") >= 0");
        }
    }
    if (spec.resonant_family) {
        rep.pass_n4 = false;
        rep.notes.push_back("resonant family: coinciding eigenvalues, outside the nonresonant frame");
    }
    if (xi) {
        for (size_t i = 0; i < spec.lambdas.size(); ++i) {
            double phi = std::atan2(spec.lambdas[i].second.to_double(), spec.lambdas[i].first.to_double());
            double v = *xi + phi;
            v = std::remainder(v, 2 * M_PI);
            if (std::fabs(v) < M_PI / 2) rep.n6_selected.push_back(i);
        }
    }
    return rep;
}

// ---- ResonantDefectSolver ---------------------------------------------------

ResonantDefectSolver::ResonantDefectSolver(const CoefficientTable& table, const Rational& m,
                                           long n_ref, const Real& base_point, mpfr_prec_t wp)
    : table_(table),
      wp_(wp),
      ictx_(wp > 96 ? wp - 64 : 64, 64),
      m_(Real(m, wp)),
      n_(n_ref),
      c1_(wp),
      c2_(wp),
      x_(Real(base_point, wp), Real(0L, wp)),
      i1_(wp),
      i2_(wp),
      alpha_(wp),
      beta_(wp) {
    if (n_ + 1 > table_.K) fail(errc::table_too_short, "defect solver needs a_{N+1} in the table");
    if (!(m_ > Real(0L, wp))) fail(errc::bad_parameter, "resonant solver needs m > 0");
    c1_ = Complex(Real(table_.a[n_ + 1], wp));
    c2_ = Complex(Real(table_.a[n_], wp) * Real(-n_ * (n_ + 1), wp));
}

Complex ResonantDefectSolver::rho(const Complex& t) const {
    // e^{t - (N+1) log t} (c1 + c2 / t)
    Complex lt = log(t);
    return (c1_ + c2_ / t) * exp(t - lt * Real(n_ + 1, wp_));
}

void ResonantDefectSolver::v_pair(const Complex& t, Complex& o1, Complex& o2) const {
    Complex st = sqrt(t);
    Complex z = st * m_ * 2;
    o1 = st * numerics::bessel_j1(z, ictx_);
    o2 = st * numerics::bessel_y1(z, ictx_);
}

Complex ResonantDefectSolver::v1(const Complex& t) const {
    Complex a(wp_), b(wp_);
    v_pair(t, a, b);
    return a;
}

Complex ResonantDefectSolver::v2(const Complex& t) const {
    Complex a(wp_), b(wp_);
    v_pair(t, a, b);
    return b;
}

Complex ResonantDefectSolver::w_particular(const Complex& t, const Complex& i1,
                                           const Complex& i2) const {
    Complex a(wp_), b(wp_);
    v_pair(t, a, b);
    return (b * i1 - a * i2) * Real::pi(wp_);
}

void ResonantDefectSolver::advance(const Complex& to) {
    Complex target{Real(to.re, wp_), Real(to.im, wp_)};
    if (abs(target - x_) < Real::pow2(-wp_ + 8, wp_)) {
        x_ = target;
        return;
    }
    Real est = (abs(rho(x_)) + abs(rho(target)) + Real(1L, wp_)) * abs(target - x_);
    Real tol = est * Real::pow2(-wp_ + 96, wp_);
    PrecisionContext qctx(wp_ > 96 ? wp_ - 64 : 64, 64);
    auto f1 = [&](const Complex& p) { return v1(p) * rho(p); };
    auto f2 = [&](const Complex& p) { return v2(p) * rho(p); };
    numerics::Contour seg;
    seg.vertices = {x_, target};
    Complex zero(wp_);
    i1_ += numerics::quad_laplace(f1, seg, zero, qctx, tol);
    i2_ += numerics::quad_laplace(f2, seg, zero, qctx, tol);
    x_ = target;
}

void ResonantDefectSolver::anchor(const Real& xa) {
    advance(Complex(Real(xa, wp_), Real(0L, wp_)));
    long na = argmin_term(table_, xa);
    if (na <= n_) na = n_;
    Complex xc = x_;

    Complex w_data = tail_w_units(xc, n_, na);
    // derivative of the tail: e^x sum a_k (x^{-k} - k x^{-k-1})
    Complex wp_data(wp_);
    {
        Complex ex = exp(xc);
        Complex xpow = exp(-log(xc) * Real(n_ + 1, wp_));
        Complex xinv = Complex(1L, wp_) / xc;
        for (long k = n_ + 1; k <= na; ++k) {
            Complex term = Complex(Real(table_.a[k], wp_)) * xpow * ex;
            wp_data += term - term * Real(k, wp_) * xinv;
            xpow = xpow * xinv;
        }
    }

    Complex v1a(wp_), v2a(wp_);
    v_pair(xc, v1a, v2a);
    Complex z = sqrt(xc) * m_ * 2;
    Complex v1p = numerics::bessel_j0(z, ictx_) * m_;
    Complex v2p = numerics::bessel_y0(z, ictx_) * m_;

    Complex wp_part = w_particular(xc, i1_, i2_);
    Complex wpp_part = (v2p * i1_ - v1p * i2_) * Real::pi(wp_);

    Complex dw = w_data - wp_part;
    Complex dwp = wp_data - wpp_part;
    // Wronskian v1 v2' - v1' v2 = 1/pi exactly
    alpha_ = (dw * v2p - dwp * v2a) * Real::pi(wp_);
    beta_ = (dwp * v1a - dw * v1p) * Real::pi(wp_);
    anchored_ = true;
}

Complex ResonantDefectSolver::w_value() const {
    if (!anchored_) fail(errc::bad_parameter, "defect solver used before anchoring");
    Complex v1c(wp_), v2c(wp_);
    v_pair(x_, v1c, v2c);
    return (v2c * i1_ - v1c * i2_) * Real::pi(wp_) + alpha_ * v1c + beta_ * v2c;
}

Complex ResonantDefectSolver::mode_h1() const {
    Complex v1c(wp_), v2c(wp_);
    v_pair(x_, v1c, v2c);
    return v1c + Complex::i_unit(wp_) * v2c;
}

Complex ResonantDefectSolver::mode_h2() const {
    Complex v1c(wp_), v2c(wp_);
    v_pair(x_, v1c, v2c);
    return v1c - Complex::i_unit(wp_) * v2c;
}

Complex ResonantDefectSolver::tail_w_units(const Complex& x, long lo, long hi) const {
    Complex s(wp_);
    if (hi <= lo) return s;
    Complex xc{Real(x.re, wp_), Real(x.im, wp_)};
    Complex ex = exp(xc);
    Complex xinv = Complex(1L, wp_) / xc;
    Complex xpow = exp(-log(xc) * Real(lo + 1, wp_));
    for (long k = lo + 1; k <= hi; ++k) {
        s += Complex(Real(table_.a[k], wp_)) * xpow * ex;
        xpow = xpow * xinv;
    }
    return s;
}

}  // namespace stokeslab::equations
