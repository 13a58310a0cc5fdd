#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stokeslab/numerics.hpp"
#include "stokeslab/precision.hpp"

namespace stokeslab::equations {

// Borel-plane singularity attached to the dominant exponential transition of
// an equation. `location` is the first singular point of the level-0 Borel
// transform in the table's frame; `beta_asym` is the exponent B in the
// beyond-all-orders term C e^{-lambda x} x^{-B} (1 + O(1/x)) measured in the
// same frame, which also drives the late-coefficient model
//   [x^{-(r+1)}-coefficient] ~ S Gamma(r - B + 1) / (2 pi i lambda^{r+1-B}).
struct StokesPoint {
    std::pair<Rational, Rational> location;  // (re, im), exact
    Rational beta_asym;
    bool invertible = true;

    Complex location_c(mpfr_prec_t prec) const {
        return {Real(location.first, prec), Real(location.second, prec)};
    }
};

// Custom linear recurrence a_{k+1} = sum_j P_j(k) a_{k-j} with rational
// polynomial coefficients; the JSON equation interface builds these.
struct CustomRecurrence {
    std::vector<std::vector<Rational>> poly;  // poly[j] = coefficients of P_j, low to high
    std::vector<Rational> seeds;              // a_0 ... a_{order-1}, order = poly.size()
};

enum class EquationKind { toy, airy, painleve1, resonant, custom };

struct EquationSpec {
    std::string name;
    EquationKind kind = EquationKind::custom;

    // prepared-frame data (normalization checks)
    std::vector<std::pair<Rational, Rational>> lambdas;  // exact (re, im)
    std::vector<Rational> betas_prepared;                // Re < 0 after the x^{-N} shift
    std::vector<long> ms;                                // m_i = 1 - floor(beta_i)
    std::vector<Rational> beta_primes;                   // beta_i + m_i

    int series_offset = 0;  // a_k multiplies x^{-k-offset}
    std::vector<StokesPoint> stokes_points;

    bool has_exact_oracle = false;
    bool has_stokes_oracle = false;
    bool resonant_family = false;
    Rational m_param;  // resonant only

    // known Stokes constant S = s_coeff * pi^{s_pi_power} * i, when available
    bool has_known_stokes = false;
    Rational s_coeff;
    int s_pi_power = 0;

    std::optional<CustomRecurrence> custom;

    Complex known_stokes(mpfr_prec_t prec) const;
    Complex lambda_c(size_t i, mpfr_prec_t prec) const {
        return {Real(lambdas[i].first, prec), Real(lambdas[i].second, prec)};
    }
};

// Exact coefficient table a_0..a_K of the formal series; regenerating at any
// precision changes no stored value.
struct CoefficientTable {
    std::string spec_name;
    long K = 0;
    int offset = 0;
    std::vector<Rational> a;
    std::vector<std::string> warnings;

    Real value(long k, mpfr_prec_t prec) const { return Real(a.at(k), prec); }
};

// Catalog construction. `params` currently understands {"m": ...} for the
// resonant family.
EquationSpec build_catalog_equation(const std::string& name,
                                    const std::map<std::string, Rational>& params = {});

// Custom equation from a recurrence description (see the JSON interface).
EquationSpec make_custom_equation(const std::string& name, CustomRecurrence rec, int series_offset,
                                  std::vector<std::pair<Rational, Rational>> lambdas,
                                  std::vector<StokesPoint> stokes_points);

std::vector<std::string> catalog_names();

CoefficientTable generate_coefficients(const EquationSpec& spec, long K);

// b_k = a_k / (k-1)!, defined for k >= 1.
std::vector<Rational> scaled_coefficients(const CoefficientTable& table);

// The distinguished solution at x:
//   toy       e^{-x} Ei(x) with the principal-branch Ei (PV on the real axis)
//   airy      2 sqrt(pi) z^{1/4} e^{t} Ai(z), z = (3t/2)^{2/3},  |arg t| < pi
//   resonant  series-anchored defect solution (variation of parameters over
//             the exact Bessel kernel)
// The returned value carries enough extra precision that subtracting an
// optimally truncated series leaves a meaningful remainder.
Complex exact_solution(const EquationSpec& spec, const Complex& x, const PrecisionContext& ctx);

// Independent connection-formula value of the airy catalog entry's Stokes
// constant: one-sided Ai values on the two branches, divided by the recessive
// series. Does not touch coefficient asymptotics.
Complex airy_stokes_oracle(const PrecisionContext& ctx);

// principal-branch Ei via its convergent series (toy oracle building block)
Complex ei_principal(const Complex& x, const PrecisionContext& ctx);

// ---- validity checkers -----------------------------------------------------

struct NonresonanceReport {
    bool pass_independence = true;  // condition (1)
    bool pass_directions = true;    // condition (2)
    std::vector<std::string> witnesses;
    bool pass() const { return pass_independence && pass_directions; }
};

// Checks Z-linear independence (coefficients bounded by `bound`) and distinct
// Stokes directions over every half-plane selected by the arrangement.
NonresonanceReport check_nonresonance(const std::vector<Complex>& lambdas, int bound,
                                      const PrecisionContext& ctx);

struct PreparedReport {
    bool pass_n3 = true;
    bool pass_n4 = true;
    std::vector<size_t> n6_selected;  // indices admissible for the given xi
    std::vector<std::string> notes;
    bool pass() const { return pass_n3 && pass_n4; }
};

PreparedReport check_prepared(const EquationSpec& spec, std::optional<double> xi,
                              const PrecisionContext& ctx);

// ---- resonant defect solver -------------------------------------------------
// w = e^x (y - yhat_{N}) solves w'' + (m^2/x) w = e^x (c1 x^{-N-1} + c2 x^{-N-2})
// with c1 = a_{N+1}, c2 = -N(N+1) a_N. The homogeneous kernel is exactly
// sqrt(x) Z_1(2 m sqrt(x)); this class carries the variation-of-parameters
// integrals along a path and anchors the distinguished solution on the series
// at a real point beyond the region of interest.
class ResonantDefectSolver {
public:
    ResonantDefectSolver(const CoefficientTable& table, const Rational& m, long n_ref,
                         const Real& base_point, mpfr_prec_t wp);

    // Fix the homogeneous content by matching the optimally truncated series
    // at real xa (path: straight segment base -> xa).
    void anchor(const Real& xa);

    // Continue the VP integrals along a straight segment to `to`.
    void advance(const Complex& to);

    Complex w_value() const;                    // w at the current point
    const Complex& current() const { return x_; }
    Complex mode_h1() const;                    // sqrt(x) H^(1)_1(2m sqrt x) at current point
    Complex mode_h2() const;

    // e^x sum_{k=lo+1}^{hi} a_k x^{-k}
    Complex tail_w_units(const Complex& x, long lo, long hi) const;

    long n_ref() const { return n_; }

private:
    Complex rho(const Complex& t) const;  // forcing e^t (c1 t^{-N-1} + c2 t^{-N-2})
    Complex v1(const Complex& t) const;   // sqrt(t) J_1(2m sqrt t)
    Complex v2(const Complex& t) const;   // sqrt(t) Y_1(2m sqrt t)
    void v_pair(const Complex& t, Complex& o1, Complex& o2) const;
    Complex w_particular(const Complex& t, const Complex& i1, const Complex& i2) const;

    const CoefficientTable& table_;
    mpfr_prec_t wp_;
    PrecisionContext ictx_;
    Real m_;
    long n_;
    Complex c1_, c2_;
    Complex x_;       // current point
    Complex i1_, i2_; // accumulated VP integrals from the base point
    Complex alpha_, beta_;
    bool anchored_ = false;
};

}  // namespace stokeslab::equations
