#pragma once

#include <complex>

#include "stokeslab/borel.hpp"
#include "stokeslab/equations.hpp"

namespace stokeslab::berry {

using equations::CoefficientTable;
using equations::EquationSpec;

// least-squares fit of C(omega) = (S/2) erf((omega - center)/width) + offset
struct ErfFit {
    std::complex<double> s_fit;   // total transition amplitude (2 x erf coefficient)
    std::complex<double> offset;
    double center = 0.0;
    double width = 0.0;           // sqrt(2) when held fixed
    double residual_rms = 0.0;
};

ErfFit fit_erf(const std::vector<double>& ts, const std::vector<std::complex<double>>& cs,
               bool free_width);

struct BerryScan {
    std::string spec_name;
    long r = 0;
    std::vector<double> omega;
    std::vector<Complex> measured;  // measured_C per grid point
    ErfFit fit;
    std::vector<std::string> warnings;
};

// Thm-BS scan: x = r e^{i Omega / sqrt r}; measured_C = (reference - optimally
// truncated sum) / (e^{-x} x^{-B}); reference = exact oracle when available,
// otherwise the averaged sum.
BerryScan berry_scan(const EquationSpec& spec, const CoefficientTable& table, long r,
                     const std::vector<double>& omega_grid, const borel::AverageSpec& avg,
                     const PrecisionContext& ctx);

struct AlphaSweep {
    std::vector<double> alphas;
    std::vector<long> rs;
    std::vector<std::vector<double>> ratios;  // [alpha][r]: |error| / |least term|
    std::vector<double> slopes;               // log-log slope per alpha
};

// Error-versus-least-term growth on the Stokes line under the alpha-average.
AlphaSweep alpha_sweep(const EquationSpec& spec, const CoefficientTable& table,
                       const std::vector<long>& r_grid, const std::vector<double>& alpha_set,
                       const PrecisionContext& ctx);

struct ResonantFit {
    std::complex<double> a_plus;
    std::complex<double> a_minus;
    double residual_rms = 0.0;
    double window_rms = 0.0;
};

// Fits b_k k^{-1/4} ~ A+ e^{2im sqrt k} + A- e^{-2im sqrt k} over the window.
ResonantFit resonant_coefficient_fit(const Rational& m, const CoefficientTable& table,
                                     std::pair<long, long> k_window, const PrecisionContext& ctx);

struct ResonantBerryScan {
    Rational m;
    long r = 0;
    std::vector<double> beta;
    std::vector<std::complex<double>> c_plus, c_minus;  // WKB-normalized mode coefficients
    ErfFit fit_plus, fit_minus;
    double worst_conditioning = 0.0;
    long window = 0, stride = 0;
};

// Two-mode Berry scan of the resonant family: remainders against the pinned
// truncation at index r' are projected, per beta, onto the exact homogeneous
// pair sqrt(x) H^(1,2)_1(2m sqrt x) over an r'-window, then rescaled to the
// WKB normalization x^{1/4} e^{+-2im sqrt x}.
ResonantBerryScan resonant_berry_scan(const Rational& m, long r, const std::vector<double>& beta_grid,
                                      const PrecisionContext& ctx);

}  // namespace stokeslab::berry
