#pragma once

#include "stokeslab/equations.hpp"

namespace stokeslab::stokes {

using equations::CoefficientTable;
using equations::EquationSpec;

struct StokesEstimate {
    int j = 0;
    Complex value{64};
    std::vector<Complex> raw;  // S_est(r) over the window
    long r_begin = 0;
    int richardson_order = 0;
    Real error_estimate{64};  // |difference of the last two extrapolation orders|
};

// Inverts the late-coefficient model
//   [x^{-(r+1)}-coefficient] = S Gamma(r - B + 1) / (2 pi i lambda^{r+1-B}) (1 + O(1/r))
// over the window and Richardson-extrapolates. Requires a single dominant
// singularity; an unstable extrapolation (equimodular mixture, resonance)
// raises oscillation-detected.
StokesEstimate extract_stokes(const CoefficientTable& table, const EquationSpec& spec, int j,
                              std::pair<long, long> r_window, int richardson_order,
                              const PrecisionContext& ctx);

struct DingleReport {
    double spread = 0.0;       // max unwrapped phase difference over the window
    double stokes_angle = 0.0; // phi_j
    double ray_angle = 0.0;    // arg x
    bool on_stokes_line = false;
    bool pass = false;         // spread < eps exactly when on the line
    double eps = 0.05;
};

// Rule-of-signs check: the late terms a_k x^{-k-offset} share a common phase
// exactly on the Stokes line of the dominant singularity.
DingleReport dingle_phase_check(const CoefficientTable& table, const EquationSpec& spec, int j,
                                const Complex& x, long window_width, const PrecisionContext& ctx);

// Reads C +- S/2 off the solution along the anti-Stokes curves: the limit of
// y(x) x^{B} e^{lambda_1 x} along paths where |x^{-B} e^{-lambda_1 x}| -> 1,
// with y = distinguished solution + C_reference e^{-lambda_1 x} x^{-B}.
Complex antistokes_constant(const EquationSpec& spec, const Complex& c_reference, int direction,
                            const std::vector<long>& r_grid, const PrecisionContext& ctx);

}  // namespace stokeslab::stokes
