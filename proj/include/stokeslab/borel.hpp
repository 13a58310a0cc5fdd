#pragma once

#include "stokeslab/equations.hpp"
#include "stokeslab/numerics.hpp"

namespace stokeslab::borel {

using equations::CoefficientTable;
using equations::EquationSpec;

enum class Side { above, below };

// Borel-plane representation of a coefficient table: Taylor germ at 0,
// rational continuation, and the recorded singularity lattice.
struct BorelFunction {
    std::string source;
    std::vector<Complex> taylor;              // b_k, Borel of x^{-k-1} -> p^k/k!
    std::vector<Complex> singularities;       // recorded singular points within reach
    Real radius{64};                          // min |singularity|, or huge when entire
    bool entire = false;
    bool closed_form_geometric = false;       // Y(p) = c / (1 - p/pole) exactly (toy)
    Complex geom_pole{64};
    Complex geom_scale{64};
    numerics::PadeApproximant pade_diag;      // [m/m]
    numerics::PadeApproximant pade_sub;       // [m-1/m]
    Real trust_radius{64};
    long bits = 0;
};

struct AverageSpec {
    double alpha = 0.5;  // weight of the lower continuation
    int depth = 1;       // singularity crossings retained (1 = first-singularity truncation)
};

BorelFunction borel_transform(const CoefficientTable& table, const EquationSpec& spec,
                              const PrecisionContext& ctx);

// Value of Y on the branch reached by a path passing on the given side of the
// singular ray. On the cut itself the value is Richardson-extrapolated from
// +-i delta displacements.
Complex continue_borel(const BorelFunction& bf, const Complex& p, Side side,
                       const PrecisionContext& ctx);

// Laplace sum along a contour indented to one side of the singular ray of the
// summation direction (direction = -arg x).
Complex lateral_laplace(const BorelFunction& bf, const Complex& x, Side side,
                        const PrecisionContext& ctx);

// (1-alpha) L^{above} + alpha L^{below}; depth > 1 adds the weighted
// multi-crossing corrections (closed-form continuation only).
Complex averaged_sum(const BorelFunction& bf, const Complex& x, const AverageSpec& avg,
                     const PrecisionContext& ctx);

struct JumpCheckReport {
    enum class Mode { pole_residue, entire } mode = Mode::pole_residue;
    Complex measured{64};   // Stokes constant from the continuation route
    Complex model{64};      // supplied estimate (extract_stokes or known value)
    double rel_deviation = 0.0;
    double max_jump = 0.0;  // entire mode: largest lateral jump found
    bool pass = false;
};

// First-singularity consistency check. For the integer-exponent catalog
// entries the Borel function has a simple-pole leading part at lambda_1 and
// the jump is distributional, so the check measures S = 2 pi i times the
// residue-like limit (lambda_1 - p) Y(p) (fitted with its z log z correction)
// and compares against the supplied estimate. Entire functions are checked
// for a vanishing lateral jump instead.
JumpCheckReport borel_jump_check(const BorelFunction& bf, const EquationSpec& spec,
                                 const Complex& s_estimate, const PrecisionContext& ctx);

}  // namespace stokeslab::borel
