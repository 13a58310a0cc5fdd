#pragma once

#include "stokeslab/equations.hpp"

namespace stokeslab::truncation {

using equations::CoefficientTable;
using equations::EquationSpec;

struct TruncationReport {
    Complex x;
    long N = 0;
    Complex partial_sum;
    Complex least_term;
    Complex remainder;
    Real ratio{64};  // |remainder| / |least_term|
};

enum class Reference { exact_oracle, balanced_sum };

// Global argmin of |a_k x^{-k-offset}| over the table, zero coefficients
// skipped, ties toward smaller k. Requires K >= |x| + 10.
long least_term_index(const CoefficientTable& table, const Complex& x);

// sum_{k=0}^{N} a_k x^{-k-offset}, accumulated at working precision plus
// enough dynamic-range guard that the least term stays resolved.
Complex truncated_sum(const CoefficientTable& table, const Complex& x, long N,
                      const PrecisionContext& ctx);

Real least_term_magnitude(const CoefficientTable& table, const Complex& x,
                          const PrecisionContext& ctx);

// Least-term truncation error against a reference solution. For
// reference = exact_oracle the oracle is corrected to the balanced solution of
// the ray of x (the optimal-truncation theorem requires the reference carry no
// exponential on the unit circle); `extra_c` adds extra_c * e^{-lambda_1 x}
// x^{-B} to the reference, exercising the necessity of that condition.
TruncationReport truncation_error(const EquationSpec& spec, const CoefficientTable& table,
                                  const Complex& x, Reference reference, const PrecisionContext& ctx,
                                  const Complex* extra_c = nullptr);

// the ray-balanced reference solution used by truncation_error
Complex balanced_reference(const EquationSpec& spec, const Complex& x, const PrecisionContext& ctx);

}  // namespace stokeslab::truncation
