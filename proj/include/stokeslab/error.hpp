#pragma once

#include <stdexcept>
#include <string>

namespace stokeslab {

// Error categories surfaced by the toolkit. The CLI maps configuration
// problems to exit code 2 and numerical diagnostics to exit code 3.
enum class errc {
    bad_parameter,
    unknown_equation,
    pole_of_gamma,
    insufficient_data,
    singular_pade,
    nondecaying_ray,
    quad_nonconvergence,
    table_too_short,
    no_reference,
    oracle_unavailable,
    oscillation_detected,
    non_convergence,
    unsupported_depth,
    at_singularity,
    outside_trust_region,
    mode_separation_failure,
    model_unavailable,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::bad_parameter: return "bad-parameter";
        case errc::unknown_equation: return "unknown-equation";
        case errc::pole_of_gamma: return "pole-of-gamma";
        case errc::insufficient_data: return "insufficient-data";
        case errc::singular_pade: return "singular-pade";
        case errc::nondecaying_ray: return "non-decaying-ray";
        case errc::quad_nonconvergence: return "quadrature-nonconvergence";
        case errc::table_too_short: return "table-too-short";
        case errc::no_reference: return "no-reference";
        case errc::oracle_unavailable: return "oracle-unavailable";
        case errc::oscillation_detected: return "oscillation-detected";
        case errc::non_convergence: return "non-convergence";
        case errc::unsupported_depth: return "unsupported-depth";
        case errc::at_singularity: return "at-singularity";
        case errc::outside_trust_region: return "outside-trust-region";
        case errc::mode_separation_failure: return "mode-separation-failure";
        case errc::model_unavailable: return "model-unavailable";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace stokeslab
