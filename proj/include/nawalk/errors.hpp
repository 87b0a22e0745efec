#pragma once

#include <stdexcept>
#include <string>

namespace nawalk {

enum class Errc {
    // field arithmetic
    division_by_zero,
    context_mismatch,
    non_positive_argument,
    infinitely_large,
    incompatible_denominator,
    parse_error,
    // graphs
    unknown_vertex,
    not_symmetric,
    loop_present,
    not_connected,
    non_positive_weight,
    // solvers
    boundary_empty,
    disconnected_set,
    singular_system,
    size_cap_exceeded,
    // walks / synthesis
    symmetry_violation,
    diagonal_violation,
    order_violation,
    cycle_detected,
    // driver
    budget_exhausted,
    usage,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace nawalk
