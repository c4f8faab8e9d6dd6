/// @file errors.hpp
/// @brief Error taxonomy shared by the whole library.
///
/// Three kinds of failure are distinguished because the CLI maps them to
/// distinct exit codes:
///   * precondition / usage violations  -> std::domain_error or
///     std::invalid_argument (exit code 2),
///   * numeric failures (precision exhaustion, vanishing denominators at an
///     evaluation point)                -> qhomfly::numeric_error (exit 3),
///   * broken internal exactness invariants (an exact division that leaves a
///     remainder, an oracle mismatch)   -> qhomfly::internal_error (exit 4).
#pragma once

#include <stdexcept>
#include <string>

namespace qhomfly {

/// A numeric evaluation could not be completed at the requested (or any
/// escalated) working precision, or hit a vanishing denominator.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what_arg)
        : std::runtime_error("qhomfly numeric failure: " + what_arg) {}
};

/// An internal exactness invariant failed.  This always signals a bug (or a
/// corrupted fixture), never bad user input.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what_arg)
        : std::logic_error("qhomfly internal inconsistency: " + what_arg) {}
};

}  // namespace qhomfly
