#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace kron {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file or command-line value.
struct ParseError : Error {
    using Error::Error;
};

/// A documented operation precondition does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

/// Interval refinement hit the precision cap without deciding a sign.
struct PrecisionError : Error {
    using Error::Error;
};

/// No admissible witness at some stage of the recursion: the finite-scale
/// failure of wideness for the supplied set.
struct ExhaustionError : Error {
    ExhaustionError(std::size_t stage_idx, mpz_class mod, const std::string& what)
        : Error(what), stage(stage_idx), modulus(std::move(mod)) {}
    std::size_t stage;
    mpz_class modulus;
};

/// A re-checked certificate or a constructed object failed exact verification.
struct CertificateError : Error {
    using Error::Error;
};

}  // namespace kron
