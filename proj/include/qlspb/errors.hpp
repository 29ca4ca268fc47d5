#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qlspb {

/// Base class for all qlspb errors. Subclasses split into two families that
/// map onto the CLI exit codes: ValidationError -> 2, NumericalError -> 3.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

/// Argument outside its documented domain.
class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Malformed input file; message carries line/field context.
class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Linear system too close to singular to solve.
class SingularMatrixError : public NumericalError {
public:
    SingularMatrixError(const std::string& what, double sigma_min)
        : NumericalError(what), sigma_min(sigma_min) {}
    double sigma_min;
};

/// A singular value fell strictly between the kernel threshold and the
/// promised spectral floor 1/kappa.
class GapViolationError : public NumericalError {
public:
    GapViolationError(const std::string& what, double offending_sigma)
        : NumericalError(what), offending_sigma(offending_sigma) {}
    double offending_sigma;
};

/// Reflection run whose success probability collapsed below tolerance.
class DegenerateSuccessError : public NumericalError {
public:
    DegenerateSuccessError(const std::string& what, double p_succ)
        : NumericalError(what), p_succ(p_succ) {}
    double p_succ;
};

/// Projection input (numerically) orthogonal to the kernel.
class FilterDivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Rejection sampling could not land inside the requested condition-number
/// band; carries the kappa values of all attempts for diagnosis.
class BandInfeasibleError : public NumericalError {
public:
    BandInfeasibleError(const std::string& what, std::vector<double> attempts)
        : NumericalError(what), attempt_kappas(std::move(attempts)) {}
    std::vector<double> attempt_kappas;
};

/// Calibration target unreachable even at the smallest bracketed eta.
class InfeasibleTargetError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Filter requested although the input already meets the target error.
class NoOpFilterError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DivergentCostError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class EmptyComparisonError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Integrand returned a non-finite value; message names the node.
class EvaluationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace qlspb
