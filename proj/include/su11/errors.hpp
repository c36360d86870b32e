#pragma once

#include <stdexcept>
#include <string>

namespace su11 {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configuration field is out of its allowed range (or non-finite).
class OutOfRangeError : public Error {
public:
    OutOfRangeError(std::string field, const std::string& detail)
        : Error("out of range: " + field + " (" + detail + ")"), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// The low-gain closed-form model was evaluated outside its validity regime.
class ModelOutOfRegimeError : public Error {
public:
    explicit ModelOutOfRegimeError(const std::string& msg) : Error("model out of regime: " + msg) {}
};

/// A count record contains a zero where a ratio denominator is needed.
class ZeroCountsError : public Error {
public:
    explicit ZeroCountsError(const std::string& msg) : Error("zero counts: " + msg) {}
};

/// The least-squares calibration fit did not converge to an acceptable residual.
class FitDivergedError : public Error {
public:
    FitDivergedError(const std::string& msg, double residual)
        : Error("fit diverged: " + msg), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// The finite-difference derivative estimate is numerically unreliable.
class DerivativeUnstableError : public Error {
public:
    explicit DerivativeUnstableError(const std::string& msg)
        : Error("derivative unstable: " + msg) {}
};

/// Both internal transmissions are zero; no reflectivity can be defined.
class DegenerateTransmissionsError : public Error {
public:
    DegenerateTransmissionsError() : Error("degenerate transmissions: T_A = T_B = 0") {}
};

} // namespace su11
