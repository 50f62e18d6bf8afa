#pragma once

#include <stdexcept>
#include <string>

namespace dmef {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// -- model construction -------------------------------------------------

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class SingularNoiseMap : public Error {
public:
    using Error::Error;
};

class UnknownNodeId : public Error {
public:
    using Error::Error;
};

class DuplicateLink : public Error {
public:
    using Error::Error;
};

class NonSymmetricWeight : public Error {
public:
    using Error::Error;
};

class UnknownCase : public Error {
public:
    using Error::Error;
};

/// File-level problems: malformed JSON, schema violations, unknown keys.
class ParseError : public Error {
public:
    using Error::Error;
};

// -- vectorization ------------------------------------------------------

class BadDimension : public Error {
public:
    using Error::Error;
};

// -- design recovery ----------------------------------------------------

class InfeasibleInput : public Error {
public:
    using Error::Error;
};

class RecoveredZbarNotPD : public Error {
public:
    using Error::Error;
};

class SingularInitialWeight : public Error {
public:
    using Error::Error;
};

class Phase1Infeasible : public Error {
public:
    using Error::Error;
};

// -- Riccati integration ------------------------------------------------

class LostPositivity : public Error {
public:
    LostPositivity(double t, double min_eig)
        : Error("Riccati solution lost positive definiteness at t=" + std::to_string(t) +
                " (min eigenvalue " + std::to_string(min_eig) + ")"),
          time(t),
          min_eigenvalue(min_eig) {}
    double time;
    double min_eigenvalue;
};

class Unbounded : public Error {
public:
    Unbounded(double t, double norm)
        : Error("Riccati solution exceeded the boundedness threshold at t=" + std::to_string(t) +
                " (max |entry| " + std::to_string(norm) + ")"),
          time(t),
          norm(norm) {}
    double time;
    double norm;
};

class NoConvergence : public Error {
public:
    explicit NoConvergence(double t_max)
        : Error("Riccati equation did not reach steady state by t=" + std::to_string(t_max)),
          t_max(t_max) {}
    double t_max;
};

class BadStep : public Error {
public:
    using Error::Error;
};

}  // namespace dmef
