#pragma once

#include <stdexcept>
#include <string>

namespace reviham {

/// Base of every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A polynomial is not expressible in the invariants Delta_j (or Gamma_j).
class NotInvariant : public Error {
public:
    using Error::Error;
};

/// A field is not in the invariant normal-form class.
class ShapeViolation : public Error {
public:
    using Error::Error;
};

class NonSimpleSingularity : public Error {
public:
    using Error::Error;
};

/// A hypothesis required by an operation does not hold.
class PreconditionFailure : public Error {
public:
    PreconditionFailure(std::string hypothesis, const std::string& detail)
        : Error(hypothesis + ": " + detail), hypothesis_(std::move(hypothesis)) {}
    const std::string& hypothesis() const { return hypothesis_; }

private:
    std::string hypothesis_;
};

/// The cubic cross-coefficient product vanishes.
class NotGeneric : public Error {
public:
    using Error::Error;
};

/// A per-order linear system has no solution.
class SingularSystem : public Error {
public:
    SingularSystem(int degree, const std::string& detail)
        : Error("singular system at degree " + std::to_string(degree) + ": " + detail),
          degree_(degree) {}
    int degree() const { return degree_; }

private:
    int degree_;
};

/// A non-structural resonant monomial with nonzero coefficient blocks normalization.
class ResonanceError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& detail)
        : Error("line " + std::to_string(line) + ": " + detail), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class IntegrationError : public Error {
public:
    using Error::Error;
};

}  // namespace reviham
