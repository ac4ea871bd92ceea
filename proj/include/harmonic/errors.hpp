#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace harmonic {

using Complex = std::complex<double>;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed function text. `position()` is a 0-based byte offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Evaluation hit a pole (division by a vanishing value).
class PoleError : public Error {
public:
    explicit PoleError(Complex z)
        : Error("pole encountered at (" + std::to_string(z.real()) + ", " +
                std::to_string(z.imag()) + ")"),
          z_(z) {}
    Complex where() const noexcept { return z_; }

private:
    Complex z_;
};

/// An operation needs the rational canonical form but the function has none.
class NotRationalError : public Error {
public:
    using Error::Error;
};

/// Series division by a series whose constant term vanishes.
class SeriesError : public Error {
public:
    using Error::Error;
};

/// A precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The mapping (numerically) vanishes on the curve used for a winding.
class ZeroOnCurveError : public Error {
public:
    explicit ZeroOnCurveError(Complex z)
        : Error("function vanishes on the curve near (" + std::to_string(z.real()) + ", " +
                std::to_string(z.imag()) + ")"),
          z_(z) {}
    Complex where() const noexcept { return z_; }

private:
    Complex z_;
};

/// Adaptive phase tracking needed more bisection levels than allowed.
class BisectionCapError : public Error {
public:
    using Error::Error;
};

/// The zero at the queried point lies on a curve of zeros.
class NonIsolatedZeroError : public Error {
public:
    using Error::Error;
};

/// Windings on shrinking circles never settled.
class InstabilityError : public Error {
public:
    using Error::Error;
};

/// Rational type not covered by the global winding formula.
class UncoveredTypeError : public Error {
public:
    using Error::Error;
};

/// The point handed to the index dispatcher is neither a zero nor a pole.
class NotExceptionalError : public Error {
public:
    using Error::Error;
};

/// An exceptional point lies on the audit curve.
class PointOnCurveError : public Error {
public:
    using Error::Error;
};

/// Phase reading from a rendered image failed (gray pixel or phase jump).
class PortraitError : public Error {
public:
    using Error::Error;
};

}  // namespace harmonic
