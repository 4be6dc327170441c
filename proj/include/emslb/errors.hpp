#pragma once

#include <stdexcept>
#include <string>

namespace emslb {

// Base of every error raised by the library. The CLI maps NumericalAccuracyError
// to exit code 3 and everything else raised during validation to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Zero-length direction vectors, coincident points, zero range.
class DegenerateGeometry : public Error {
public:
    using Error::Error;
};

// Azimuth is undefined at phi = 0, so anything differentiating through theta fails there.
class PoleSingularity : public Error {
public:
    using Error::Error;
};

// Information matrix too ill-conditioned to invert.
class UnidentifiableParameters : public Error {
public:
    UnidentifiableParameters(const std::string& what, double condition)
        : Error(what), condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

class NumericalAccuracyError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

} // namespace emslb
