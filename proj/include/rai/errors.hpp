#pragma once

#include <stdexcept>
#include <string>

namespace rai {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotFound : Error {
    using Error::Error;
};
struct NotRegistered : Error {
    using Error::Error;
};
struct DegenerateClass : Error {
    using Error::Error;
};
struct DegenerateStudent : Error {
    using Error::Error;
};
struct ShapeError : Error {
    using Error::Error;
};
struct UndefinedCorrelation : Error {
    using Error::Error;
};
struct InsufficientSamples : Error {
    using Error::Error;
};
struct RangeError : Error {
    using Error::Error;
};
struct EmptyInput : Error {
    using Error::Error;
};
struct NumericalError : Error {
    using Error::Error;
};
struct UndefinedScore : Error {
    using Error::Error;
};
struct NoValidClustering : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};
struct IntegrityError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace rai
