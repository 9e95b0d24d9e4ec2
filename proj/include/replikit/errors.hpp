#pragma once

#include <stdexcept>
#include <string>

namespace replikit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrecisionExceeded : Error {
    using Error::Error;
};
struct GridError : Error {
    using Error::Error;
};
struct UnknownLabel : Error {
    using Error::Error;
};
struct KindUnavailable : Error {
    using Error::Error;
};
struct IncompleteResidues : Error {
    using Error::Error;
};
struct UnresolvedIndex : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
struct MissingDependency : Error {
    using Error::Error;
};
struct SeedConflict : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

} // namespace replikit
