#pragma once

#include <stdexcept>
#include <string>

namespace gossiploc {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two nodes of an edge occupy (numerically) the same point.
struct CoincidentNodes : Error {
    using Error::Error;
};

/// A vector expected to have unit norm does not.
struct NonUnitInput : Error {
    using Error::Error;
};

/// A node with no neighbors cannot take part in gossip.
struct IsolatedNode : Error {
    using Error::Error;
};

/// Fewer than two beacons; the grounded Laplacian cannot be definite.
struct TooFewBeacons : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

/// The follower block of the expected Laplacian is not invertible.
struct SingularGroundedLaplacian : Error {
    using Error::Error;
};

struct InsufficientData : Error {
    using Error::Error;
};

/// No slot count within the search horizon satisfied the epsilon criterion.
struct BoundNotReached : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct InvalidParams : Error {
    using Error::Error;
};

}  // namespace gossiploc
