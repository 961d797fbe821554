#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jmcurv {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two bodies closer than the collision tolerance.
class CollisionError : public Error {
public:
    CollisionError(std::size_t i, std::size_t j, double distance)
        : Error("collision between bodies " + std::to_string(i + 1) + " and " +
                std::to_string(j + 1) + " (distance " + std::to_string(distance) + ")"),
          first_(i), second_(j), distance_(distance) {}

    /// Zero-based indices of the colliding pair.
    std::size_t first() const noexcept { return first_; }
    std::size_t second() const noexcept { return second_; }
    double distance() const noexcept { return distance_; }

private:
    std::size_t first_;
    std::size_t second_;
    double distance_;
};

class ZeroPointError : public Error {
public:
    ZeroPointError() : Error("reduced point has zero norm") {}
};

/// Tangent pair is not orthonormal or not horizontal.
class FrameError : public Error {
public:
    using Error::Error;
};

class IllConditionedError : public Error {
public:
    using Error::Error;
};

} // namespace jmcurv
