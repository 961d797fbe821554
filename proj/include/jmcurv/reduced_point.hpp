#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "jmcurv/error.hpp"
#include "jmcurv/realified.hpp"

namespace jmcurv {

/// A nonzero point of the center-of-mass space C^{n-1}, realified.
/// Represents the shape C* p.
class ReducedPoint {
public:
    explicit ReducedPoint(RVec coords) : coords_(std::move(coords)) {
        if (coords_.size() < 4 || coords_.size() % 2 != 0)
            throw std::invalid_argument("reduced point needs 2(n-1) reals with n >= 3");
        if (coords_.norm() == 0.0)
            throw ZeroPointError();
    }

    static ReducedPoint from_complex(const std::vector<Complex>& z) {
        return ReducedPoint(realify(z));
    }

    /// Number of bodies.
    std::size_t bodies() const noexcept { return static_cast<std::size_t>(coords_.size() / 2) + 1; }
    const RVec& coords() const noexcept { return coords_; }
    double norm() const { return coords_.norm(); }

private:
    RVec coords_;
};

} // namespace jmcurv
