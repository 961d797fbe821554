#pragma once

// Complex vectors are stored realified as interleaved (re, im) pairs.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace jmcurv {

using Complex = std::complex<double>;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline RVec realify(const std::vector<Complex>& z) {
    RVec out(2 * static_cast<Eigen::Index>(z.size()));
    for (std::size_t k = 0; k < z.size(); ++k) {
        out[2 * k] = z[k].real();
        out[2 * k + 1] = z[k].imag();
    }
    return out;
}

inline std::vector<Complex> complexify(const RVec& x) {
    std::vector<Complex> out(static_cast<std::size_t>(x.size() / 2));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = {x[2 * k], x[2 * k + 1]};
    return out;
}

/// Multiplication by the imaginary unit: (x, y) -> (-y, x) per component.
inline RVec times_i(const RVec& x) {
    RVec out(x.size());
    for (Eigen::Index k = 0; k + 1 < x.size(); k += 2) {
        out[k] = -x[k + 1];
        out[k + 1] = x[k];
    }
    return out;
}

/// Multiplication by the complex scalar c.
inline RVec times(Complex c, const RVec& x) {
    return c.real() * x + c.imag() * times_i(x);
}

/// Realified inner product Re<a, b>.
inline double rdot(const RVec& a, const RVec& b) { return a.dot(b); }

} // namespace jmcurv
