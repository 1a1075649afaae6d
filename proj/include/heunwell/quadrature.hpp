#pragma once

// Thin wrappers around Boost.Math quadrature used across the library.

#include <functional>

namespace heunwell::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
};

/// Integral over [0, 1] of f(t, distance_to_nearest_endpoint). The second
/// argument lets integrands form 1 - t without cancellation near t = 1.
/// Double-exponential (tanh-sinh) rule; tolerates integrable algebraic
/// endpoint singularities.
Result unit_interval(const std::function<double(double t, double left, double right)>& f,
                     double rel_tol = 1e-12);

/// Adaptive Gauss-Kronrod (15 point) over a finite interval.
Result gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-12, unsigned max_depth = 30);

}  // namespace heunwell::quad
