#include "heunwell/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace heunwell::quad {

Result unit_interval(const std::function<double(double, double, double)>& f, double rel_tol) {
    thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
    auto g = [&](double t, double tc) {
        // Boost passes tc = a - t (< 0) near the left end and b - t near the right.
        const double left = tc < 0 ? -tc : t;
        const double right = tc < 0 ? 1.0 - t : tc;
        return f(t, left, right);
    };
    Result r;
    double l1 = 0.0;
    r.value = integrator.integrate(g, 0.0, 1.0, rel_tol, &r.error, &l1);
    return r;
}

Result gauss_kronrod(const std::function<double(double)>& f, double a, double b, double rel_tol,
                     unsigned max_depth) {
    Result r;
    double l1 = 0.0;
    r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, max_depth, rel_tol,
                                                                          &r.error, &l1);
    return r;
}

}  // namespace heunwell::quad
