#pragma once

#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace snlevy::detail {

// Adaptive Gauss-Kronrod (G7,K15) on a finite interval. tol is the target on
// the relative error estimate; the integrands here are smooth apart from
// isolated kinks, which the subdivision absorbs.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12) {
    if (a == b) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, 15, tol);
}

// Same, but refuses to return a value whose error estimate exceeds the gate.
template <class F>
double integrate_checked(F&& f, double a, double b, double tol, double abs_gate,
                         const char* who) {
    if (a == b) return 0.0;
    double err = 0.0;
    double val = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, 15, tol, &err);
    if (!(err <= abs_gate * std::max(1.0, std::abs(val))))
        throw std::runtime_error(std::string(who) + ": quadrature tolerance not met");
    return val;
}

// int_0^inf f for exponentially decaying integrands.
template <class F>
double integrate_semi_inf(F&& f, double tol = 1e-12) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(std::forward<F>(f), tol);
}

}  // namespace snlevy::detail
