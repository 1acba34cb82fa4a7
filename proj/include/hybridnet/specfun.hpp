#pragma once

#include <functional>
#include <stdexcept>

// Numerical kernel: Gauss hypergeometric function on the negative real
// axis, principal-branch Lambert W, and adaptive Gauss-Kronrod quadrature.

namespace hybridnet::specfun {

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    double tail_cutoff_tol = 1e-12;

    void validate() const {
        if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
        if (!(abs_tol >= 0.0)) throw std::invalid_argument("abs_tol must be >= 0");
        if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be >= 1");
    }
};

class NonConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Gauss hypergeometric function 2F1(a,b;c;z) for real parameters and
/// z <= 0, accurate to at least 10 significant digits.
double gauss_2f1(double a, double b, double c, double z);

/// Principal-branch Lambert W for x >= 0: the w >= 0 with w*e^w = x.
double lambert_w0(double x);

/// Adaptive quadrature of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

/// Integral of an eventually-decaying f over [a, inf): interval doubling
/// with a running tail cutoff, each segment resolved by `integrate`.
double integrate_semi_infinite(const std::function<double(double)>& f, double a,
                               const QuadratureSpec& spec = {});

}  // namespace hybridnet::specfun
