#include "hybridnet/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace hybridnet::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && std::abs(x - std::round(x)) < 1e-12;
}

// Plain hypergeometric power series sum_n (p)_n (q)_n / ((r)_n n!) x^n.
// Caller guarantees |x| < 1 (or a terminating numerator parameter).
double series_2f1(double p, double q, double r, double x, long max_terms) {
    double term = 1.0;
    double sum = 1.0;
    int small_streak = 0;
    for (long n = 0; n < max_terms; ++n) {
        const double dn = static_cast<double>(n);
        term *= (p + dn) * (q + dn) / ((r + dn) * (1.0 + dn)) * x;
        if (term == 0.0) return sum;
        sum += term;
        if (std::abs(term) <= kEps * std::abs(sum)) {
            // require the term-ratio to be safely contracting before accepting
            if (++small_streak >= 2 && std::abs(x) < 1.0) return sum;
        } else {
            small_streak = 0;
        }
    }
    throw NonConvergenceError("2F1 series did not converge within iteration budget");
}

// Terminating case: one of the numerator parameters is a non-positive integer.
double polynomial_2f1(double p, double q, double r, double z) {
    const long degree = std::lround(-p);
    double term = 1.0;
    double sum = 1.0;
    for (long n = 0; n < degree; ++n) {
        const double dn = static_cast<double>(n);
        term *= (p + dn) * (q + dn) / ((r + dn) * (1.0 + dn)) * z;
        sum += term;
    }
    return sum;
}

// Pfaff transformation: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)).
double pfaff_2f1(double a, double b, double c, double z, long max_terms) {
    const double w = z / (z - 1.0);
    // transform on the parameter of smaller magnitude
    if (std::abs(a) <= std::abs(b))
        return std::pow(1.0 - z, -a) * series_2f1(a, c - b, c, w, max_terms);
    return std::pow(1.0 - z, -b) * series_2f1(c - a, b, c, w, max_terms);
}

// log |Gamma(c) Gamma(b-a) / (Gamma(b) Gamma(c-a))| together with its sign;
// returns sign 0 when a denominator gamma sits on a pole (coefficient = 0).
struct SignedLog {
    double log = 0.0;
    int sign = 1;
};

SignedLog gamma_ratio(double num1, double num2, double den1, double den2) {
    SignedLog out;
    for (double d : {den1, den2}) {
        if (is_nonpositive_integer(d)) {
            out.sign = 0;
            return out;
        }
    }
    auto acc = [&out](double x, int dir) {
        int sgn = 1;
        const double lg = std::lgamma(x);
        if (x < 0.0 && static_cast<long>(std::floor(x)) % 2 != 0) sgn = -1;
        out.log += dir * lg;
        if (sgn < 0) out.sign = -out.sign;
    };
    acc(num1, +1);
    acc(num2, +1);
    acc(den1, -1);
    acc(den2, -1);
    return out;
}

// Linear transformation in 1/(1-z) (DLMF 15.8 family), valid for z < 0 and
// b-a not an integer:
//   2F1(a,b;c;z) = G(c,b-a;b,c-a) u^a  2F1(a, c-b; a-b+1; u)
//                + G(c,a-b;a,c-b) u^b  2F1(b, c-a; b-a+1; u),  u = 1/(1-z).
double connection_2f1(double a, double b, double c, double z) {
    const double u = 1.0 / (1.0 - z);
    double total = 0.0;
    const SignedLog c1 = gamma_ratio(c, b - a, b, c - a);
    if (c1.sign != 0)
        total += c1.sign * std::exp(c1.log + a * std::log(u)) *
                 series_2f1(a, c - b, a - b + 1.0, u, 4000);
    const SignedLog c2 = gamma_ratio(c, a - b, a, c - b);
    if (c2.sign != 0)
        total += c2.sign * std::exp(c2.log + b * std::log(u)) *
                 series_2f1(b, c - a, b - a + 1.0, u, 4000);
    return total;
}

// Euler-integral path for the shape 2F1(q, p; p+1; z) with p > 0:
//   p * int_0^1 t^{p-1} (1 - z t)^{-q} dt,
// robust for arbitrarily large |z| on the negative axis.
double lerch_2f1(double p, double q, double z) {
    QuadratureSpec spec;
    spec.rel_tol = 1e-13;
    spec.abs_tol = 0.0;
    spec.max_subdivisions = 4000;
    if (p >= 1.0) {
        auto f = [&](double t) { return std::pow(t, p - 1.0) * std::pow(1.0 - z * t, -q); };
        return p * integrate(f, 0.0, 1.0, spec);
    }
    // substitute t = v^{1/p} to remove the endpoint singularity
    auto f = [&](double v) {
        const double t = std::pow(v, 1.0 / p);
        return std::pow(1.0 - z * t, -q);
    };
    return integrate(f, 0.0, 1.0, spec);
}

}  // namespace

double gauss_2f1(double a, double b, double c, double z) {
    if (!(z <= 0.0)) throw std::domain_error("gauss_2f1: requires z <= 0");
    if (is_nonpositive_integer(c)) throw std::domain_error("gauss_2f1: c is a non-positive integer");
    if (z == 0.0) return 1.0;
    if (is_nonpositive_integer(a)) return polynomial_2f1(a, b, c, z);
    if (is_nonpositive_integer(b)) return polynomial_2f1(b, a, c, z);
    if (z >= -1.0) return pfaff_2f1(a, b, c, z, 2000);

    const double d = b - a;
    if (std::abs(d - std::round(d)) > 1e-3) return connection_2f1(a, b, c, z);
    if (std::abs(c - (a + 1.0)) < 1e-12 && a > 0.0) return lerch_2f1(a, b, z);
    if (std::abs(c - (b + 1.0)) < 1e-12 && b > 0.0) return lerch_2f1(b, a, z);
    // degenerate parameter difference at large |z|: slow but convergent
    return pfaff_2f1(a, b, c, z, 600000);
}

double lambert_w0(double x) {
    if (x < 0.0) throw std::domain_error("lambert_w0: requires x >= 0");
    if (x == 0.0) return 0.0;
    double w;
    if (x < 1.0) {
        w = x * (1.0 - x);  // W(x) = x - x^2 + ...
    } else {
        const double l1 = std::log(x);
        w = l1 > 1.0 ? l1 - std::log(l1) : 0.5 * l1;
    }
    for (int iter = 0; iter < 60; ++iter) {
        const double e = std::exp(w);
        const double p = w * e - x;
        if (std::abs(p) <= 1e-13 * x) return w;
        // Halley step
        const double dw = p / (e * (w + 1.0) - (w + 2.0) * p / (2.0 * w + 2.0));
        w -= dw;
    }
    const double res = std::abs(w * std::exp(w) - x);
    if (res > 1e-12 * x) throw NonConvergenceError("lambert_w0: residual target not reached");
    return w;
}

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK tables).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b, value, error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(mid);
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        k15 += kWgk[i] * fsum;
        if (i % 2 == 1) g7 += kWg[i / 2] * fsum;
    }
    k15 *= half;
    g7 *= half;
    double err = std::abs(k15 - g7);
    err = 200.0 * err * std::sqrt(200.0 * err < 1.0 ? 200.0 * err : 1.0);
    if (!(err > 0.0)) err = std::abs(k15) * kEps * 50.0;
    return {a, b, k15, err};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
    spec.validate();
    if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
    if (a == b) return 0.0;

    std::vector<Panel> panels;
    panels.push_back(gk15(f, a, b));
    double total = panels[0].value;
    double total_err = panels[0].error;

    auto worse = [](const Panel& x, const Panel& y) { return x.error < y.error; };
    std::make_heap(panels.begin(), panels.end(), worse);

    for (int n = 1; n < spec.max_subdivisions; ++n) {
        if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) return total;
        std::pop_heap(panels.begin(), panels.end(), worse);
        const Panel top = panels.back();
        panels.pop_back();
        const double mid = 0.5 * (top.a + top.b);
        if (mid <= top.a || mid >= top.b) {
            // interval exhausted at machine resolution; keep its estimate
            total_err -= top.error;
            continue;
        }
        const Panel left = gk15(f, top.a, mid);
        const Panel right = gk15(f, mid, top.b);
        total += left.value + right.value - top.value;
        total_err += left.error + right.error - top.error;
        panels.push_back(left);
        std::push_heap(panels.begin(), panels.end(), worse);
        panels.push_back(right);
        std::push_heap(panels.begin(), panels.end(), worse);
    }
    if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) return total;
    throw NonConvergenceError("integrate: max_subdivisions exhausted");
}

double integrate_semi_infinite(const std::function<double(double)>& f, double a,
                               const QuadratureSpec& spec) {
    spec.validate();
    double length = std::max(1.0, std::abs(a));
    double lo = a;
    double total = 0.0;
    int quiet_segments = 0;
    for (int k = 0; k < 64; ++k) {
        const double hi = lo + length;
        const double seg = integrate(f, lo, hi, spec);
        total += seg;
        const double scale = std::max(std::abs(total), spec.abs_tol);
        if (std::abs(seg) <= spec.tail_cutoff_tol * scale) {
            if (++quiet_segments >= 2) return total;
        } else {
            quiet_segments = 0;
        }
        lo = hi;
        length *= 2.0;
    }
    throw NonConvergenceError("integrate_semi_infinite: decay not detected within doubling budget");
}

}  // namespace hybridnet::specfun
