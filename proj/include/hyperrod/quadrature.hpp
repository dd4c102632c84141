#pragma once

#include <cstddef>
#include <functional>

namespace hyperrod::quadrature {

/// Abscissa handed to the integrand together with its distances to both
/// interval ends. The distances are computed without cancellation, so an
/// integrand with a factor (hi - x)^e can use `to_hi` directly.
struct Point {
    double x;
    double from_lo;
    double to_hi;
};

using PointIntegrand = std::function<double(const Point&)>;
using Integrand = std::function<double(double)>;

struct Tolerances {
    double rtol = 1e-10;
    double atol = 1e-14;
    std::size_t max_subdivisions = 2000;
};

/// Integration problem. `lo_exponent`/`hi_exponent` hint an algebraic
/// endpoint behaviour f ~ (x - lo)^e resp. (hi - x)^e; zero means regular.
/// Hints must be > -1.
struct IntegrandSpec {
    PointIntegrand f;
    double lo = 0.0;
    double hi = 1.0;
    double lo_exponent = 0.0;
    double hi_exponent = 0.0;
    Tolerances tol{};
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    std::size_t subdivisions = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration with global bisection. Each
/// half of [lo, hi] is mapped by x - lo = h t^{1/(e+1)} (and the mirror
/// image at hi), which absorbs the hinted endpoint powers.
///
/// Throws QuadratureError on an invalid spec, a non-finite integrand value,
/// or when the subdivision limit is reached before the tolerance.
Result integrate(const IntegrandSpec& spec);

Result integrate(const Integrand& f, double lo, double hi, const Tolerances& tol = {});

}  // namespace hyperrod::quadrature
