#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "hyperrod/errors.hpp"

namespace hyperrod::roots {

struct Root {
    double x;
    double fx;
    std::size_t iterations;
};

/// Root of f on [lo, hi] given a sign change. Bisection shrinks the bracket
/// to a few percent of its width, then secant steps polish the estimate,
/// falling back to bisection whenever a step would leave the bracket.
/// Converges when the bracket width drops below rtol * |x| (or 1e-300).
template <class F>
Root bracketed_root(F&& f, double lo, double hi, double rtol = 1e-12, std::size_t max_iterations = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, flo, 0};
    if (fhi == 0.0) return {hi, fhi, 0};
    if ((flo < 0.0) == (fhi < 0.0)) {
        throw BracketError("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]", NAN);
    }
    const double width0 = hi - lo;
    std::size_t it = 0;
    while (it < max_iterations && (hi - lo) > 0.02 * width0) {
        ++it;
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return {mid, fm, it};
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    double x = lo - flo * (hi - lo) / (fhi - flo);
    double fx = 0.0;
    int last_side = 0;
    int repeats = 0;
    while (it < max_iterations) {
        ++it;
        if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        fx = f(x);
        if (fx == 0.0) return {x, fx, it};
        const int side = ((fx < 0.0) == (flo < 0.0)) ? -1 : 1;
        if (side < 0) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        repeats = (side == last_side) ? repeats + 1 : 0;
        last_side = side;
        const double tol = std::max(rtol * std::abs(x), 1e-300);
        if (hi - lo <= tol) break;
        // Secant on the bracket ends, nudged at least tol/2 inside so the
        // far end also moves; bisect when one end keeps winning.
        double next = (repeats >= 2) ? 0.5 * (lo + hi) : lo - flo * (hi - lo) / (fhi - flo);
        const double eps = 0.5 * tol;
        if (next - lo < eps) next = lo + eps;
        if (hi - next < eps) next = hi - eps;
        x = next;
    }
    if (!(hi - lo <= std::max(rtol * std::abs(x), 1e-300) * 1.0000001)) {
        throw ConvergenceError("bracketed_root: no convergence within " + std::to_string(max_iterations) +
                               " iterations");
    }
    return {x, fx, it};
}

}  // namespace hyperrod::roots
