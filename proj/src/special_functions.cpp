#include "hyperrod/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <math.h>  // lgamma_r
#include <sstream>
#include <string>

#include "hyperrod/errors.hpp"
#include "hyperrod/quadrature.hpp"

namespace hyperrod::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

std::string num(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
        abs_ += std::abs(v);
    }
    double value() const { return sum_ + comp_; }
    double abs_sum() const { return abs_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_ = 0.0;
};

// Shared stopping rule for power-series style sums. `rho` is an upper bound
// on the ratio of successive future terms.
class SeriesStop {
public:
    explicit SeriesStop(double rtol) : rtol_(rtol) {}

    bool update(double term, double sum, double rho) {
        const double scale = std::max(std::abs(sum), kTiny);
        small_run_ = (std::abs(term) <= rtol_ * scale) ? small_run_ + 1 : 0;
        last_abs_ = std::max(std::abs(term), prev_abs_);
        prev_abs_ = std::abs(term);
        if (small_run_ < 3 || !(rho < 1.0)) {
            return false;
        }
        tail_ = last_abs_ * rho / (1.0 - rho);
        return tail_ <= rtol_ * scale;
    }

    double tail() const { return tail_; }

private:
    double rtol_;
    int small_run_ = 0;
    double last_abs_ = 0.0;
    double prev_abs_ = 0.0;
    double tail_ = 0.0;
};

// Smallest m >= 0 such that -m is one of the upper parameters, or -1.
long terminating_degree(const std::vector<double>& upper) {
    long best = -1;
    for (double a : upper) {
        if (is_nonpositive_integer(a)) {
            const long m = static_cast<long>(-a);
            if (best < 0 || m < best) best = m;
        }
    }
    return best;
}

void check_lower(const std::vector<double>& lower) {
    for (double b : lower) {
        if (!std::isfinite(b) || is_nonpositive_integer(b)) {
            throw DomainError("hypergeometric series: lower parameter " + num(b) +
                              " is zero or a negative integer");
        }
    }
}

void check_settings(const Settings& s) {
    if (!(s.rtol > 0.0) || !(s.quad_rtol > 0.0) || s.max_terms == 0) {
        throw DomainError("special functions: tolerances and term cap must be positive");
    }
}

double next_ratio(const std::vector<double>& upper, const std::vector<double>& lower, double n) {
    double r = 1.0 / (n + 1.0);
    for (double a : upper) r *= (a + n);
    for (double b : lower) r /= (b + n);
    return r;
}

// Partial sums of 2F1(a, b; c; 1) at N_k = n0 * 2^k, extrapolated in N with
// the tail exponents s, s+1, ... where s = c - a - b.
Estimate gauss_2f1_at_one(double a, double b, double c, const Settings& settings) {
    const double s = c - a - b;
    const std::size_t n0 = std::max<std::size_t>(
        64, static_cast<std::size_t>(std::ceil(8.0 * (std::abs(a) + std::abs(b) + std::abs(c)))));
    constexpr int kLevels = 11;
    const std::size_t n_max = n0 << (kLevels - 1);
    if (n_max > settings.max_terms) {
        throw ConvergenceError("2F1 at x = 1: extrapolation needs " + std::to_string(n_max) +
                               " terms, above the term cap");
    }

    std::vector<double> partial;
    partial.reserve(kLevels);
    CompensatedSum sum;
    double term = 1.0;
    sum.add(term);
    std::size_t next_mark = n0;
    for (std::size_t n = 0; n < n_max; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0));
        sum.add(term);
        if (n + 1 == next_mark) {
            partial.push_back(sum.value());
            next_mark *= 2;
        }
    }

    std::vector<std::vector<double>> table(kLevels);
    for (int k = 0; k < kLevels; ++k) {
        table[k].push_back(partial[k]);
        for (int j = 0; j < k; ++j) {
            const double f = std::pow(2.0, s + j);
            table[k].push_back((f * table[k][j] - table[k - 1][j]) / (f - 1.0));
        }
    }
    // Pick the column whose last two rows agree best.
    const int last = kLevels - 1;
    double best_value = table[last][0];
    double best_diff = std::abs(table[last][0] - table[last - 1][0]);
    for (int j = 1; j < last; ++j) {
        const double diff = std::abs(table[last][j] - table[last - 1][j]);
        if (diff < best_diff) {
            best_diff = diff;
            best_value = table[last][j];
        }
    }
    const double rounding = 64.0 * kEps * sum.abs_sum();
    return {best_value, best_diff + rounding, n_max};
}

}  // namespace

bool is_nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

double pochhammer(double lambda, unsigned n) {
    double p = 1.0;
    for (unsigned k = 0; k < n; ++k) {
        p *= lambda + k;
    }
    return p;
}

double log_abs_gamma(double x, int* sign) {
    int s = 1;
    const double v = ::lgamma_r(x, &s);
    if (sign != nullptr) *sign = s;
    return v;
}

double gauss_summation(double a, double b, double c) {
    if (!(c > a + b)) {
        throw DomainError("Gauss summation needs c > a + b (got a=" + num(a) + ", b=" + num(b) +
                          ", c=" + num(c) + ")");
    }
    if (a == 0.0 || b == 0.0) return 1.0;
    for (double g : {c, c - a - b, c - a, c - b}) {
        if (is_nonpositive_integer(g)) {
            throw DomainError("Gauss summation: Gamma argument " + num(g) + " is a pole");
        }
    }
    int s1 = 1, s2 = 1, s3 = 1, s4 = 1;
    const double lg = log_abs_gamma(c, &s1) + log_abs_gamma(c - a - b, &s2) -
                      log_abs_gamma(c - a, &s3) - log_abs_gamma(c - b, &s4);
    return s1 * s2 * s3 * s4 * std::exp(lg);
}

Estimate hypergeometric_series(const HypSeriesParams& params, const Settings& settings) {
    check_settings(settings);
    check_lower(params.lower);
    const double x = params.argument;
    if (!std::isfinite(x)) throw DomainError("hypergeometric series: non-finite argument");
    const long degree = terminating_degree(params.upper);
    if (degree < 0 && !(std::abs(x) < 1.0)) {
        throw DomainError("hypergeometric series diverges for |x| >= 1 (x=" + num(x) + ")");
    }
    if (x == 0.0) return {1.0, 0.0, 1};

    CompensatedSum sum;
    SeriesStop stop(settings.rtol);
    double term = 1.0;
    sum.add(term);
    for (std::size_t n = 0;; ++n) {
        if (degree >= 0 && static_cast<long>(n) >= degree) {
            return {sum.value(), 4.0 * kEps * sum.abs_sum(), n + 1};
        }
        const double prev = term;
        term *= next_ratio(params.upper, params.lower, static_cast<double>(n)) * x;
        sum.add(term);
        const double ratio = prev != 0.0 ? std::abs(term / prev) : 0.0;
        if (stop.update(term, sum.value(), std::max(std::abs(x), ratio))) {
            return {sum.value(), stop.tail() + 4.0 * kEps * sum.abs_sum(), n + 2};
        }
        if (n + 2 >= settings.max_terms) {
            throw ConvergenceError("hypergeometric series: no convergence within " +
                                   std::to_string(settings.max_terms) + " terms (x=" + num(x) + ")");
        }
    }
}

Estimate gauss_2f1_estimate(double a, double b, double c, double x, const Settings& settings) {
    check_settings(settings);
    check_lower({c});
    if (x == 1.0 && terminating_degree({a, b}) < 0) {
        if (!(c > a + b)) {
            throw DomainError("2F1 at x = 1 diverges unless c > a + b (got a=" + num(a) +
                              ", b=" + num(b) + ", c=" + num(c) + ")");
        }
        return gauss_2f1_at_one(a, b, c, settings);
    }
    return hypergeometric_series({{a, b}, {c}, x}, settings);
}

double gauss_2f1(double a, double b, double c, double x, const Settings& settings) {
    return gauss_2f1_estimate(a, b, c, x, settings).value;
}

double hyp_3f2(double a1, double a2, double a3, double b1, double b2, double x,
               const Settings& settings) {
    return hypergeometric_series({{a1, a2, a3}, {b1, b2}, x}, settings).value;
}

Estimate lauricella_irt(const LauricellaArgs& args, const Settings& settings) {
    check_settings(settings);
    const std::size_t n = args.b.size();
    if (n == 0 || args.x.size() != n) {
        throw DomainError("Lauricella F_D: b and x must have the same non-zero length");
    }
    const double a = args.a;
    const double c = args.c;
    if (!(a > 0.0) || !(c > a)) {
        throw DomainError("integral representation needs c > a > 0 (got a=" + num(a) + ", c=" +
                          num(c) + ")");
    }
    double unit_b = 0.0;
    bool all_zero = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = args.x[i];
        if (!std::isfinite(xi) || !std::isfinite(args.b[i])) {
            throw DomainError("Lauricella F_D: non-finite parameter");
        }
        if (xi > 1.0) {
            throw DomainError("Lauricella F_D: x_" + std::to_string(i + 1) + " = " + num(xi) +
                              " lies on the cut [1, inf)");
        }
        if (xi == 1.0) unit_b += args.b[i];
        if (xi != 0.0 && args.b[i] != 0.0) all_zero = false;
    }
    const double hi_exponent = c - a - 1.0 - unit_b;
    if (!(hi_exponent > -1.0)) {
        throw DomainError("Lauricella F_D: endpoint singularity at u = 1 is not integrable "
                          "(needs c - a - sum of b_i with x_i = 1 > 0)");
    }
    if (all_zero) return {1.0, 0.0, 0};

    const double prefactor = std::exp(log_abs_gamma(c) - log_abs_gamma(a) - log_abs_gamma(c - a));

    quadrature::IntegrandSpec spec;
    spec.lo = 0.0;
    spec.hi = 1.0;
    spec.lo_exponent = a - 1.0;
    spec.hi_exponent = hi_exponent;
    spec.tol.rtol = settings.quad_rtol;
    spec.tol.atol = 0.0;
    spec.f = [&](const quadrature::Point& p) {
        const double u = p.from_lo;
        const double w = p.to_hi;
        double v = std::pow(u, a - 1.0) * std::pow(w, hi_exponent);
        for (std::size_t i = 0; i < n; ++i) {
            const double xi = args.x[i];
            if (xi == 1.0 || xi == 0.0 || args.b[i] == 0.0) continue;
            const double base = (u < 0.5) ? 1.0 - xi * u : (1.0 - xi) + xi * w;
            v *= std::pow(base, -args.b[i]);
        }
        return v;
    };
    const auto r = quadrature::integrate(spec);
    return {prefactor * r.value, prefactor * r.error, r.evaluations};
}

Estimate lauricella_series(const LauricellaArgs& args, const Settings& settings) {
    check_settings(settings);
    const std::size_t n = args.b.size();
    if (n == 0 || args.x.size() != n) {
        throw DomainError("Lauricella F_D: b and x must have the same non-zero length");
    }
    check_lower({args.c});
    double rho = 0.0;
    for (double xi : args.x) rho = std::max(rho, std::abs(xi));
    if (!(rho < 1.0)) {
        throw DomainError("Lauricella F_D series needs max |x_i| < 1 (got " + num(rho) + ")");
    }

    // seq[i][k] = (b_i)_k x_i^k / k!; prod[i] is the Cauchy product of seq[0..i].
    std::vector<std::vector<double>> seq(n, std::vector<double>{1.0});
    std::vector<std::vector<double>> prod(n, std::vector<double>{1.0});
    CompensatedSum sum;
    SeriesStop stop(settings.rtol);
    sum.add(1.0);
    double ratio_ac = 1.0;
    double prev_term = 1.0;
    for (std::size_t deg = 1;; ++deg) {
        for (std::size_t i = 0; i < n; ++i) {
            seq[i].push_back(seq[i].back() * (args.b[i] + (deg - 1.0)) * args.x[i] / deg);
        }
        prod[0].push_back(seq[0][deg]);
        for (std::size_t i = 1; i < n; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k <= deg; ++k) s += prod[i - 1][k] * seq[i][deg - k];
            prod[i].push_back(s);
        }
        ratio_ac *= (args.a + (deg - 1.0)) / (args.c + (deg - 1.0));
        const double term = ratio_ac * prod[n - 1][deg];
        sum.add(term);
        const double observed = (prev_term != 0.0 && term != 0.0) ? std::abs(term / prev_term) : 0.0;
        if (term != 0.0) prev_term = term;
        if (stop.update(term, sum.value(), std::max(rho, observed))) {
            return {sum.value(), stop.tail() + 8.0 * kEps * sum.abs_sum(), deg + 1};
        }
        if (deg + 1 >= settings.max_terms) {
            throw ConvergenceError("Lauricella F_D series: no convergence within term cap");
        }
    }
}

Estimate appell_f1_estimate(double a, double b1, double b2, double c, double x1, double x2,
                            const Settings& settings) {
    if (!(x1 < 1.0) || !(x2 < 1.0)) {
        throw DomainError("Appell F1: integrand singular for x_i >= 1 (x1=" + num(x1) +
                          ", x2=" + num(x2) + ")");
    }
    return lauricella_irt({a, {b1, b2}, c, {x1, x2}}, settings);
}

double appell_f1(double a, double b1, double b2, double c, double x1, double x2,
                 const Settings& settings) {
    return appell_f1_estimate(a, b1, b2, c, x1, x2, settings).value;
}

double appell_f1_series(double a, double b1, double b2, double c, double x1, double x2,
                        const Settings& settings) {
    return lauricella_series({a, {b1, b2}, c, {x1, x2}}, settings).value;
}

Estimate lauricella_fd3_estimate(double a, const std::array<double, 3>& b, double c,
                                 const std::array<double, 3>& x, const Settings& settings) {
    return lauricella_irt({a, {b.begin(), b.end()}, c, {x.begin(), x.end()}}, settings);
}

double lauricella_fd3(double a, const std::array<double, 3>& b, double c,
                      const std::array<double, 3>& x, const Settings& settings) {
    return lauricella_fd3_estimate(a, b, c, x, settings).value;
}

double lauricella_fd3_series(double a, const std::array<double, 3>& b, double c,
                             const std::array<double, 3>& x, const Settings& settings) {
    return lauricella_series({a, {b.begin(), b.end()}, c, {x.begin(), x.end()}}, settings).value;
}

double reduce_fd3_unit_arg(double a, double b1, double b2, double b3, double c, double x, double y,
                           const Settings& settings) {
    if (!(a > 0.0) || !(c > a)) {
        throw DomainError("F_D^(3) unit-argument reduction needs c > a > 0");
    }
    if (!(c > a + b3)) {
        throw DomainError("F_D^(3) unit-argument reduction needs c > a + b3 (got a=" + num(a) +
                          ", b3=" + num(b3) + ", c=" + num(c) + ")");
    }
    const double factor = (b3 == 0.0) ? 1.0 : gauss_summation(a, b3, c);
    return factor * appell_f1(a, b1, b2, c - b3, x, y, settings);
}

double reduce_f1_to_3f2(double a, double b, double c, double x, const Settings& settings) {
    if (!(std::abs(x) < 1.0)) {
        throw DomainError("F1 -> 3F2 reduction needs |x| < 1 (got " + num(x) + ")");
    }
    return hyp_3f2((a + 1.0) / 2.0, a / 2.0, b, (c + 1.0) / 2.0, c / 2.0, x * x, settings);
}

}  // namespace hyperrod::special
