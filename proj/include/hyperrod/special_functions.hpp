#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace hyperrod::special {

/// Evaluation settings. Passed explicitly; there is no global state.
struct Settings {
    double rtol = 1e-13;               ///< series truncation tolerance
    std::size_t max_terms = 1'000'000;  ///< hard cap on series terms
    double quad_rtol = 1e-12;           ///< integral-representation quadrature
};

/// A value together with an absolute error estimate.
struct Estimate {
    double value = 0.0;
    double error = 0.0;
    std::size_t terms = 0;  ///< series terms or integrand evaluations
};

/// Parameters of pFq(upper; lower; argument).
struct HypSeriesParams {
    std::vector<double> upper;
    std::vector<double> lower;
    double argument = 0.0;
};

/// Parameters of the Lauricella function F_D^{(n)}; n = b.size() = x.size().
struct LauricellaArgs {
    double a = 0.0;
    std::vector<double> b;
    double c = 0.0;
    std::vector<double> x;
};

/// Rising factorial (lambda)_n; 1 for n = 0. Overflows to +-inf for huge n.
double pochhammer(double lambda, unsigned n);

/// log|Gamma(x)|, reentrant. `sign` receives the sign of Gamma(x) if given.
double log_abs_gamma(double x, int* sign = nullptr);

/// True if x is 0 or a negative integer.
bool is_nonpositive_integer(double x);

/// Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)), through log-gamma.
/// DomainError when c <= a + b or a Gamma argument is a pole.
double gauss_summation(double a, double b, double c);

/// Direct summation of pFq by the term-ratio recurrence, |x| < 1.
/// Stops once three consecutive terms fall below rtol*|sum| and the
/// ratio-based tail bound does too.
Estimate hypergeometric_series(const HypSeriesParams& params, const Settings& settings = {});

/// 2F1(a, b; c; x) for |x| < 1, or x = 1 when c > a + b. At x = 1 the
/// series is summed with Richardson extrapolation of its partial sums
/// (independent of gauss_summation).
Estimate gauss_2f1_estimate(double a, double b, double c, double x, const Settings& settings = {});
double gauss_2f1(double a, double b, double c, double x, const Settings& settings = {});

double hyp_3f2(double a1, double a2, double a3, double b1, double b2, double x,
               const Settings& settings = {});

/// F_D^{(n)} through its one-dimensional integral representation
///   Gamma(c)/(Gamma(a)Gamma(c-a)) * int_0^1 u^{a-1}(1-u)^{c-a-1} prod (1-x_i u)^{-b_i} du.
/// Requires c > a > 0 and x_i <= 1; x_i = 1 is absorbed into the endpoint
/// exponent and needs c - a - sum_{x_i=1} b_i > 0.
Estimate lauricella_irt(const LauricellaArgs& args, const Settings& settings = {});

/// F_D^{(n)} by its multiple power series, summed by total degree. Needs
/// max |x_i| < 1.
Estimate lauricella_series(const LauricellaArgs& args, const Settings& settings = {});

/// Appell F1 by the integral representation. DomainError for c <= a,
/// a <= 0, or any x_i >= 1.
Estimate appell_f1_estimate(double a, double b1, double b2, double c, double x1, double x2,
                            const Settings& settings = {});
double appell_f1(double a, double b1, double b2, double c, double x1, double x2,
                 const Settings& settings = {});

/// Appell F1 by its double series (|x1|, |x2| < 1).
double appell_f1_series(double a, double b1, double b2, double c, double x1, double x2,
                        const Settings& settings = {});

Estimate lauricella_fd3_estimate(double a, const std::array<double, 3>& b, double c,
                                 const std::array<double, 3>& x, const Settings& settings = {});
double lauricella_fd3(double a, const std::array<double, 3>& b, double c,
                      const std::array<double, 3>& x, const Settings& settings = {});

double lauricella_fd3_series(double a, const std::array<double, 3>& b, double c,
                             const std::array<double, 3>& x, const Settings& settings = {});

/// F_D^{(3)}(a; b1, b2, b3; c | x, y, 1)
///   = Gamma(c)Gamma(c-a-b3)/(Gamma(c-a)Gamma(c-b3)) * F1(a; b1, b2; c-b3 | x, y).
double reduce_fd3_unit_arg(double a, double b1, double b2, double b3, double c, double x, double y,
                           const Settings& settings = {});

/// F1(a; b, b; c | x, -x) = 3F2((a+1)/2, a/2, b; (c+1)/2, c/2; x^2).
double reduce_f1_to_3f2(double a, double b, double c, double x, const Settings& settings = {});

/// Coefficients of the truncated F_D series grouped by total degree:
/// result[N] = (a)_N/(c)_N * sum_{|m|=N} prod (b_i)_{m_i} x_i^{m_i} / m_i!.
/// Generic in the number type so exact-rational callers can use it.
template <class T>
std::vector<T> lauricella_degree_terms(const T& a, std::span<const T> b, const T& c,
                                       std::span<const T> x, std::size_t max_degree) {
    // Per-variable binomial sequences (b_i)_k x_i^k / k!, folded in one at a
    // time by Cauchy product.
    std::vector<T> acc(max_degree + 1, T(0));
    acc[0] = T(1);
    for (std::size_t i = 0; i < b.size(); ++i) {
        std::vector<T> seq(max_degree + 1, T(0));
        seq[0] = T(1);
        for (std::size_t k = 1; k <= max_degree; ++k) {
            seq[k] = seq[k - 1] * (b[i] + T(static_cast<long>(k - 1))) * x[i] / T(static_cast<long>(k));
        }
        std::vector<T> next(max_degree + 1, T(0));
        for (std::size_t n = 0; n <= max_degree; ++n) {
            T s(0);
            for (std::size_t k = 0; k <= n; ++k) {
                s += acc[k] * seq[n - k];
            }
            next[n] = s;
        }
        acc = std::move(next);
    }
    T ratio(1);
    for (std::size_t n = 0; n <= max_degree; ++n) {
        if (n > 0) {
            ratio = ratio * (a + T(static_cast<long>(n - 1))) / (c + T(static_cast<long>(n - 1)));
        }
        acc[n] = acc[n] * ratio;
    }
    return acc;
}

}  // namespace hyperrod::special
