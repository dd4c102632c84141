#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hyperrod::series {

using Rational = boost::multiprecision::cpp_rational;

enum class Parity { odd, general };

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

/// Truncated power series sum_{n <= order} c_n x^n. Coefficients past the
/// stored ones are zero up to the truncation order and unknown beyond it.
template <class T>
class PowerSeries {
public:
    PowerSeries(std::vector<T> coefficients, std::size_t order, Parity parity = Parity::general)
        : coefficients_(std::move(coefficients)), order_(order), parity_(parity) {
        if (coefficients_.size() > order_ + 1) {
            throw std::invalid_argument("power series: stored index exceeds truncation order");
        }
        coefficients_.resize(order_ + 1, T(0));
        if (parity_ == Parity::odd) {
            for (std::size_t n = 0; n <= order_; n += 2) {
                if (coefficients_[n] != T(0)) {
                    throw std::invalid_argument("power series: odd series with a nonzero coefficient of x^" +
                                                std::to_string(n));
                }
            }
        }
    }

    static PowerSeries identity(std::size_t order) {
        std::vector<T> c(order + 1, T(0));
        if (order >= 1) c[1] = T(1);
        return PowerSeries(std::move(c), order, Parity::odd);
    }

    std::size_t order() const noexcept { return order_; }
    Parity parity() const noexcept { return parity_; }
    const std::vector<T>& coefficients() const noexcept { return coefficients_; }

    const T& operator[](std::size_t n) const {
        if (n > order_) throw std::out_of_range("power series: index beyond truncation order");
        return coefficients_[n];
    }

    PowerSeries truncated(std::size_t order) const {
        const std::size_t k = std::min(order, order_);
        return PowerSeries(std::vector<T>(coefficients_.begin(), coefficients_.begin() + k + 1), k, parity_);
    }

    /// Horner evaluation in double precision.
    double evaluate(double x) const {
        double acc = 0.0;
        for (std::size_t n = order_ + 1; n-- > 0;) {
            acc = acc * x + to_double(coefficients_[n]);
        }
        return acc;
    }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
        return a.order_ == b.order_ && a.coefficients_ == b.coefficients_;
    }

private:
    std::vector<T> coefficients_;
    std::size_t order_;
    Parity parity_;
};

namespace detail {

template <class T>
std::vector<T> mul_truncated(const std::vector<T>& a, const std::vector<T>& b, std::size_t order) {
    std::vector<T> out(order + 1, T(0));
    for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
        if (a[i] == T(0)) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) {
            if (b[j] == T(0)) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

}  // namespace detail

/// outer(inner(x)), truncated to min of the two orders. inner(0) must be 0.
template <class T>
PowerSeries<T> compose(const PowerSeries<T>& outer, const PowerSeries<T>& inner) {
    if (inner.coefficients()[0] != T(0)) {
        throw std::invalid_argument("compose: inner series has a nonzero constant term");
    }
    const std::size_t order = std::min(outer.order(), inner.order());
    std::vector<T> acc(order + 1, T(0));
    for (std::size_t k = order + 1; k-- > 0;) {
        acc = detail::mul_truncated(acc, inner.coefficients(), order);
        acc[0] += outer.coefficients()[k];
    }
    const bool odd = outer.parity() == Parity::odd && inner.parity() == Parity::odd;
    return PowerSeries<T>(std::move(acc), order, odd ? Parity::odd : Parity::general);
}

/// Compositional inverse g with f(g(x)) = x to the order of f. Column n of
/// the power table g^j is filled from columns < n, then
///   g_n = -(sum_{j >= 2} f_j [x^n] g^j) / f_1.
template <class T>
PowerSeries<T> lagrange_revert(const PowerSeries<T>& f) {
    const std::size_t order = f.order();
    const auto& fc = f.coefficients();
    if (fc[0] != T(0)) throw std::invalid_argument("lagrange_revert: f(0) must be 0");
    if (order < 1 || fc[1] == T(0)) throw std::invalid_argument("lagrange_revert: zero linear coefficient");

    // powers[j][n] = [x^n] g^j, j = 1..order
    std::vector<std::vector<T>> powers(order + 1, std::vector<T>(order + 1, T(0)));
    std::vector<T>& g = powers[1];
    g[1] = T(1) / fc[1];
    for (std::size_t n = 2; n <= order; ++n) {
        for (std::size_t j = n; j >= 2; --j) {
            T s(0);
            for (std::size_t i = 1; i + (j - 1) <= n; ++i) {
                if (g[i] == T(0)) continue;
                const T& prev = powers[j - 1][n - i];
                if (prev != T(0)) s += g[i] * prev;
            }
            powers[j][n] = s;
        }
        T acc(0);
        for (std::size_t j = 2; j <= n; ++j) {
            if (fc[j] != T(0) && powers[j][n] != T(0)) acc += fc[j] * powers[j][n];
        }
        g[n] = -acc / fc[1];
    }
    return PowerSeries<T>(g, order, f.parity());
}

/// x * pFq(upper; lower; scale x^2) as an odd series: the coefficient of
/// x^{2k+1} is prod (a)_k / (prod (b)_k k!) * scale^k.
inline PowerSeries<Rational> hypergeometric_odd_taylor(const std::vector<Rational>& upper,
                                                       const std::vector<Rational>& lower,
                                                       std::size_t order, const Rational& scale = Rational(1)) {
    if (order < 1) throw std::invalid_argument("hypergeometric_odd_taylor: order must be >= 1");
    for (const auto& b : lower) {
        if (b <= 0 && denominator(b) == 1) {
            throw std::invalid_argument("hypergeometric_odd_taylor: lower parameter is a nonpositive integer");
        }
    }
    std::vector<Rational> c(order + 1, Rational(0));
    Rational term(1);
    for (std::size_t k = 0; 2 * k + 1 <= order; ++k) {
        c[2 * k + 1] = term;
        Rational ratio = scale / Rational(static_cast<long>(k + 1));
        for (const auto& a : upper) ratio *= a + Rational(static_cast<long>(k));
        for (const auto& b : lower) ratio /= b + Rational(static_cast<long>(k));
        term *= ratio;
    }
    return PowerSeries<Rational>(std::move(c), order, Parity::odd);
}

/// f(Y) = Y 3F2(a1, a2, a3; b1, b2; Y^2) to the given order in Y.
inline PowerSeries<Rational> hyp3f2_taylor(const Rational& a1, const Rational& a2, const Rational& a3,
                                           const Rational& b1, const Rational& b2, std::size_t order) {
    return hypergeometric_odd_taylor({a1, a2, a3}, {b1, b2}, order);
}

}  // namespace hyperrod::series
