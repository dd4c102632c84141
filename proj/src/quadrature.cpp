#include "hyperrod/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "hyperrod/errors.hpp"

namespace hyperrod::quadrature {

namespace {

// QUADPACK qk15 abscissae and weights. Odd indices are the Gauss-7 nodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

// One half of the original interval in the transformed variable t in [0, 1].
// Distance from the anchored end is width * t^power.
struct Half {
    bool anchored_at_lo;
    double width;
    double power;
};

struct Panel {
    int half;
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

class Integrator {
public:
    explicit Integrator(const IntegrandSpec& spec) : spec_(spec) {
        const double mid = 0.5 * (spec.lo + spec.hi);
        halves_[0] = {true, mid - spec.lo, 1.0 / (spec.lo_exponent + 1.0)};
        halves_[1] = {false, spec.hi - mid, 1.0 / (spec.hi_exponent + 1.0)};
    }

    Result run() {
        std::vector<Panel> heap;
        double total = 0.0;
        double total_error = 0.0;
        double frozen_value = 0.0;
        double frozen_error = 0.0;
        for (int h = 0; h < 2; ++h) {
            Panel p = rule(h, 0.0, 1.0);
            total += p.value;
            total_error += p.error;
            heap.push_back(p);
        }
        std::make_heap(heap.begin(), heap.end());

        std::size_t subdivisions = 0;
        while (true) {
            const double target = std::max(spec_.tol.atol, spec_.tol.rtol * std::abs(total));
            if (total_error <= target) {
                break;
            }
            if (heap.empty()) {
                throw QuadratureError(QuadratureError::Kind::roundoff,
                                      "quadrature: roundoff limits the attainable accuracy (error " +
                                          format(total_error) + ")");
            }
            if (subdivisions >= spec_.tol.max_subdivisions) {
                // An estimate that exceeds the value itself has no significant
                // digits; treat that as a non-integrable integrand.
                const bool hopeless = total_error >= std::abs(total);
                throw QuadratureError(
                    hopeless ? QuadratureError::Kind::non_integrable
                             : QuadratureError::Kind::subdivision_limit,
                    std::string(hopeless ? "quadrature: integrand appears non-integrable"
                                         : "quadrature: subdivision limit reached") +
                        " (value " + format(total) + ", error " + format(total_error) + ")");
            }

            std::pop_heap(heap.begin(), heap.end());
            const Panel worst = heap.back();
            heap.pop_back();
            const double mid = 0.5 * (worst.a + worst.b);
            if (mid <= worst.a || mid >= worst.b ||
                (worst.b - worst.a) < 100.0 * kEps * std::abs(mid)) {
                frozen_value += worst.value;
                frozen_error += worst.error;
                continue;  // too narrow to bisect
            }
            Panel left = rule(worst.half, worst.a, mid);
            Panel right = rule(worst.half, mid, worst.b);
            ++subdivisions;
            heap.push_back(left);
            std::push_heap(heap.begin(), heap.end());
            heap.push_back(right);
            std::push_heap(heap.begin(), heap.end());

            // Re-sum instead of updating incrementally to avoid drift.
            total = frozen_value;
            total_error = frozen_error;
            for (const Panel& p : heap) {
                total += p.value;
                total_error += p.error;
            }
        }
        return {total, total_error, evaluations_, subdivisions};
    }

private:
    static std::string format(double v) {
        std::ostringstream os;
        os.precision(6);
        os << v;
        return os.str();
    }

    double eval(int h, double t) {
        const Half& half = halves_[h];
        const double tp = (half.power == 1.0) ? t : std::pow(t, half.power);
        const double dist = half.width * tp;
        const double jac = (half.power == 1.0) ? half.width
                                               : half.width * half.power * std::pow(t, half.power - 1.0);
        Point pt{};
        if (half.anchored_at_lo) {
            pt.from_lo = dist;
            pt.x = spec_.lo + dist;
            pt.to_hi = (spec_.hi - spec_.lo) - dist;
        } else {
            pt.to_hi = dist;
            pt.x = spec_.hi - dist;
            pt.from_lo = (spec_.hi - spec_.lo) - dist;
        }
        ++evaluations_;
        if (jac == 0.0) {
            return 0.0;
        }
        const double fx = spec_.f(pt);
        const double v = fx * jac;
        if (!std::isfinite(v)) {
            throw QuadratureError(QuadratureError::Kind::non_integrable,
                                  "quadrature: integrand is not finite at x = " + format(pt.x));
        }
        return v;
    }

    Panel rule(int h, double a, double b) {
        const double center = 0.5 * (a + b);
        const double half_len = 0.5 * (b - a);
        std::array<double, 15> fv{};
        fv[7] = eval(h, center);
        for (int j = 0; j < 7; ++j) {
            const double dx = half_len * kKronrodNodes[j];
            fv[j] = eval(h, center - dx);
            fv[14 - j] = eval(h, center + dx);
        }

        double kronrod = kKronrodWeights[7] * fv[7];
        double gauss = kGaussWeights[3] * fv[7];
        double abs_sum = std::abs(kronrod);
        for (int j = 0; j < 7; ++j) {
            const double pair = fv[j] + fv[14 - j];
            kronrod += kKronrodWeights[j] * pair;
            abs_sum += kKronrodWeights[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
            if (j % 2 == 1) {
                gauss += kGaussWeights[j / 2] * pair;
            }
        }
        const double mean = 0.5 * kronrod;
        double asc = kKronrodWeights[7] * std::abs(fv[7] - mean);
        for (int j = 0; j < 7; ++j) {
            asc += kKronrodWeights[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
        }

        const double value = kronrod * half_len;
        abs_sum *= std::abs(half_len);
        asc *= std::abs(half_len);
        double err = std::abs((kronrod - gauss) * half_len);
        if (asc != 0.0 && err != 0.0) {
            err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
        }
        if (abs_sum > std::numeric_limits<double>::min() / (50.0 * kEps)) {
            err = std::max(50.0 * kEps * abs_sum, err);
        }
        return {h, a, b, value, err};
    }

    const IntegrandSpec& spec_;
    std::array<Half, 2> halves_{};
    std::size_t evaluations_ = 0;
};

void validate(const IntegrandSpec& spec) {
    auto fail = [](const std::string& msg) {
        throw QuadratureError(QuadratureError::Kind::invalid_spec, "quadrature: " + msg);
    };
    if (!spec.f) fail("empty integrand");
    if (!std::isfinite(spec.lo) || !std::isfinite(spec.hi) || !(spec.lo < spec.hi))
        fail("interval must satisfy lo < hi with finite ends");
    if (!(spec.tol.rtol > 0.0)) fail("rtol must be positive");
    if (!(spec.tol.atol >= 0.0)) fail("atol must be non-negative");
    if (!(spec.lo_exponent > -1.0) || !(spec.hi_exponent > -1.0))
        fail("endpoint exponent hints must exceed -1");
    if (spec.tol.max_subdivisions == 0) fail("max_subdivisions must be positive");
}

}  // namespace

Result integrate(const IntegrandSpec& spec) {
    validate(spec);
    return Integrator(spec).run();
}

Result integrate(const Integrand& f, double lo, double hi, const Tolerances& tol) {
    IntegrandSpec spec;
    spec.f = [&f](const Point& p) { return f(p.x); };
    spec.lo = lo;
    spec.hi = hi;
    spec.tol = tol;
    return integrate(spec);
}

}  // namespace hyperrod::quadrature
