#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "hyperrod/series.hpp"
#include "hyperrod/serialize.hpp"

using namespace hyperrod::series;

namespace {

Rational r(long n, long d = 1) { return Rational(n) / Rational(d); }

PowerSeries<Rational> make(std::vector<Rational> c, std::size_t order, Parity p = Parity::general) {
    return PowerSeries<Rational>(std::move(c), order, p);
}

}  // namespace

TEST_CASE("construction invariants") {
    CHECK_THROWS_AS(make({r(0), r(1), r(2)}, 1), std::invalid_argument);
    CHECK_THROWS_AS(make({r(0), r(1), r(2)}, 3, Parity::odd), std::invalid_argument);
    const auto s = make({r(0), r(1)}, 5);
    CHECK(s.coefficients().size() == 6);
    CHECK(s[5] == 0);
    CHECK_THROWS_AS(s[6], std::out_of_range);
}

TEST_CASE("compose") {
    const auto id = PowerSeries<Rational>::identity(7);
    const auto s = make({r(0), r(2), r(-3), r(5, 7), r(1, 9)}, 7);
    CHECK(compose(s, id) == s);
    const auto xx = make({r(0), r(1), r(1)}, 6);
    CHECK(compose(xx, PowerSeries<Rational>::identity(6)) == xx);
    // (x - x^3/6) o (x + x^3/6) = x + O(x^5)
    const auto a = make({r(0), r(1), r(0), r(-1, 6)}, 4, Parity::odd);
    const auto b = make({r(0), r(1), r(0), r(1, 6)}, 4, Parity::odd);
    const auto c = compose(a, b);
    CHECK(c == PowerSeries<Rational>::identity(4));
    CHECK(c.parity() == Parity::odd);
    CHECK_THROWS_AS(compose(a, make({r(1), r(1)}, 4)), std::invalid_argument);
}

TEST_CASE("lagrange_revert") {
    CHECK(lagrange_revert(PowerSeries<Rational>::identity(9)) == PowerSeries<Rational>::identity(9));
    const auto f = make({r(0), r(1), r(0), r(1)}, 9, Parity::odd);
    const auto g = lagrange_revert(f);
    CHECK(g == make({r(0), r(1), r(0), r(-1), r(0), r(3), r(0), r(-12), r(0), r(55)}, 9, Parity::odd));
    CHECK(compose(f, g) == PowerSeries<Rational>::identity(9));
    CHECK(g.parity() == Parity::odd);

    // general (non-odd) input: exp(x) - 1 reverts to log(1 + x)
    const auto e = make({r(0), r(1), r(1, 2), r(1, 6), r(1, 24), r(1, 120)}, 5);
    CHECK(lagrange_revert(e) == make({r(0), r(1), r(-1, 2), r(1, 3), r(-1, 4), r(1, 5)}, 5));
    CHECK_THROWS_AS(lagrange_revert(make({r(0), r(0), r(1)}, 3)), std::invalid_argument);
}

TEST_CASE("hyp3f2_taylor") {
    const auto one = hyp3f2_taylor(r(1, 2), r(1), r(3, 2), r(5, 4), r(7, 4), 1);
    CHECK(one == PowerSeries<Rational>::identity(1));
    const auto f = hyp3f2_taylor(r(1, 2), r(1), r(3, 2), r(5, 4), r(7, 4), 7);
    CHECK(f[3] == r(12, 35));
    CHECK(f.parity() == Parity::odd);
    const auto z = hypergeometric_odd_taylor({r(1, 2), r(1), r(3, 2)}, {r(7, 6), r(5, 3)}, 5, r(1, 36));
    CHECK(z[1] == 1);
    CHECK(z[3] == r(1, 2) * r(3, 2) / (r(7, 6) * r(5, 3)) / 36);
    CHECK_THROWS_AS(hypergeometric_odd_taylor({r(1)}, {r(-2)}, 5), std::invalid_argument);
}

TEST_CASE("reversion of the shear kernel is exact to order") {
    const auto f = hyp3f2_taylor(r(1, 2), r(1), r(3, 2), r(5, 4), r(7, 4), 19);
    const auto g = lagrange_revert(f);
    CHECK(compose(f, g) == PowerSeries<Rational>::identity(19));
    CHECK(g[3] == r(-12, 35));
    CHECK(g[5] == r(1952, 13475));
}

TEST_CASE("evaluation and json export") {
    const auto s = make({r(0), r(1), r(0), r(-1, 3)}, 3, Parity::odd);
    CHECK(s.evaluate(0.5) == doctest::Approx(0.5 - 0.125 / 3.0));
    const auto j = hyperrod::io::to_json(s);
    REQUIRE(j.size() == 2);
    CHECK(j[1]["power"] == 3);
    CHECK(j[1]["num"] == "-1");
    CHECK(j[1]["den"] == "3");
    CHECK(hyperrod::io::parse_rational("-153/143360") == r(-153, 143360));
}
