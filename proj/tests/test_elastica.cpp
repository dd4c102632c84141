#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperrod/elastica.hpp"
#include "hyperrod/errors.hpp"

using namespace hyperrod;
using namespace hyperrod::elastica;

namespace {

const RodProperties sample = RodProperties::from_stiffness(1.0, 200.0);

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("rod properties") {
    const auto rod = RodProperties::from_modulus(2.0, 2.1e11, 3.0e-9);
    CHECK(rod.stiffness() == 2.1e11 * 3.0e-9);
    CHECK(rod.young_modulus().value() == 2.1e11);
    CHECK_FALSE(sample.young_modulus().has_value());
    CHECK_THROWS_AS(RodProperties::from_stiffness(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(RodProperties::from_modulus(1.0, -1.0, 1.0), DomainError);
}

TEST_CASE("bending moment and H") {
    CHECK(bending_moment(UniformLoad{1000}, sample, 0.0) == 0.0);
    CHECK(bending_moment(BuiltInCombined{1000}, sample, 1.0) == 0.0);
    CHECK(bending_moment(TipMoment{7.5}, sample, 0.3) == 7.5);
    CHECK(bending_moment(TipShear{-348}, sample, 0.5) == 174.0);
    for (const LoadCase& load : {LoadCase{UniformLoad{1000}}, LoadCase{TipShear{30}}, LoadCase{TipMoment{5}},
                                 LoadCase{BuiltInCombined{1000}}}) {
        CHECK(cumulative_moment(load, sample, 1.0) == 0.0);
        // dH/dx = -M
        for (double x : {0.2, 0.5, 0.8}) {
            const double h = 1e-5;
            const double dH = (cumulative_moment(load, sample, x + h) - cumulative_moment(load, sample, x - h)) / (2 * h);
            CHECK(rel(dH, -bending_moment(load, sample, x)) < 1e-6);
        }
    }
    CHECK(cumulative_moment(UniformLoad{1000}, sample, 0.0) == doctest::Approx(-1000.0 / 6.0));
    CHECK(cumulative_moment(BuiltInCombined{1000}, sample, 0.0) == doctest::Approx(1000.0 / 12.0));
    CHECK_THROWS_AS(bending_moment(UniformLoad{1}, sample, 1.5), DomainError);
}

TEST_CASE("feasibility") {
    CHECK(feasibility_check(UniformLoad{1200}, sample).max_ratio == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_FALSE(feasibility_check(UniformLoad{1200}, sample).feasible());
    const auto r = feasibility_check(UniformLoad{1000}, sample);
    CHECK(r.max_ratio == doctest::Approx(1000.0 / 1200.0));
    CHECK(r.load_bound == doctest::Approx(1200.0));
    CHECK(feasibility_check(TipMoment{-50}, sample).max_ratio == doctest::Approx(0.25));
    CHECK(feasibility_check(BuiltInCombined{2000}, sample).max_ratio == doctest::Approx(2000.0 / 2400.0));
    try {
        require_feasible(UniformLoad{1300}, sample);
        FAIL("no throw");
    } catch (const InfeasibleLoad& e) {
        CHECK(std::string(e.what()).find("6EJ/L^3") != std::string::npos);
        CHECK(e.ratio() == doctest::Approx(1300.0 / 1200.0));
    }
}

TEST_CASE("tip deflections") {
    CHECK(tip_deflection_uniform(sample, 0.0) == 0.0);
    CHECK(tip_deflection_uniform(sample, 1000) == doctest::Approx(0.96378983134069521597).epsilon(1e-12));
    CHECK(tip_deflection_shear(sample, 0.0) == 0.0);
    CHECK(tip_deflection_shear(sample, 348) == doctest::Approx(-0.9001024480281705199).epsilon(1e-12));
    CHECK(tip_deflection_moment(sample, 0.0) == 0.0);
    CHECK(tip_deflection_moment(sample, 95) == doctest::Approx(-0.25266148349494302452).epsilon(1e-13));
    const double tiny = 1e-9;
    CHECK(tip_deflection_moment(sample, tiny) == doctest::Approx(-tiny / 400.0).epsilon(1e-15));
    CHECK(rel(tip_deflection_uniform(sample, 1e-3) / (1e-3 / 1600.0), 1.0) < 1e-10);
    CHECK(rel(tip_deflection_shear(sample, 1e-3), -1e-3 / 600.0) < 1e-10);
    CHECK_THROWS_AS(tip_deflection_uniform(sample, 1300), InfeasibleLoad);
    CHECK_THROWS_AS(tip_deflection_shear(sample, 401), InfeasibleLoad);
    CHECK_THROWS_AS(tip_deflection_moment(sample, 200), InfeasibleLoad);
}

TEST_CASE("linearized deflections") {
    CHECK(linearized_tip_deflection(UniformLoad{1000}, sample) == doctest::Approx(0.625));
    CHECK(linearized_tip_deflection(TipShear{1000}, sample) == doctest::Approx(1000.0 / 600.0));
    CHECK(linearized_tip_deflection(TipMoment{0}, sample) == 0.0);
    for (const LoadCase& load : {LoadCase{UniformLoad{100}}, LoadCase{TipShear{30}}, LoadCase{TipMoment{5}},
                                 LoadCase{BuiltInCombined{100}}}) {
        CHECK(linearized_deflection(load, sample, 1.0) == 0.0);
    }
}

TEST_CASE("sign conventions") {
    CHECK(quadrature::integrate_deflection(UniformLoad{500}, sample, 0.0) > 0.0);
    CHECK(quadrature::integrate_deflection(TipShear{100}, sample, 0.0) > 0.0);
    CHECK(quadrature::integrate_deflection(TipMoment{50}, sample, 0.0) < 0.0);
}

TEST_CASE("closed forms match quadrature at interior sections") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> frac(0.05, 0.95), pos(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double L = 0.5 + 2.0 * pos(rng);
        const auto rod = RodProperties::from_stiffness(L, 50.0 + 500.0 * pos(rng));
        const double EJ = rod.stiffness();
        const double x = L * pos(rng);
        const LoadCase loads[] = {UniformLoad{frac(rng) * 6 * EJ / (L * L * L)},
                                  TipShear{(pos(rng) < 0.5 ? -1 : 1) * frac(rng) * 2 * EJ / (L * L)},
                                  TipMoment{(pos(rng) < 0.5 ? -1 : 1) * frac(rng) * EJ / L}};
        for (const auto& load : loads) {
            const double yq = quadrature::integrate_deflection(load, rod, x);
            const double yc = closed_form_deflection(load, rod, x);
            CHECK(std::abs(yc - yq) <= 1e-8 * std::abs(yq) + 1e-15);
        }
    }
    CHECK_THROWS_AS(closed_form_deflection(BuiltInCombined{100}, sample, 0.0), DomainError);
}

TEST_CASE("linearized limit has order two in the load") {
    auto gap = [](double q) {
        const double exact = tip_deflection_uniform(sample, q);
        const double lin = linearized_tip_deflection(UniformLoad{q}, sample);
        return (exact - lin) / lin;
    };
    const double g1 = gap(100), g2 = gap(50), g4 = gap(25);
    CHECK(std::log2(g1 / g2) == doctest::Approx(2.0).epsilon(0.02));
    CHECK(std::log2(g2 / g4) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("first example") {
    // P = 40 gives mu = PL^2/(2EJ) = 0.1
    const auto e0 = first_example_profile(sample, 40.0, 0.0);
    CHECK(e0.mu == doctest::Approx(0.1));
    CHECK(e0.approx == doctest::Approx(2.0 * 0.1 / 3.0));
    CHECK(e0.exact == doctest::Approx(0.066896633400469169138).epsilon(1e-10));
    const auto e1 = first_example_profile(sample, 40.0, 1.0);
    CHECK(e1.exact == 0.0);
    CHECK(e1.approx == doctest::Approx(0.0));
    CHECK(first_example_profile(sample, 40.0, 0.5).exact == doctest::Approx(0.02086568324963451501).epsilon(1e-10));
    for (double mu : {0.05, 0.1, 0.2}) {
        const auto e = first_example_profile(sample, 2.0 * 200.0 * mu, 0.0);
        CHECK(std::abs(e.exact - 2.0 * mu / 3.0) <= mu * mu);
    }
    CHECK_THROWS_AS(first_example_profile(sample, 400.0, 0.0), InfeasibleLoad);
    CHECK_THROWS_AS(first_example_profile(sample, 40.0, 1.2), DomainError);
}

TEST_CASE("profiles") {
    ProfileOptions opt;
    opt.points = 41;
    for (const LoadCase& load : {LoadCase{UniformLoad{1000}}, LoadCase{TipShear{-348}}, LoadCase{TipMoment{95}},
                                 LoadCase{BuiltInCombined{1000}}}) {
        const auto p = deflection_profile(load, sample, ProfileMethod::quadrature, opt);
        REQUIRE(p.samples.size() == 41);
        for (std::size_t i = 1; i < p.samples.size(); ++i) CHECK(p.samples[i].x > p.samples[i - 1].x);
        CHECK(p.samples.front().x == 0.0);
        CHECK(p.samples.back().x == 1.0);
        CHECK(p.samples.back().y == 0.0);
        // y'(L) = 0
        const double h = 1e-6;
        const double slope = -quadrature::integrate_deflection(load, sample, 1.0 - h) / h;
        CHECK(std::abs(slope) < 1e-5);
        // tip of the panel-accumulated profile matches a single integral
        CHECK(p.samples.front().y == doctest::Approx(quadrature::integrate_deflection(load, sample, 0.0)).epsilon(1e-9));
    }
    const auto c = deflection_profile(UniformLoad{1000}, sample, ProfileMethod::closed_form, opt);
    CHECK(c.samples.front().y == doctest::Approx(tip_deflection_uniform(sample, 1000)).epsilon(1e-10));
    const auto z = deflection_profile(UniformLoad{0}, sample, ProfileMethod::quadrature, opt);
    for (const auto& s : z.samples) CHECK(s.y == 0.0);
}
