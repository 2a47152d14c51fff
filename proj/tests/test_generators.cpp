#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gds/generators.hpp"
#include "support/quadrature.hpp"
#include "support/reference.hpp"

using namespace gds;
using testsupport::mellin_by_quadrature;

namespace {

GeneratorProfile square_generator() { return testsupport::two_node_profiles()[0]; }
GeneratorProfile cantor_generator() { return testsupport::cantor_profiles()[0]; }

// Random valid monophase profile in n = 2: V = a eps + b eps^2 nondecreasing.
GeneratorProfile random_monophase(std::mt19937& rng) {
    std::uniform_real_distribution<double> gdist(0.1, 1.0), adist(0.5, 2.0), bfrac(-0.45, 0.9);
    const double g = gdist(rng);
    const double a = adist(rng);
    const double b = bfrac(rng) * a / g;  // keeps V' = a + 2 b eps > 0 on [0, g]
    const double vol = a * g + b * g * g;
    return GeneratorProfile(2, {{g, {b, a, 0.0}}}, vol);
}

// Random valid two-piece profile in n = 2, continuous at the first breakpoint.
GeneratorProfile random_pluriphase(std::mt19937& rng) {
    std::uniform_real_distribution<double> gdist(0.1, 0.5), adist(0.5, 2.0), un(0.1, 1.0);
    const double g1 = gdist(rng);
    const double g2 = g1 * (1.0 + un(rng));
    const double a = adist(rng);
    const double b = -0.3 * a / g1;
    const double v1 = a * g1 + b * g1 * g1;
    const double beta = adist(rng);
    const double gamma = -0.4 * beta / (2.0 * g2);
    const double alpha = v1 - beta * g1 - gamma * g1 * g1;
    const double vol = alpha + beta * g2 + gamma * g2 * g2;
    return GeneratorProfile(2, {{g1, {b, a, 0.0}}, {g2, {gamma, beta, alpha}}}, vol);
}

}  // namespace

TEST_CASE("square generator tube volume") {
    const GeneratorProfile p = square_generator();
    const double root2 = std::sqrt(2.0);
    CHECK(p.tube_volume(root2 / 2.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(p.tube_volume(0.2) ==
          doctest::Approx(4.0 * root2 * 0.2 - 4.0 * 0.04).epsilon(1e-14));
    CHECK(p.tube_volume(0.0) == 0.0);
    CHECK(p.tube_volume(5.0) == 2.0);
    CHECK_THROWS_AS(p.tube_volume(-0.1), SolverError);
}

TEST_CASE("Cantor generator Mellin transform at s = 1/2") {
    const GeneratorProfile p = cantor_generator();
    // 2 (1/6)^s (1/s - 1/(s-1)) at s = 1/2 is 2 (1/6)^{1/2} * 4
    const Complex m = p.mellin_transform(Complex(0.5, 0.0));
    CHECK(m.real() == doctest::Approx(2.0 * std::sqrt(1.0 / 6.0) * 4.0).epsilon(1e-14));
    CHECK(std::abs(m.imag()) < 1e-15);
    const Complex q = mellin_by_quadrature(p, Complex(0.5, 0.0));
    CHECK(std::abs(m - q) < 1e-8 * std::abs(m));
}

TEST_CASE("square generator Mellin transform at s = 1.8 matches the hand expression") {
    const GeneratorProfile p = square_generator();
    const double g = std::sqrt(2.0) / 2.0;
    const Complex s(1.8, 0.0);
    const Complex expected = -4.0 * std::pow(g, 1.8) / 1.8 +
                             4.0 * std::sqrt(2.0) * std::pow(g, 0.8) / 0.8 -
                             2.0 * std::pow(g, -0.2) / (-0.2);
    CHECK(std::abs(p.mellin_transform(s) - expected) < 1e-13 * std::abs(expected));
    CHECK(std::abs(mellin_by_quadrature(p, s) - expected) < 1e-8 * std::abs(expected));
}

TEST_CASE("Mellin conjugate symmetry") {
    const GeneratorProfile p = square_generator();
    const Complex s(1.6, 2.3);
    CHECK(std::abs(p.mellin_transform(std::conj(s)) - std::conj(p.mellin_transform(s))) <
          1e-14 * std::abs(p.mellin_transform(s)));
}

TEST_CASE("Mellin evaluation refuses the pole neighborhood") {
    const GeneratorProfile p = cantor_generator();
    CHECK_THROWS_AS(p.mellin_transform(Complex(1.0 + 1e-10, 0.0)), SolverError);
    CHECK_THROWS_AS(p.mellin_transform(Complex(0.0, 0.0)), SolverError);
}

TEST_CASE("integer residues of the square generator") {
    const GeneratorProfile p = square_generator();
    CHECK(p.mellin_integer_residue(0) == doctest::Approx(-4.0));
    CHECK(p.mellin_integer_residue(1) == doctest::Approx(4.0 * std::sqrt(2.0)));
    CHECK(p.mellin_integer_residue(2) == doctest::Approx(-2.0));
}

TEST_CASE("identical pluriphase pieces collapse to the monophase residues") {
    const double root2 = std::sqrt(2.0);
    const std::vector<double> kappa{-4.0, 4.0 * root2, 0.0};
    // two pieces carrying the same polynomial, split at an interior point
    GeneratorProfile split(2, {{0.3, kappa}, {root2 / 2.0, kappa}}, 2.0);
    const GeneratorProfile mono = square_generator();
    for (int i = 0; i <= 2; ++i)
        CHECK(split.mellin_integer_residue(i) == doctest::Approx(mono.mellin_integer_residue(i)));
    CHECK(validate_profile(split).ok());
    // and the transforms agree everywhere
    const Complex s(1.5, 1.0);
    CHECK(std::abs(split.mellin_transform(s) - mono.mellin_transform(s)) <
          1e-12 * std::abs(mono.mellin_transform(s)));
}

TEST_CASE("profile validation catches continuity and zero-limit violations") {
    CHECK(validate_profile(square_generator()).ok());
    CHECK(validate_profile(cantor_generator()).ok());

    const double root2 = std::sqrt(2.0);
    GeneratorProfile bad_vol(2, {{root2 / 2.0, {-4.0, 4.0 * root2, 0.0}}}, 3.0);
    bool continuity = false;
    for (const std::string& v : validate_profile(bad_vol).violations)
        continuity = continuity || v.find("ContinuityViolation") != std::string::npos;
    CHECK(continuity);

    GeneratorProfile bad_zero(1, {{0.25, {2.0, 0.1}}}, 0.6);
    bool zero_limit = false;
    for (const std::string& v : validate_profile(bad_zero).violations)
        zero_limit = zero_limit || v.find("ZeroLimitViolation") != std::string::npos;
    CHECK(zero_limit);

    GeneratorProfile decreasing(1, {{0.5, {-2.0, 0.0}}}, -1.0);
    CHECK(!validate_profile(decreasing).ok());
}

TEST_CASE("closed-form Mellin equals quadrature of the defining integral") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> re(1.1, 1.9), im(-2.0, 2.0);
    std::vector<GeneratorProfile> profiles{square_generator(),
                                           testsupport::two_node_profiles()[1]};
    for (int k = 0; k < 4; ++k) profiles.push_back(random_monophase(rng));
    for (int k = 0; k < 4; ++k) profiles.push_back(random_pluriphase(rng));
    int checked = 0;
    for (const GeneratorProfile& p : profiles) {
        REQUIRE(validate_profile(p).ok());
        for (int trial = 0; trial < 5; ++trial) {
            const Complex s(re(rng), im(rng));
            const Complex closed = p.mellin_transform(s);
            const Complex quad = mellin_by_quadrature(p, s);
            CHECK(std::abs(closed - quad) < 1e-7 * (1.0 + std::abs(closed)));
            ++checked;
        }
    }
    CHECK(checked == 50);
}

TEST_CASE("(s - i) * M(s) approaches the integer residue linearly in s - i") {
    std::vector<GeneratorProfile> profiles{square_generator(), cantor_generator()};
    for (const GeneratorProfile& p : profiles) {
        for (int i = 0; i <= p.space_dimension(); ++i) {
            const double res = p.mellin_integer_residue(i);
            const auto probe = [&](double delta) {
                const Complex s(static_cast<double>(i) + delta, 0.0);
                return (Complex(delta, 0.0) * p.mellin_transform(s)).real();
            };
            const double e1 = probe(1e-4) - res;
            const double e2 = probe(1e-5) - res;
            // linear error model: e(delta) ~ C delta, so the Richardson
            // extrapolation (10 e2 - e1)/9 collapses toward zero
            const double extrapolated = (10.0 * (res + e2) - (res + e1)) / 9.0;
            CHECK(std::abs(extrapolated - res) < 1e-7 * (1.0 + std::abs(res)));
            if (std::abs(e1) > 1e-10)
                CHECK(std::abs(e1 / e2) == doctest::Approx(10.0).epsilon(0.25));
        }
    }
}

TEST_CASE("tube volume is continuous and nondecreasing on a dense grid") {
    std::mt19937 rng(123);
    for (int k = 0; k < 3; ++k) {
        const GeneratorProfile p = (k == 0) ? square_generator() : random_pluriphase(rng);
        const double g = p.inradius();
        double last = 0.0;
        for (int i = 1; i <= 10'000; ++i) {
            const double eps = 1.2 * g * i / 10'000;
            const double v = p.tube_volume(eps);
            CHECK(v >= last - 1e-12 * std::max(1.0, p.volume()));
            last = v;
        }
        CHECK(last == doctest::Approx(p.volume()));
    }
}
