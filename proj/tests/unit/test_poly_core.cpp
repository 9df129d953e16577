#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "flatlab/poly_core.hpp"

using namespace flatlab;

namespace {

// Paper-order Barker sequences; sidelobe energies 6 and 5.
const char* kBarker13 = "+-+-++--+++++";
const char* kBarker11 = "+-++-+++---";

SignSequence random_signs(std::size_t q, std::mt19937_64& rng) {
    std::vector<int8_t> s(q);
    for (auto& v : s) v = (rng() & 1ull) ? 1 : -1;
    return SignSequence(std::move(s));
}

// Test-local fourth-moment oracle: int |P|^4 = c_0^2 + 2 sum_{k>=1} c_k^2
// over the raw coefficient autocorrelations, scaled by s^4.
double l4_by_autocorrelation(const std::vector<double>& a, double scale) {
    const std::size_t q = a.size();
    double c0 = 0.0;
    for (double v : a) c0 += v * v;
    double acc = c0 * c0;
    for (std::size_t k = 1; k < q; ++k) {
        double ck = 0.0;
        for (std::size_t j = 0; j + k < q; ++j) ck += a[j] * a[j + k];
        acc += 2.0 * ck * ck;
    }
    const double s2 = scale * scale;
    return acc * s2 * s2;
}

NormalizedPolynomial poly_from(const std::vector<double>& a, double scale) {
    NormalizedPolynomial p;
    for (double v : a) p.coeffs.emplace_back(v, 0.0);
    p.scale = scale;
    return p;
}

}  // namespace

TEST_CASE("evaluation on roots: pinned small cases", "[poly_core]") {
    SECTION("constant polynomial on a 4-grid") {
        const auto grid = evaluate_at_roots(poly_from({1.0}, 1.0), 4);
        for (const cplx& v : grid.values) CHECK(std::abs(v - cplx(1.0, 0.0)) < 1e-14);
    }
    SECTION("Dirichlet D_3 vanishes at the nontrivial cube roots") {
        const auto grid = evaluate_at_roots(NormalizedPolynomial::dirichlet(3), 3);
        CHECK(std::abs(grid.values[0] - cplx(std::sqrt(3.0), 0.0)) < 1e-12);
        CHECK(std::abs(grid.values[1]) < 1e-12);
        CHECK(std::abs(grid.values[2]) < 1e-12);
    }
    SECTION("negated grid contains P(-1)") {
        const double r3 = std::sqrt(3.0);
        const auto grid = evaluate_at_roots(poly_from({1.0, -1.0, 1.0}, 1.0 / r3), 3,
                                            /*include_negated=*/true);
        REQUIRE(grid.negated.has_value());
        // P(-1) = (1 + 1 + 1)/sqrt(3) = sqrt(3)
        CHECK(std::abs((*grid.negated)[0] - cplx(r3, 0.0)) < 1e-12);
    }
}

TEST_CASE("evaluation rejects bad grids", "[poly_core]") {
    CHECK_THROWS_AS(evaluate_at_roots(poly_from({1.0}, 1.0), 0), std::invalid_argument);
    CHECK_THROWS_AS(
        evaluate_at_roots(poly_from({1.0, 1.0, 1.0}, 1.0), 2, false, /*require_exact=*/true),
        std::invalid_argument);
}

TEST_CASE("sampled L2 norm: pinned values", "[poly_core]") {
    CHECK(l2_norm_sq_sampled(evaluate_at_roots(poly_from({1.0}, 1.0), 1)) ==
          Catch::Approx(1.0).margin(1e-12));
    CHECK(l2_norm_sq_sampled(evaluate_at_roots(NormalizedPolynomial::dirichlet(5), 5)) ==
          Catch::Approx(1.0).margin(1e-12));
    const double r3 = std::sqrt(3.0);
    CHECK(l2_norm_sq_sampled(evaluate_at_roots(poly_from({1.0, -1.0, 1.0}, 1.0 / r3), 3)) ==
          Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("sampled L2 norm rejects aliasing grids", "[poly_core]") {
    const auto grid = evaluate_at_roots(NormalizedPolynomial::dirichlet(5), 3);
    CHECK_THROWS_AS(l2_norm_sq_sampled(grid), std::invalid_argument);
}

TEST_CASE("sampling exactness over random sign sequences", "[poly_core]") {
    std::mt19937_64 rng(20240521);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t q = 1 + rng() % 512;
        const auto s = random_signs(q, rng);
        const auto grid = evaluate_at_roots(NormalizedPolynomial::littlewood(s), q);
        REQUIRE(std::abs(l2_norm_sq_sampled(grid) - 1.0) < 1e-10);
    }
}

TEST_CASE("two-grid fourth moment: pinned values", "[poly_core]") {
    CHECK(l4_norm_4_exact(NormalizedPolynomial::dirichlet(3)) ==
          Catch::Approx(19.0 / 9.0).epsilon(1e-12));
    CHECK(l4_norm_4_exact(poly_from({1.0}, 1.0)) == Catch::Approx(1.0).margin(1e-12));
    const auto barker13 = parse_sign_sequence(kBarker13);
    CHECK(l4_norm_4_exact(NormalizedPolynomial::littlewood(barker13)) ==
          Catch::Approx(181.0 / 169.0).epsilon(1e-12));
}

TEST_CASE("two-grid fourth moment: parity and domain errors", "[poly_core]") {
    CHECK_THROWS_AS(l4_norm_4_exact(NormalizedPolynomial::dirichlet(4)), std::invalid_argument);
    NormalizedPolynomial complex_poly;
    complex_poly.coeffs = {cplx(1.0, 0.0), cplx(0.0, 1.0), cplx(1.0, 0.0)};
    CHECK_THROWS_AS(l4_norm_4_exact(complex_poly), std::invalid_argument);
}

TEST_CASE("two-grid fourth moment matches the autocorrelation oracle", "[poly_core]") {
    std::mt19937_64 rng(7777);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t q = 2 * (rng() % 256) + 1;  // odd, <= 511
        std::vector<double> a(q);
        for (auto& v : a) v = dist(rng);
        const double oracle = l4_by_autocorrelation(a, 1.0);
        const double sampled = l4_norm_4_exact(poly_from(a, 1.0));
        REQUIRE(std::abs(sampled - oracle) < 1e-8 * static_cast<double>(q));
    }
}

TEST_CASE("Dirichlet fourth moment closed form at sampled odd q", "[poly_core]") {
    for (std::size_t q : {3u, 5u, 101u, 999u, 2001u}) {
        const double expected = (2.0 / 3.0) * static_cast<double>(q) + 1.0 / (3.0 * static_cast<double>(q));
        const double got = l4_norm_4_exact(NormalizedPolynomial::dirichlet(q));
        INFO("q = " << q);
        REQUIRE(std::abs(got - expected) / expected < 1e-8);
    }
}

TEST_CASE("Lp estimate: pinned values and bracket behavior", "[poly_core]") {
    SECTION("constant polynomial for any alpha") {
        for (double alpha : {0.5, 1.0, 2.0, 3.7}) {
            const auto est = lp_norm_estimate(poly_from({1.0}, 1.0), alpha, 4);
            CHECK(est.value == Catch::Approx(1.0).margin(1e-12));
            CHECK(est.bracket < 1e-12);
        }
    }
    SECTION("alpha = 4 on D_100 matches the closed form within the bracket") {
        const double expected = (2.0 / 3.0) * 100.0 + 1.0 / 300.0;
        const auto est = lp_norm_estimate(NormalizedPolynomial::dirichlet(100), 4.0, 2);
        // |D|^4 is a trig polynomial of degree 2(q-1), so the 2q-grid is already exact
        CHECK(std::abs(est.value - expected) < 1e-8 * expected);
        CHECK(std::abs(est.value - expected) <= est.bracket + 1e-8 * expected);
    }
    SECTION("alpha <= 0 is rejected toward the Mahler route") {
        CHECK_THROWS_AS(lp_norm_estimate(poly_from({1.0, 1.0}, 1.0), 0.0), std::invalid_argument);
    }
}

TEST_CASE("unnormalized Dirichlet L3 norm approaches the sinc-integral asymptote", "[poly_core]") {
    // Oracle: I3 = int_0^inf |sin x / x|^3 dx by composite Simpson plus the
    // O(1/x^3) tail estimated through the mean of |sin|^3 = 4/(3 pi).
    auto sinc3 = [](double x) {
        if (x == 0.0) return 1.0;
        const double s = std::sin(x) / x;
        return std::abs(s * s * s);
    };
    const double X = 20000.0;
    const std::size_t steps = 2'000'000;  // even
    const double h = X / static_cast<double>(steps);
    double simpson = sinc3(0.0) + sinc3(X);
    for (std::size_t i = 1; i < steps; ++i)
        simpson += sinc3(h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    simpson *= h / 3.0;
    const double tail = (4.0 / (3.0 * std::numbers::pi)) / (2.0 * X * X);
    const double i3 = simpson + tail;

    double prev_gap = 1e9;
    for (std::size_t q : {1024u, 4096u, 16384u}) {
        NormalizedPolynomial dq_unnorm;
        dq_unnorm.coeffs.assign(q, cplx(1.0, 0.0));
        dq_unnorm.scale = 1.0;
        const auto est = lp_norm_estimate(dq_unnorm, 3.0, 4);
        const double target = (2.0 / std::numbers::pi) * i3 * static_cast<double>(q) * static_cast<double>(q);
        const double ratio = est.value / target;
        INFO("q = " << q << " ratio = " << ratio);
        CHECK(std::abs(ratio - 1.0) < prev_gap + 1e-12);
        prev_gap = std::abs(ratio - 1.0);
    }
    CHECK(prev_gap < 1e-3);
}

TEST_CASE("Mahler measure: pinned values", "[poly_core]") {
    SECTION("constants and monomials") {
        CHECK(mahler_measure(poly_from({2.5}, 1.0), 8).value == Catch::Approx(2.5).epsilon(1e-12));
        CHECK(mahler_measure(poly_from({0.0, 0.0, 1.0}, 1.0), 8).value ==
              Catch::Approx(1.0).epsilon(1e-10));
    }
    SECTION("(1+z)/sqrt(2) has Mahler measure 1/sqrt(2)") {
        // Jensen: M(1+z) = 1. The zero at z = -1 costs the clipped-log grid a
        // bounded upward bias; 1e-2 absorbs it at this oversampling.
        const auto est = mahler_measure(poly_from({1.0, 1.0}, 1.0 / std::sqrt(2.0)), 4096);
        CHECK(std::abs(est.value - 1.0 / std::sqrt(2.0)) < 1e-2);
    }
    SECTION("zero polynomial is rejected") {
        CHECK_THROWS_AS(mahler_measure(poly_from({0.0, 0.0}, 1.0), 8), std::invalid_argument);
    }
}

TEST_CASE("flatness report: pinned merit factors", "[poly_core]") {
    const auto r13 = flatness_report(parse_sign_sequence(kBarker13));
    CHECK(r13.merit_factor == Catch::Approx(169.0 / 12.0).epsilon(1e-12));
    CHECK(r13.l4_fourth_power == Catch::Approx(181.0 / 169.0).epsilon(1e-12));

    const auto r11 = flatness_report(parse_sign_sequence(kBarker11));
    CHECK(r11.merit_factor == Catch::Approx(121.0 / 10.0).epsilon(1e-12));

    const auto ones5 = flatness_report(parse_binary_sequence("11111"));
    CHECK(ones5.l4_fourth_power == Catch::Approx(3.4).epsilon(1e-12));

    // degenerate q = 1: defect 0, infinite merit factor
    const auto r1 = flatness_report(parse_sign_sequence("+"));
    CHECK(r1.square_l2_defect == Catch::Approx(0.0).margin(1e-15));
    CHECK(std::isinf(r1.merit_factor));
}

TEST_CASE("flatness invariants over random inputs", "[poly_core]") {
    std::mt19937_64 rng(5150);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t q = 2 + rng() % 128;
        const auto s = random_signs(q, rng);
        const auto report = flatness_report(s);

        // ||P||_2 <= ||P||_4 for unit L2 norm
        CHECK(report.l4_fourth_power >= 1.0 - 1e-12);
        CHECK(report.square_l2_defect >= -1e-12);

        // defect identity: int ||P|^2 - 1|^2 dz equals the defect; the grid
        // M = 4q integrates the degree-2(q-1) trig polynomial exactly
        const auto grid = evaluate_at_roots(NormalizedPolynomial::littlewood(s), 4 * q);
        double acc = 0.0;
        for (const cplx& v : grid.values) {
            const double d = std::norm(v) - 1.0;
            acc += d * d;
        }
        acc /= static_cast<double>(grid.M);
        CHECK(std::abs(acc - report.square_l2_defect) < 1e-8);

        // Mahler <= L1 <= L2 = 1 within quadrature brackets
        const auto poly = NormalizedPolynomial::littlewood(s);
        const auto l1 = lp_norm_estimate(poly, 1.0, 4);
        const auto mahler = mahler_measure(poly, 8);
        CHECK(mahler.value <= l1.value + l1.bracket + mahler.bracket + 1e-9);
        CHECK(l1.value <= 1.0 + l1.bracket + 1e-9);
    }
}
