#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>
#include <vector>

#include "flatlab/dft.hpp"

using flatlab::cplx;

namespace {

// Independent O(NM) oracle: direct evaluation at the M-th roots of unity.
std::vector<cplx> naive_roots_eval(const std::vector<cplx>& a, std::size_t M) {
    std::vector<cplx> out(M);
    for (std::size_t j = 0; j < M; ++j) {
        cplx acc(0.0, 0.0);
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double ang = 2.0 * std::numbers::pi *
                               static_cast<double>((j * k) % M) / static_cast<double>(M);
            acc += a[k] * std::polar(1.0, ang);
        }
        out[j] = acc;
    }
    return out;
}

double max_err(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

std::vector<cplx> random_coeffs(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<cplx> a(n);
    for (auto& v : a) v = cplx(dist(rng), dist(rng));
    return a;
}

}  // namespace

TEST_CASE("power-of-two grids match the direct sum", "[dft]") {
    for (std::size_t n : {1u, 2u, 8u, 64u, 256u}) {
        const auto a = random_coeffs(n, 1000 + n);
        const auto fast = flatlab::dft_at_roots(a, n);
        const auto slow = naive_roots_eval(a, n);
        INFO("n = " << n);
        CHECK(max_err(fast, slow) < 1e-10 * static_cast<double>(n + 1));
    }
}

TEST_CASE("arbitrary grid lengths match the direct sum", "[dft]") {
    for (std::size_t M : {3u, 5u, 7u, 12u, 97u, 101u, 255u, 1001u}) {
        const auto a = random_coeffs(M, 2000 + M);
        const auto fast = flatlab::dft_at_roots(a, M);
        const auto slow = naive_roots_eval(a, M);
        INFO("M = " << M);
        CHECK(max_err(fast, slow) < 1e-9);
    }
}

TEST_CASE("grid size may differ from the coefficient count", "[dft]") {
    const auto a = random_coeffs(17, 42);
    for (std::size_t M : {4u, 23u, 40u}) {
        const auto fast = flatlab::dft_at_roots(a, M);
        const auto slow = naive_roots_eval(a, M);
        INFO("M = " << M);
        CHECK(max_err(fast, slow) < 1e-9);
    }
}

TEST_CASE("coefficients beyond M fold onto residues mod M", "[dft]") {
    // z^k at an M-th root depends only on k mod M, so folding is evaluation.
    std::vector<cplx> a = {cplx(1, 0), cplx(2, 0), cplx(3, 0), cplx(4, 0), cplx(5, 0)};
    std::vector<cplx> folded = {cplx(1 + 4, 0), cplx(2 + 5, 0), cplx(3, 0)};
    const auto full = flatlab::dft_at_roots(a, 3);
    const auto pre = flatlab::dft_at_roots(folded, 3);
    CHECK(max_err(full, pre) < 1e-12);
}

TEST_CASE("zero grid size is rejected", "[dft]") {
    std::vector<cplx> a = {cplx(1, 0)};
    CHECK_THROWS_AS(flatlab::dft_at_roots(a, 0), std::invalid_argument);
}

TEST_CASE("pairwise sum agrees with serial sum", "[dft]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> xs(1237);
    long double serial = 0.0;
    for (auto& v : xs) {
        v = dist(rng);
        serial += v;
    }
    CHECK(flatlab::detail::pairwise_sum(xs) ==
          Catch::Approx(static_cast<double>(serial)).margin(1e-12));
}
