#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "flatlab/dft.hpp"
#include "flatlab/seq_stats.hpp"
#include "flatlab/sequences.hpp"

namespace flatlab {

/// Complex coefficient vector a_0..a_{q-1} together with a positive scalar s;
/// the represented polynomial is s * sum_j a_j z^j.
struct NormalizedPolynomial {
    std::vector<cplx> coeffs;
    double scale = 1.0;

    std::size_t q() const { return coeffs.size(); }
    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    bool has_real_coeffs() const {
        for (const cplx& a : coeffs)
            if (a.imag() != 0.0) return false;
        return true;
    }

    // L^2-normalized Littlewood wrap: s = 1/sqrt(q).
    static NormalizedPolynomial littlewood(const SignSequence& s) {
        NormalizedPolynomial p;
        p.coeffs.reserve(s.q());
        for (int8_t v : s.signs) p.coeffs.emplace_back(static_cast<double>(v), 0.0);
        p.scale = 1.0 / std::sqrt(static_cast<double>(s.q()));
        return p;
    }

    // L^2-normalized Newman-Bourgain wrap: s = 1/sqrt(m).
    static NormalizedPolynomial newman_bourgain(const BinarySequence& b) {
        if (b.m == 0) throw std::invalid_argument("newman_bourgain: all-zero bit sequence");
        NormalizedPolynomial p;
        p.coeffs.reserve(b.q());
        for (uint8_t v : b.bits) p.coeffs.emplace_back(static_cast<double>(v), 0.0);
        p.scale = 1.0 / std::sqrt(static_cast<double>(b.m));
        return p;
    }

    // Companion polynomial Q(z) = (2/sqrt(q)) sum eta_j z^j; deliberately not
    // L^2-normalized (||Q||_2 != 1 in general).
    static NormalizedPolynomial q_companion(const BinarySequence& b) {
        NormalizedPolynomial p;
        p.coeffs.reserve(b.q());
        for (uint8_t v : b.bits) p.coeffs.emplace_back(static_cast<double>(v), 0.0);
        p.scale = 2.0 / std::sqrt(static_cast<double>(b.q()));
        return p;
    }

    // Dirichlet kernel D_q = (1/sqrt(q)) sum_{j<q} z^j.
    static NormalizedPolynomial dirichlet(std::size_t q) {
        if (q == 0) throw std::invalid_argument("dirichlet: q must be >= 1");
        NormalizedPolynomial p;
        p.coeffs.assign(q, cplx(1.0, 0.0));
        p.scale = 1.0 / std::sqrt(static_cast<double>(q));
        return p;
    }
};

/// Polynomial values on the M-th roots of unity, optionally on their
/// negations as well. xi_{M,j} = exp(2*pi*i*j/M).
struct UnitGrid {
    std::size_t M = 0;
    std::size_t source_degree = 0;
    std::vector<cplx> values;
    std::optional<std::vector<cplx>> negated;
};

// Evaluates the polynomial at all M-th roots (and at -xi_{M,j} when asked).
// The negated grid comes out of a single length-2M transform: -xi_{M,j} is
// the 2M-th root of index (M + 2j) mod 2M.
inline UnitGrid evaluate_at_roots(const NormalizedPolynomial& poly, std::size_t M,
                                  bool include_negated = false, bool require_exact = false) {
    if (M == 0) throw std::invalid_argument("evaluate_at_roots: grid size M must be >= 1");
    if (poly.coeffs.empty()) throw std::invalid_argument("evaluate_at_roots: empty polynomial");
    if (require_exact && poly.degree() >= M)
        throw std::invalid_argument("evaluate_at_roots: degree overflow, need M > degree for exactness");

    UnitGrid grid;
    grid.M = M;
    grid.source_degree = poly.degree();
    if (!include_negated) {
        grid.values = dft_at_roots(poly.coeffs, M);
        for (auto& v : grid.values) v *= poly.scale;
        return grid;
    }
    const auto both = dft_at_roots(poly.coeffs, 2 * M);
    grid.values.resize(M);
    grid.negated.emplace(M);
    for (std::size_t j = 0; j < M; ++j) {
        grid.values[j] = both[(2 * j) % (2 * M)] * poly.scale;
        (*grid.negated)[j] = both[(M + 2 * j) % (2 * M)] * poly.scale;
    }
    return grid;
}

// (1/q) sum_j |P(xi_{q,j})|^2, exact for degree < q: equals the coefficient
// energy sum |s a_k|^2.
inline double l2_norm_sq_sampled(const UnitGrid& grid) {
    if (grid.M <= grid.source_degree)
        throw std::invalid_argument("l2_norm_sq_sampled: grid aliases, need M > degree");
    std::vector<double> terms(grid.M);
    for (std::size_t j = 0; j < grid.M; ++j) terms[j] = std::norm(grid.values[j]);
    return detail::pairwise_sum(terms) / static_cast<double>(grid.M);
}

// Two-grid fourth moment: (1/2q) sum |P(xi_{q,j})|^4 + (1/2q) sum |P(-xi_{q,j})|^4.
// Exact for real coefficients and odd coefficient count q (the (-1)^q term in
// the folded-autocorrelation expansion cancels only then).
inline double l4_norm_4_exact(const NormalizedPolynomial& poly) {
    const std::size_t q = poly.q();
    if (q % 2 == 0)
        throw std::invalid_argument("l4_norm_4_exact: coefficient count q must be odd");
    if (!poly.has_real_coeffs())
        throw std::invalid_argument("l4_norm_4_exact: coefficients must be real");
    const UnitGrid grid = evaluate_at_roots(poly, q, /*include_negated=*/true);
    std::vector<double> terms(2 * q);
    for (std::size_t j = 0; j < q; ++j) {
        const double a = std::norm(grid.values[j]);
        const double b = std::norm((*grid.negated)[j]);
        terms[2 * j] = a * a;
        terms[2 * j + 1] = b * b;
    }
    return detail::pairwise_sum(terms) / (2.0 * static_cast<double>(q));
}

/// Quadrature value plus the refinement delta between the M and 2M grids.
struct Bracketed {
    double value = 0.0;
    double bracket = 0.0;
};

namespace detail {

inline double grid_mean_abs_pow(const NormalizedPolynomial& poly, std::size_t M, double alpha) {
    const UnitGrid grid = evaluate_at_roots(poly, M);
    std::vector<double> terms(M);
    for (std::size_t j = 0; j < M; ++j)
        terms[j] = std::pow(std::abs(grid.values[j]), alpha);
    return pairwise_sum(terms) / static_cast<double>(M);
}

}  // namespace detail

// Riemann estimate (1/M) sum |P(xi_{M,j})|^alpha with M = oversample*(degree+1),
// refined once; the bracket is |estimate(M) - estimate(2M)|. The L^alpha
// sampling inequalities justify the grid; their constants are nonconstructive,
// so refinement convergence is what gets reported.
inline Bracketed lp_norm_estimate(const NormalizedPolynomial& poly, double alpha,
                                  std::size_t oversample = 2) {
    if (alpha <= 0.0)
        throw std::invalid_argument("lp_norm_estimate: alpha must be > 0 (use mahler_measure for alpha = 0)");
    if (oversample < 2) throw std::invalid_argument("lp_norm_estimate: oversample must be >= 2");
    const std::size_t M = oversample * (poly.degree() + 1);
    const double coarse = detail::grid_mean_abs_pow(poly, M, alpha);
    const double fine = detail::grid_mean_abs_pow(poly, 2 * M, alpha);
    return Bracketed{fine, std::abs(fine - coarse)};
}

inline constexpr double kMahlerLogFloor = -40.0;

namespace detail {

inline double grid_mean_clipped_log(const NormalizedPolynomial& poly, std::size_t M) {
    const UnitGrid grid = evaluate_at_roots(poly, M);
    std::vector<double> terms(M);
    for (std::size_t j = 0; j < M; ++j) {
        const double mag = std::abs(grid.values[j]);
        terms[j] = mag > 0.0 ? std::max(std::log(mag), kMahlerLogFloor) : kMahlerLogFloor;
    }
    return pairwise_sum(terms) / static_cast<double>(M);
}

}  // namespace detail

// exp of the grid mean of log|P|, log clipped below at kMahlerLogFloor so a
// grid point landing on a zero biases the estimate upward by a bounded,
// reported amount rather than sinking it to zero.
inline Bracketed mahler_measure(const NormalizedPolynomial& poly, std::size_t oversample = 8) {
    bool all_zero = true;
    for (const cplx& a : poly.coeffs)
        if (a != cplx(0.0, 0.0)) { all_zero = false; break; }
    if (all_zero) throw std::invalid_argument("mahler_measure: zero polynomial has no Mahler measure");
    if (oversample < 2) throw std::invalid_argument("mahler_measure: oversample must be >= 2");
    const std::size_t M = oversample * (poly.degree() + 1);
    const double coarse = std::exp(detail::grid_mean_clipped_log(poly, M));
    const double fine = std::exp(detail::grid_mean_clipped_log(poly, 2 * M));
    return Bracketed{fine, std::abs(fine - coarse)};
}

/// Flatness metrics of one sequence polynomial. square_l2_defect is exact
/// (autocorrelation route), the grid statistics are quadrature.
struct FlatnessReport {
    double l4_fourth_power = 0.0;
    double square_l2_defect = 0.0;
    double merit_factor = 0.0;  // +infinity when the defect vanishes (q = 1)
    double mahler = 0.0;
    double sup_deviation = 0.0;       // max over grid of | |P| - 1 |
    double mean_abs_deviation = 0.0;  // grid mean of | |P| - 1 |
};

namespace detail {

inline FlatnessReport flatness_report_impl(const NormalizedPolynomial& poly,
                                           double l4_exact, std::size_t oversample) {
    FlatnessReport r;
    r.l4_fourth_power = l4_exact;
    r.square_l2_defect = l4_exact - 1.0;
    r.merit_factor = r.square_l2_defect > 0.0 ? 1.0 / r.square_l2_defect
                                              : std::numeric_limits<double>::infinity();
    r.mahler = mahler_measure(poly, oversample).value;
    const std::size_t M = std::max<std::size_t>(oversample * (poly.degree() + 1), 64);
    const UnitGrid grid = evaluate_at_roots(poly, M);
    std::vector<double> devs(M);
    double sup = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        devs[j] = std::abs(std::abs(grid.values[j]) - 1.0);
        sup = std::max(sup, devs[j]);
    }
    r.sup_deviation = sup;
    r.mean_abs_deviation = pairwise_sum(devs) / static_cast<double>(M);
    return r;
}

}  // namespace detail

inline FlatnessReport flatness_report(const SignSequence& s, std::size_t oversample = 8) {
    return detail::flatness_report_impl(NormalizedPolynomial::littlewood(s),
                                        l4_from_autocorrelation(s), oversample);
}

inline FlatnessReport flatness_report(const BinarySequence& b, std::size_t oversample = 8) {
    const auto prof = autocorrelation(b);
    const double m = static_cast<double>(b.m);
    const double l4 = 1.0 + 2.0 * static_cast<double>(prof.sidelobe_energy) / (m * m);
    return detail::flatness_report_impl(NormalizedPolynomial::newman_bourgain(b), l4, oversample);
}

}  // namespace flatlab
