#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "flatlab/poly_core.hpp"
#include "flatlab/sequences.hpp"

namespace flatlab {

// ---------------------------------------------------------------------------
// The T correspondence between the sign class (eps_0 = eps_{q-1} = +1) and the
// 0/1 class (eta_0 = eta_{q-1} = 1): eta_i = (eps_i + 1)/2.
// ---------------------------------------------------------------------------

inline BinarySequence to_nb(const SignSequence& s) {
    if (!s.is_littlewood_class())
        throw std::invalid_argument("to_nb: sequence must start and end with +1");
    std::vector<uint8_t> bits(s.q());
    for (std::size_t i = 0; i < s.q(); ++i) bits[i] = s.signs[i] > 0 ? 1 : 0;
    return BinarySequence(std::move(bits));
}

inline SignSequence to_littlewood(const BinarySequence& b) {
    if (!b.is_nb_class())
        throw std::invalid_argument("to_littlewood: sequence must start and end with 1");
    std::vector<int8_t> signs(b.q());
    for (std::size_t i = 0; i < b.q(); ++i) signs[i] = static_cast<int8_t>(2 * b.bits[i] - 1);
    return SignSequence(std::move(signs));
}

namespace detail {

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b,
                           std::size_t first = 0) {
    double worst = 0.0;
    for (std::size_t j = first; j < a.size(); ++j)
        worst = std::max(worst, std::abs(a[j] - b[j]));
    return worst;
}

}  // namespace detail

// Decomposition P(z) = Q(z) - D_q(z) with Q = (2/sqrt(q)) sum eta_j z^j,
// checked on the M-grid; returns the max residual.
inline double check_decomposition(const SignSequence& s, std::size_t grid_size) {
    const BinarySequence b = to_nb(s);
    const auto pv = evaluate_at_roots(NormalizedPolynomial::littlewood(s), grid_size).values;
    const auto qv = evaluate_at_roots(NormalizedPolynomial::q_companion(b), grid_size).values;
    const auto dv = evaluate_at_roots(NormalizedPolynomial::dirichlet(s.q()), grid_size).values;
    double worst = 0.0;
    for (std::size_t j = 0; j < grid_size; ++j)
        worst = std::max(worst, std::abs(pv[j] - (qv[j] - dv[j])));
    return worst;
}

// P(xi_{q,j}) = Q(xi_{q,j}) for j = 1..q-1 (D_q vanishes there; j = 0 is
// excluded since D_q(1) = sqrt(q)).
inline double check_root_identity(const SignSequence& s) {
    if (!s.is_littlewood_class())
        throw std::invalid_argument("check_root_identity: sequence must start and end with +1");
    const std::size_t q = s.q();
    const BinarySequence b = to_nb(s);
    const auto pv = evaluate_at_roots(NormalizedPolynomial::littlewood(s), q).values;
    const auto qv = evaluate_at_roots(NormalizedPolynomial::q_companion(b), q).values;
    return detail::max_abs_diff(pv, qv, /*first=*/1);
}

// Lagrange reconstruction at the negated roots, for odd q:
//   Q(-xi_{q,k}) = (2/q) * D_q(1) / (1 + xi_{q,k}) + P(-xi_{q,k}),
// with D_q(1) = sqrt(q). Returns the max residual over k = 0..q-1.
inline double lagrange_negated_reconstruction(const SignSequence& s) {
    const std::size_t q = s.q();
    if (q % 2 == 0)
        throw std::invalid_argument("lagrange_negated_reconstruction: q must be odd (pole at k = q/2)");
    const BinarySequence b = to_nb(s);
    const auto pg = evaluate_at_roots(NormalizedPolynomial::littlewood(s), q, /*include_negated=*/true);
    const auto qg = evaluate_at_roots(NormalizedPolynomial::q_companion(b), q, /*include_negated=*/true);
    const double bridge_scale = 2.0 / std::sqrt(static_cast<double>(q));
    double worst = 0.0;
    for (std::size_t k = 0; k < q; ++k) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(q);
        const cplx xi = std::polar(1.0, ang);
        const cplx rhs = bridge_scale / (1.0 + xi) + (*pg.negated)[k];
        worst = std::max(worst, std::abs((*qg.negated)[k] - rhs));
    }
    return worst;
}

/// Direct sum and closed form of sum_k 1/|1 + xi_{q,k}|^4 for odd q.
struct HjbrResult {
    double direct = 0.0;
    double closed_form = 0.0;  // (1/16)(q^4/3 + 2 q^2 / 3)
    double rel_error = 0.0;
};

inline HjbrResult hjbr_sum(std::size_t q) {
    if (q == 0 || q % 2 == 0)
        throw std::invalid_argument("hjbr_sum: q must be odd (even q hits the pole at k = q/2)");
    std::vector<double> terms(q);
    for (std::size_t k = 0; k < q; ++k) {
        // |1 + xi_{q,k}| = 2 |cos(pi k / q)|
        const double c = std::cos(std::numbers::pi * static_cast<double>(k) / static_cast<double>(q));
        const double m2 = 4.0 * c * c;
        terms[k] = 1.0 / (m2 * m2);
    }
    HjbrResult out;
    out.direct = detail::pairwise_sum(terms);
    const double qd = static_cast<double>(q);
    out.closed_form = (qd * qd * qd * qd / 3.0 + 2.0 * qd * qd / 3.0) / 16.0;
    out.rel_error = std::abs(out.direct - out.closed_form) / out.closed_form;
    return out;
}

// Differenced identity on the M-grid:
//   (1 - z^l) Q_q(z) = (1 - z^l) P_q(z) + sqrt(l) D_l(z) (1 - z^q) / sqrt(q).
inline double differenced_identity_residual(const SignSequence& s, std::size_t ell,
                                            std::size_t grid_size) {
    if (ell < 1) throw std::invalid_argument("differenced_identity_residual: ell must be >= 1");
    const std::size_t q = s.q();
    const BinarySequence b = to_nb(s);
    const auto pv = evaluate_at_roots(NormalizedPolynomial::littlewood(s), grid_size).values;
    const auto qv = evaluate_at_roots(NormalizedPolynomial::q_companion(b), grid_size).values;
    const auto dl = evaluate_at_roots(NormalizedPolynomial::dirichlet(ell), grid_size).values;
    const double root_ell = std::sqrt(static_cast<double>(ell));
    const double inv_root_q = 1.0 / std::sqrt(static_cast<double>(q));
    const double step = 2.0 * std::numbers::pi / static_cast<double>(grid_size);
    double worst = 0.0;
    for (std::size_t j = 0; j < grid_size; ++j) {
        // z^t at z = xi_{M,j} is the root of index (j*t) mod M
        const cplx z_ell = std::polar(1.0, step * static_cast<double>((j * (ell % grid_size)) % grid_size));
        const cplx z_q = std::polar(1.0, step * static_cast<double>((j * (q % grid_size)) % grid_size));
        const cplx lhs = (1.0 - z_ell) * qv[j];
        const cplx rhs = (1.0 - z_ell) * pv[j] + root_ell * dl[j] * (1.0 - z_q) * inv_root_q;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

}  // namespace flatlab
