#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "flatlab/dft.hpp"
#include "flatlab/sequences.hpp"

namespace flatlab {

/// Finite-window Wiener correlations gamma(k) = (1/N) sum_{n<N-k} x_{n+k} conj(x_n),
/// k = 0..K, with a per-lag stability delta against the half window.
/// The divisor is N (not N-k), matching the 1/N prefactor of the limit the
/// spectral measure is built from; gamma(-k) = conj(gamma(k)) by convention.
struct CorrelationFunction {
    std::vector<cplx> gamma;
    std::size_t window = 0;
    std::vector<double> stability;   // |gamma_N(k) - gamma_{N/2}(k)|
    std::vector<bool> converged;     // stability below the given threshold
};

namespace detail {

inline cplx window_correlation(std::span<const cplx> x, std::size_t N, std::size_t k) {
    std::vector<cplx> terms(N > k ? N - k : 0);
    for (std::size_t n = 0; n + k < N; ++n) terms[n] = x[n + k] * std::conj(x[n]);
    if (terms.empty()) return cplx(0.0, 0.0);
    return pairwise_sum(terms) / static_cast<double>(N);
}

}  // namespace detail

inline CorrelationFunction wiener_correlations(std::span<const cplx> x, std::size_t max_lag,
                                               double stability_threshold = 0.01) {
    const std::size_t N = x.size();
    if (max_lag >= N) throw std::invalid_argument("wiener_correlations: max lag must be < window length");
    CorrelationFunction out;
    out.window = N;
    out.gamma.reserve(max_lag + 1);
    out.stability.reserve(max_lag + 1);
    out.converged.reserve(max_lag + 1);
    const std::size_t half = N / 2;
    for (std::size_t k = 0; k <= max_lag; ++k) {
        const cplx full = detail::window_correlation(x, N, k);
        const cplx coarse = half > k ? detail::window_correlation(x, half, k) : cplx(0.0, 0.0);
        out.gamma.push_back(full);
        out.stability.push_back(std::abs(full - coarse));
        out.converged.push_back(out.stability.back() < stability_threshold);
    }
    return out;
}

inline std::vector<cplx> to_complex_window(const SignSequence& s) {
    std::vector<cplx> x;
    x.reserve(s.q());
    for (int8_t v : s.signs) x.emplace_back(static_cast<double>(v), 0.0);
    return x;
}

/// Per-lag verdicts on the hypothesis that the spectral measure of the
/// centered bits (eta_j - 1/2) is a multiple of Lebesgue measure, i.e. that
/// gamma(k) = 0 for every k >= 1. Verdicts are finite-window statements only.
struct FourierCheckRow {
    std::size_t lag = 0;
    double gamma_abs = 0.0;
    double band = 0.0;       // 3/sqrt(N) null band
    double stability = 0.0;  // N vs N/2 delta
    bool consistent = false; // |gamma(k)| <= band + stability
};

inline std::vector<FourierCheckRow> spectral_fourier_check(const SignSequence& s,
                                                           std::size_t max_lag) {
    if (max_lag < 1) throw std::invalid_argument("spectral_fourier_check: need at least one lag");
    const std::size_t N = s.q();
    std::vector<cplx> centered(N);
    for (std::size_t j = 0; j < N; ++j)
        centered[j] = cplx(static_cast<double>(s.signs[j]) / 2.0, 0.0);  // bits - 1/2 = eps/2
    const CorrelationFunction corr = wiener_correlations(centered, max_lag);
    const double band = 3.0 / std::sqrt(static_cast<double>(N));
    std::vector<FourierCheckRow> rows;
    rows.reserve(max_lag);
    for (std::size_t k = 1; k <= max_lag; ++k) {
        FourierCheckRow row;
        row.lag = k;
        row.gamma_abs = std::abs(corr.gamma[k]);
        row.band = band;
        row.stability = corr.stability[k];
        row.consistent = row.gamma_abs <= band + row.stability;
        rows.push_back(row);
    }
    return rows;
}

// |(1/sqrt(N)) sum_n x_n z^n|^2 on the M-grid, M >= N. Its grid mean equals
// gamma(0) exactly (grid Parseval).
inline std::vector<double> periodogram(std::span<const cplx> x, std::size_t M) {
    const std::size_t N = x.size();
    if (N == 0) throw std::invalid_argument("periodogram: empty window");
    if (M < N) throw std::invalid_argument("periodogram: grid must satisfy M >= N");
    std::vector<cplx> coeffs(x.begin(), x.end());
    const auto values = dft_at_roots(coeffs, M);
    std::vector<double> power(M);
    const double inv_n = 1.0 / static_cast<double>(N);
    for (std::size_t j = 0; j < M; ++j) power[j] = std::norm(values[j]) * inv_n;
    return power;
}

}  // namespace flatlab
