#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <vector>

#include "flatlab/dft.hpp"
#include "flatlab/fraction.hpp"
#include "flatlab/sequences.hpp"

namespace flatlab {

/// Aperiodic autocorrelations c_0..c_{q-1} of an integer coefficient vector,
/// with the two energy sums the fourth-moment identities consume.
struct AutocorrelationProfile {
    std::vector<long long> c;
    long long sidelobe_energy = 0;  // sum_{k>=1} c_k^2
    long long fold_energy = 0;      // sum_{k>=1} c_k * c_{q-k}

    std::size_t q() const { return c.size(); }
};

namespace detail {

inline std::vector<long long> autocorrelation_direct(std::span<const long long> a) {
    const std::size_t q = a.size();
    std::vector<long long> c(q, 0);
    for (std::size_t k = 0; k < q; ++k) {
        long long s = 0;
        for (std::size_t j = 0; j + k < q; ++j) s += a[j] * a[j + k];
        c[k] = s;
    }
    return c;
}

inline long long autocorrelation_single(std::span<const long long> a, std::size_t k) {
    long long s = 0;
    for (std::size_t j = 0; j + k < a.size(); ++j) s += a[j] * a[j + k];
    return s;
}

// O(q log q) correlation through one power-of-two transform pair. Inputs are
// small integers, so rounding the convolution output recovers exact values;
// a few lags are re-checked against the direct sum.
inline std::vector<long long> autocorrelation_fft(std::span<const long long> a) {
    const std::size_t q = a.size();
    const std::size_t L = next_pow2(2 * q);
    const auto w = twiddle_table(L);
    std::vector<cplx> buf(L, cplx(0.0, 0.0));
    for (std::size_t j = 0; j < q; ++j) buf[j] = cplx(static_cast<double>(a[j]), 0.0);
    fft_pow2(buf, +1, w);
    for (auto& v : buf) v = cplx(std::norm(v), 0.0);
    fft_pow2(buf, -1, w);
    std::vector<long long> c(q, 0);
    const double inv = 1.0 / static_cast<double>(L);
    for (std::size_t k = 0; k < q; ++k) c[k] = std::llround(buf[k].real() * inv);
    for (std::size_t k : {std::size_t{1}, q / 2, q - 1}) {
        if (k >= q) continue;
        if (c[k] != autocorrelation_single(a, k))
            throw std::runtime_error("autocorrelation_fft: rounding check failed");
    }
    return c;
}

}  // namespace detail

inline AutocorrelationProfile autocorrelation(std::span<const long long> a) {
    const std::size_t q = a.size();
    if (q == 0) throw std::invalid_argument("autocorrelation: empty input");
    if (q > (1ull << 21))
        throw std::invalid_argument("autocorrelation: length exceeds the 64-bit-energy-safe cap 2^21");
    AutocorrelationProfile p;
    p.c = (q > 4096) ? detail::autocorrelation_fft(a) : detail::autocorrelation_direct(a);
    for (std::size_t k = 1; k < q; ++k) {
        p.sidelobe_energy += p.c[k] * p.c[k];
        p.fold_energy += p.c[k] * p.c[q - k];
    }
    return p;
}

inline AutocorrelationProfile autocorrelation(const std::vector<long long>& a) {
    return autocorrelation(std::span<const long long>(a));
}

inline std::vector<long long> as_int_coeffs(const SignSequence& s) {
    return std::vector<long long>(s.signs.begin(), s.signs.end());
}

inline std::vector<long long> as_int_coeffs(const BinarySequence& b) {
    return std::vector<long long>(b.bits.begin(), b.bits.end());
}

inline AutocorrelationProfile autocorrelation(const SignSequence& s) {
    return autocorrelation(as_int_coeffs(s));
}

inline AutocorrelationProfile autocorrelation(const BinarySequence& b) {
    return autocorrelation(as_int_coeffs(b));
}

// ||P||_4^4 = 1 + (2/q^2) * sidelobe energy for the L^2-normalized sign
// sequence polynomial.
inline double l4_from_autocorrelation(const SignSequence& s) {
    const auto p = autocorrelation(s);
    const double q = static_cast<double>(s.q());
    return 1.0 + 2.0 * static_cast<double>(p.sidelobe_energy) / (q * q);
}

inline Fraction l4_from_autocorrelation_exact(const SignSequence& s) {
    const auto p = autocorrelation(s);
    const long long q = static_cast<long long>(s.q());
    return Fraction(q * q + 2 * p.sidelobe_energy, q * q);
}

// Merit factor q^2 / (2 * sidelobe energy). Defect-free input (only q = 1)
// has no finite merit factor; callers get an empty denominator via ok=false.
struct MeritFactor {
    bool finite = true;
    Fraction value;  // meaningful when finite
};

inline MeritFactor merit_factor_exact(const SignSequence& s) {
    const auto p = autocorrelation(s);
    MeritFactor mf;
    if (p.sidelobe_energy == 0) {
        mf.finite = false;
        return mf;
    }
    const long long q = static_cast<long long>(s.q());
    mf.value = Fraction(q * q, 2 * p.sidelobe_energy);
    return mf;
}

/// The two one-grid fourth-moment sums for the Newman-Bourgain companion
/// Q(z) = (2/sqrt(q)) * sum eta_j z^j, from exact integer autocorrelations:
///   s_plus  = (1/2q) sum_j |Q(xi_{q,j})|^4
///   s_minus = (1/2q) sum_j |Q(-xi_{q,j})|^4
struct QuadraticRootSums {
    double s_plus = 0.0;
    double s_minus = 0.0;
};

inline QuadraticRootSums quadratic_root_sums(const BinarySequence& b) {
    const auto p = autocorrelation(b);
    const double q = static_cast<double>(b.q());
    const double scale2 = 4.0 / q;             // coefficient 2/sqrt(q) squared
    const double c0 = scale2 * static_cast<double>(p.c[0]);
    const double side = scale2 * scale2 * static_cast<double>(p.sidelobe_energy);
    const double fold = scale2 * scale2 * static_cast<double>(p.fold_energy);
    const double sgn = (b.q() % 2 == 0) ? 1.0 : -1.0;
    QuadraticRootSums out;
    out.s_plus = 0.5 * (c0 * c0 + 2.0 * fold + 2.0 * side);
    out.s_minus = 0.5 * (c0 * c0 + 2.0 * sgn * fold + 2.0 * side);
    return out;
}

/// Residue-class counts of a finite integer set mod r and their discrete
/// Fourier transform DF_r(1_A)(l) = (1/r) sum_j A(j) xi_{r,jl}.
struct SetSpectrum {
    std::size_t r = 0;
    std::vector<long long> counts;
    std::vector<cplx> dft;
    bool balanced = false;
};

inline SetSpectrum set_dft(std::span<const std::uint64_t> A, std::size_t r, bool balanced = false) {
    if (r < 2) throw std::invalid_argument("set_dft: modulus r must be >= 2");
    SetSpectrum out;
    out.r = r;
    out.balanced = balanced;
    out.counts.assign(r, 0);
    for (std::uint64_t k : A) out.counts[k % r] += 1;
    std::vector<cplx> f(r);
    const double shift = balanced ? static_cast<double>(A.size()) : 0.0;
    for (std::size_t j = 0; j < r; ++j)
        f[j] = cplx(static_cast<double>(out.counts[j]) - shift, 0.0);
    out.dft = dft_at_roots(f, r);
    const double inv = 1.0 / static_cast<double>(r);
    for (auto& v : out.dft) v *= inv;
    return out;
}

inline SetSpectrum set_dft(const std::vector<std::uint64_t>& A, std::size_t r, bool balanced = false) {
    return set_dft(std::span<const std::uint64_t>(A), r, balanced);
}

/// Finite-window densities of H, its lag shifts, their intersections and
/// symmetric differences, all relative to the window [0, q).
struct HSetDensityRow {
    std::size_t lag = 0;
    double intersection = 0.0;  // |H cap (H+lag) cap [0,q)| / q
    double shifted = 0.0;       // |(H+lag) cap [0,q)| / q
    double symdiff = 0.0;       // |H delta (H+lag)| / q, within the window
};

struct HSetDensityTable {
    std::size_t q = 0;
    double density = 0.0;  // |H| / q
    std::vector<HSetDensityRow> rows;
};

inline HSetDensityTable h_set_densities(std::span<const std::uint64_t> H, std::size_t q,
                                        std::span<const std::size_t> lags) {
    if (q == 0) throw std::invalid_argument("h_set_densities: window q must be >= 1");
    std::vector<uint8_t> in(q, 0);
    std::size_t members = 0;
    for (std::uint64_t j : H) {
        if (j < q && !in[j]) {
            in[j] = 1;
            ++members;
        }
    }
    HSetDensityTable out;
    out.q = q;
    out.density = static_cast<double>(members) / static_cast<double>(q);
    for (std::size_t lag : lags) {
        std::size_t inter = 0, shifted = 0;
        for (std::size_t j = 0; j < q; ++j) {
            const bool in_shift = j >= lag && in[j - lag];
            if (in_shift) ++shifted;
            if (in_shift && in[j]) ++inter;
        }
        HSetDensityRow row;
        row.lag = lag;
        row.intersection = static_cast<double>(inter) / static_cast<double>(q);
        row.shifted = static_cast<double>(shifted) / static_cast<double>(q);
        row.symdiff = static_cast<double>(members + shifted - 2 * inter) / static_cast<double>(q);
        out.rows.push_back(row);
    }
    return out;
}

/// Lag correlation diagnostics against the 3/sqrt(N) null band.
struct IndependenceRow {
    std::size_t lag = 0;
    double value = 0.0;
    double band = 0.0;
    bool within_band = false;
};

// Mean of eps_j * eps_{j+lag} over the overlap of the first N terms with the
// lag shift; the divisor is the actual term count, so constant sequences give
// exactly +-1 at every lag.
inline std::vector<IndependenceRow> pairwise_independence_scan(const SignSequence& s,
                                                               std::size_t max_lag,
                                                               std::size_t window) {
    const std::size_t q = s.q();
    if (window > q) throw std::invalid_argument("pairwise_independence_scan: window exceeds sequence length");
    if (max_lag >= window) throw std::invalid_argument("pairwise_independence_scan: max_lag must be < window");
    const double band = 3.0 / std::sqrt(static_cast<double>(window));
    std::vector<IndependenceRow> rows;
    rows.reserve(max_lag);
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        const std::size_t terms = (window + lag <= q) ? window : q - lag;
        long long acc = 0;
        for (std::size_t j = 0; j < terms; ++j)
            acc += static_cast<long long>(s.signs[j]) * static_cast<long long>(s.signs[j + lag]);
        IndependenceRow row;
        row.lag = lag;
        row.value = static_cast<double>(acc) / static_cast<double>(terms);
        row.band = band;
        row.within_band = std::abs(row.value) <= band;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace flatlab
