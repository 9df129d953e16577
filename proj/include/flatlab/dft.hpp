#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace flatlab {

using cplx = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Half-length twiddle table w[j] = exp(2*pi*i*j/n), j = 0..n/2-1.
inline std::vector<cplx> twiddle_table(std::size_t n) {
    std::vector<cplx> w(n / 2);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t j = 0; j < n / 2; ++j)
        w[j] = std::polar(1.0, step * static_cast<double>(j));
    return w;
}

// In-place iterative radix-2 transform, n a power of two.
// sign=+1: X[j] = sum_k x[k] exp(+2*pi*i*jk/n); sign=-1 the conjugate kernel.
// No 1/n scaling in either direction.
inline void fft_pow2(std::vector<cplx>& a, int sign, const std::vector<cplx>& w) {
    const std::size_t n = a.size();
    if (n < 2) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx tw = w[k * stride];
                if (sign < 0) tw = std::conj(tw);
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * tw;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

// Chirp factor exp(sign * i * pi * k^2 / M), with k^2 reduced mod 2M so the
// cos/sin argument stays small for large k.
inline cplx chirp(std::uint64_t k, std::uint64_t M, int sign) {
    const std::uint64_t r = (k * k) % (2 * M);
    const double ang = std::numbers::pi * static_cast<double>(r) / static_cast<double>(M);
    return std::polar(1.0, sign > 0 ? ang : -ang);
}

// Bluestein chirp transform: out[j] = sum_k x[k] exp(sign*2*pi*i*jk/M) for
// arbitrary M >= 1 and any input length <= M, via one power-of-two convolution.
inline std::vector<cplx> bluestein(std::span<const cplx> x, std::size_t M, int sign) {
    const std::size_t N = x.size();
    const std::size_t L = next_pow2(N + M - 1);
    const auto w = twiddle_table(L);

    std::vector<cplx> u(L, cplx(0.0, 0.0)), v(L, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < N; ++k) u[k] = x[k] * chirp(k, M, sign);
    // v[t] = conj-chirp(t) supported on t in [-(N-1), M-1], wrapped mod L
    for (std::size_t t = 0; t < M; ++t) v[t] = chirp(t, M, -sign);
    for (std::size_t t = 1; t < N; ++t) v[L - t] = chirp(t, M, -sign);

    fft_pow2(u, +1, w);
    fft_pow2(v, +1, w);
    for (std::size_t i = 0; i < L; ++i) u[i] *= v[i];
    fft_pow2(u, -1, w);

    std::vector<cplx> out(M);
    const double inv = 1.0 / static_cast<double>(L);
    for (std::size_t j = 0; j < M; ++j) out[j] = u[j] * inv * chirp(j, M, sign);
    return out;
}

}  // namespace detail

// Values of the exponential sum sum_k a_k exp(2*pi*i*jk/M) for j = 0..M-1,
// i.e. the coefficient vector evaluated at all M-th roots of unity.
// Exact-length transform for arbitrary M (Bluestein when M is not a power of
// two); coefficients beyond index M-1 are folded mod M first, which is the
// aliasing the root-of-unity kernel performs anyway.
inline std::vector<cplx> dft_at_roots(std::span<const cplx> coeffs, std::size_t M) {
    if (M == 0) throw std::invalid_argument("dft_at_roots: grid size M must be >= 1");
    std::vector<cplx> folded(M, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < coeffs.size(); ++k) folded[k % M] += coeffs[k];
    if (detail::is_pow2(M)) {
        const auto w = detail::twiddle_table(M);
        detail::fft_pow2(folded, +1, w);
        return folded;
    }
    return detail::bluestein(folded, M, +1);
}

inline std::vector<cplx> dft_at_roots(const std::vector<cplx>& coeffs, std::size_t M) {
    return dft_at_roots(std::span<const cplx>(coeffs), M);
}

namespace detail {

// Deterministic pairwise reduction; used wherever a parallel-friendly sum
// must not depend on chunking.
template <class T>
inline T pairwise_sum(std::span<const T> xs) {
    const std::size_t n = xs.size();
    if (n == 0) return T{};
    if (n <= 8) {
        T s = xs[0];
        for (std::size_t i = 1; i < n; ++i) s += xs[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

template <class T>
inline T pairwise_sum(const std::vector<T>& xs) {
    return pairwise_sum(std::span<const T>(xs));
}

}  // namespace detail

}  // namespace flatlab
