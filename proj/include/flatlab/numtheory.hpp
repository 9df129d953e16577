#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatlab/parallel.hpp"
#include "flatlab/poly_core.hpp"
#include "flatlab/seq_stats.hpp"

namespace flatlab {

/// Liouville lambda, Moebius mu and their prefix sums up to N, indexed 1..N.
struct SieveTable {
    std::uint64_t N = 0;
    std::vector<int8_t> lambda;       // lambda[n], entry 0 unused
    std::vector<int8_t> mu;           // mu[n], entry 0 unused
    std::vector<int32_t> mertens;     // M(x) = sum_{n<=x} mu(n)
    std::vector<int32_t> lambda_sum;  // L(x) = sum_{n<=x} lambda(n)

    int lambda_at(std::uint64_t n) const { return lambda[n]; }
    int mu_at(std::uint64_t n) const { return mu[n]; }
    long long mertens_at(std::uint64_t x) const { return mertens[x]; }
    long long lambda_sum_at(std::uint64_t x) const { return lambda_sum[x]; }
};

enum class ArithmeticFunction { Mu, Lambda };

// Linear sieve over the smallest-prime-factor recurrence; every n <= N is
// touched once, so lambda and mu come out exact.
inline SieveTable sieve(std::uint64_t N) {
    if (N == 0) throw std::invalid_argument("sieve: bound N must be >= 1");
    if (N > (std::uint64_t{1} << 30))
        throw std::invalid_argument("sieve: bound exceeds the 2^30 memory budget");
    SieveTable t;
    t.N = N;
    t.lambda.assign(N + 1, 0);
    t.mu.assign(N + 1, 0);
    t.lambda[1] = 1;
    t.mu[1] = 1;
    std::vector<uint8_t> composite(N + 1, 0);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= N; ++i) {
        if (!composite[i]) {
            primes.push_back(static_cast<std::uint32_t>(i));
            t.lambda[i] = -1;
            t.mu[i] = -1;
        }
        for (std::uint32_t p : primes) {
            const std::uint64_t ip = i * p;
            if (ip > N) break;
            composite[ip] = 1;
            t.lambda[ip] = static_cast<int8_t>(-t.lambda[i]);  // completely multiplicative
            if (i % p == 0) {
                t.mu[ip] = 0;
                break;
            }
            t.mu[ip] = static_cast<int8_t>(-t.mu[i]);
        }
    }
    t.mertens.assign(N + 1, 0);
    t.lambda_sum.assign(N + 1, 0);
    for (std::uint64_t n = 1; n <= N; ++n) {
        t.mertens[n] = t.mertens[n - 1] + t.mu[n];
        t.lambda_sum[n] = t.lambda_sum[n - 1] + t.lambda[n];
    }
    return t;
}

// ---------------------------------------------------------------------------
// Binary table format: magic "FLSV", u32 version, u64 N, lambda packed one bit
// per n (bit 1 <=> lambda = +1), mu packed two bits per n (code = mu + 1),
// both LSB-first from n = 1.
// ---------------------------------------------------------------------------

inline void write_sieve_table(const std::string& path, const SieveTable& t) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_sieve_table: cannot open " + path);
    const char magic[4] = {'F', 'L', 'S', 'V'};
    os.write(magic, 4);
    const std::uint32_t version = 1;
    os.write(reinterpret_cast<const char*>(&version), 4);
    os.write(reinterpret_cast<const char*>(&t.N), 8);
    std::vector<unsigned char> lam((t.N + 7) / 8, 0);
    for (std::uint64_t n = 1; n <= t.N; ++n)
        if (t.lambda[n] > 0) lam[(n - 1) / 8] |= static_cast<unsigned char>(1u << ((n - 1) % 8));
    os.write(reinterpret_cast<const char*>(lam.data()), static_cast<std::streamsize>(lam.size()));
    std::vector<unsigned char> mu((t.N * 2 + 7) / 8, 0);
    for (std::uint64_t n = 1; n <= t.N; ++n) {
        const unsigned code = static_cast<unsigned>(t.mu[n] + 1);
        const std::uint64_t bit = (n - 1) * 2;
        mu[bit / 8] |= static_cast<unsigned char>(code << (bit % 8));
    }
    os.write(reinterpret_cast<const char*>(mu.data()), static_cast<std::streamsize>(mu.size()));
    if (!os) throw std::runtime_error("write_sieve_table: short write to " + path);
}

inline SieveTable read_sieve_table(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_sieve_table: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (is.gcount() != 4 || magic[0] != 'F' || magic[1] != 'L' || magic[2] != 'S' || magic[3] != 'V')
        throw std::runtime_error("read_sieve_table: bad magic in " + path);
    std::uint32_t version = 0;
    is.read(reinterpret_cast<char*>(&version), 4);
    if (version != 1) throw std::runtime_error("read_sieve_table: unsupported version");
    SieveTable t;
    is.read(reinterpret_cast<char*>(&t.N), 8);
    if (!is || t.N == 0) throw std::runtime_error("read_sieve_table: bad table bound");
    std::vector<unsigned char> lam((t.N + 7) / 8);
    is.read(reinterpret_cast<char*>(lam.data()), static_cast<std::streamsize>(lam.size()));
    std::vector<unsigned char> mu((t.N * 2 + 7) / 8);
    is.read(reinterpret_cast<char*>(mu.data()), static_cast<std::streamsize>(mu.size()));
    if (!is) throw std::runtime_error("read_sieve_table: truncated payload in " + path);
    t.lambda.assign(t.N + 1, 0);
    t.mu.assign(t.N + 1, 0);
    for (std::uint64_t n = 1; n <= t.N; ++n) {
        t.lambda[n] = (lam[(n - 1) / 8] >> ((n - 1) % 8)) & 1u ? 1 : -1;
        const std::uint64_t bit = (n - 1) * 2;
        const unsigned code = (mu[bit / 8] >> (bit % 8)) & 3u;
        if (code > 2) throw std::runtime_error("read_sieve_table: bad mu code");
        t.mu[n] = static_cast<int8_t>(static_cast<int>(code) - 1);
    }
    t.mertens.assign(t.N + 1, 0);
    t.lambda_sum.assign(t.N + 1, 0);
    for (std::uint64_t n = 1; n <= t.N; ++n) {
        t.mertens[n] = t.mertens[n - 1] + t.mu[n];
        t.lambda_sum[n] = t.lambda_sum[n - 1] + t.lambda[n];
    }
    return t;
}

/// |S(x)| / x^(1/2+eps) at geometric checkpoints; a finite-range scan of the
/// bound whose truth for all x is equivalent to the Riemann Hypothesis. No
/// asymptotic claim is made or testable here.
struct BoundCheckpoint {
    std::uint64_t x = 0;
    long long partial_sum = 0;
    double ratio = 0.0;
};

struct BoundScan {
    ArithmeticFunction which = ArithmeticFunction::Mu;
    double epsilon = 0.0;
    std::vector<BoundCheckpoint> checkpoints;  // strictly increasing x
    double max_ratio = 0.0;
};

inline BoundScan rh_bound_scan(const SieveTable& t, ArithmeticFunction which, double epsilon) {
    if (epsilon <= 0.0) throw std::invalid_argument("rh_bound_scan: epsilon must be > 0");
    BoundScan scan;
    scan.which = which;
    scan.epsilon = epsilon;
    std::vector<std::uint64_t> xs;
    for (std::uint64_t x = t.N; x >= 1; x /= 2) {
        xs.push_back(x);
        if (x == 1) break;
    }
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
        const std::uint64_t x = *it;
        BoundCheckpoint cp;
        cp.x = x;
        cp.partial_sum = which == ArithmeticFunction::Mu ? t.mertens_at(x) : t.lambda_sum_at(x);
        cp.ratio = static_cast<double>(std::llabs(cp.partial_sum)) /
                   std::pow(static_cast<double>(x), 0.5 + epsilon);
        scan.max_ratio = std::max(scan.max_ratio, cp.ratio);
        scan.checkpoints.push_back(cp);
    }
    return scan;
}

/// Finite-window Chowla correlation (1/N) sum_{n<=N} prod_i lambda(n + a_i),
/// reported against the 3/sqrt(N) diagnostic band.
struct ChowlaResult {
    double value = 0.0;
    double band = 0.0;
    std::uint64_t window = 0;
};

inline ChowlaResult chowla_correlation(const SieveTable& t, std::span<const std::uint64_t> offsets,
                                       std::uint64_t N) {
    if (N == 0) throw std::invalid_argument("chowla_correlation: window must be >= 1");
    if (offsets.empty()) throw std::invalid_argument("chowla_correlation: need at least one offset");
    std::uint64_t max_off = 0;
    for (std::uint64_t a : offsets) max_off = std::max(max_off, a);
    if (N + max_off > t.N)
        throw std::invalid_argument("chowla_correlation: window plus offset exceeds the sieve bound");
    long long acc = 0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        int prod = 1;
        for (std::uint64_t a : offsets) prod *= t.lambda_at(n + a);
        acc += prod;
    }
    ChowlaResult out;
    out.value = static_cast<double>(acc) / static_cast<double>(N);
    out.band = 3.0 / std::sqrt(static_cast<double>(N));
    out.window = N;
    return out;
}

/// L^alpha norms of (1/sqrt(N)) sum_{j<=N} f(j) z^j for f = mu or lambda.
/// alpha = 2 and 4 go through exact coefficient/autocorrelation routes;
/// other alpha through the bracketed quadrature estimate.
struct NormTableRow {
    double alpha = 0.0;
    double value = 0.0;    // ||.||_alpha^alpha
    double bracket = 0.0;  // zero on the exact routes
    bool exact = false;
};

namespace detail {

inline std::vector<long long> arithmetic_window(const SieveTable& t, ArithmeticFunction which,
                                                std::uint64_t start, std::uint64_t len) {
    std::vector<long long> w(len);
    for (std::uint64_t j = 0; j < len; ++j)
        w[j] = which == ArithmeticFunction::Mu ? t.mu_at(start + j) : t.lambda_at(start + j);
    return w;
}

}  // namespace detail

inline std::vector<NormTableRow> arithmetic_polynomial_norms(const SieveTable& t,
                                                             ArithmeticFunction which,
                                                             std::uint64_t N,
                                                             std::span<const double> alphas,
                                                             std::size_t oversample = 4) {
    if (N == 0 || N > t.N)
        throw std::invalid_argument("arithmetic_polynomial_norms: N must be in [1, table bound]");
    const auto window = detail::arithmetic_window(t, which, 1, N);
    const double scale2 = 1.0 / static_cast<double>(N);
    std::vector<NormTableRow> rows;
    for (double alpha : alphas) {
        NormTableRow row;
        row.alpha = alpha;
        if (alpha == 2.0) {
            long long energy = 0;
            for (long long v : window) energy += v * v;
            row.value = scale2 * static_cast<double>(energy);
            row.exact = true;
        } else if (alpha == 4.0) {
            const auto prof = autocorrelation(window);
            const double c0 = static_cast<double>(prof.c[0]);
            row.value = scale2 * scale2 *
                        (c0 * c0 + 2.0 * static_cast<double>(prof.sidelobe_energy));
            row.exact = true;
        } else {
            NormalizedPolynomial p;
            p.coeffs.reserve(N);
            for (long long v : window) p.coeffs.emplace_back(static_cast<double>(v), 0.0);
            p.scale = 1.0 / std::sqrt(static_cast<double>(N));
            const Bracketed est = lp_norm_estimate(p, alpha, oversample);
            row.value = est.value;
            row.bracket = est.bracket;
        }
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Monte-Carlo moment experiment: sample mean of ||P||_p^p over T coefficient
// draws, against the Gamma(p/2 + 1) limit of the pairwise-independence story.
// ---------------------------------------------------------------------------

enum class MomentModel { RandomSign, LambdaShifted };

struct MomentResult {
    double mean = 0.0;
    double std_error = 0.0;
    double target = 0.0;  // Gamma(p/2 + 1)
    std::optional<double> exact_expectation;  // 2 - 1/N for random signs at p = 4
    bool quadrature_route = false;            // odd p falls back to bracketed quadrature
    double max_bracket = 0.0;                 // largest refinement delta seen (quadrature route)
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// ||P||_p^p for even p through one exact-length grid: |P|^p is a Laurent
// polynomial of degree (p/2)(N-1), so any grid with M > (p/2)(N-1) integrates
// it exactly.
inline double even_moment_exact(std::span<const long long> coeffs, int p) {
    const std::size_t N = coeffs.size();
    if (p == 2) {
        long long energy = 0;
        for (long long v : coeffs) energy += v * v;
        return static_cast<double>(energy) / static_cast<double>(N);
    }
    if (p == 4) {
        const auto prof = autocorrelation(coeffs);
        const double c0 = static_cast<double>(prof.c[0]);
        const double scale2 = 1.0 / static_cast<double>(N);
        return scale2 * scale2 * (c0 * c0 + 2.0 * static_cast<double>(prof.sidelobe_energy));
    }
    const std::size_t half = static_cast<std::size_t>(p) / 2;
    const std::size_t M = next_pow2(half * (N - 1) + 1);
    std::vector<cplx> c(N);
    for (std::size_t j = 0; j < N; ++j) c[j] = cplx(static_cast<double>(coeffs[j]), 0.0);
    const auto values = dft_at_roots(c, M);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(N));
    std::vector<double> terms(M);
    for (std::size_t j = 0; j < M; ++j)
        terms[j] = std::pow(std::abs(values[j]) * inv_sqrt_n, static_cast<double>(p));
    return pairwise_sum(terms) / static_cast<double>(M);
}

}  // namespace detail

// Trials get independent splitmix-derived seeds, so results are reproducible
// bit for bit under any job count.
inline MomentResult moment_experiment(MomentModel model, std::size_t N, std::size_t T, int p,
                                      std::uint64_t seed, const SieveTable* table = nullptr,
                                      unsigned jobs = 1) {
    if (N < 2) throw std::invalid_argument("moment_experiment: N must be >= 2");
    if (T < 30) throw std::invalid_argument("moment_experiment: need at least 30 trials");
    if (p < 1) throw std::invalid_argument("moment_experiment: p must be >= 1");
    if (model == MomentModel::LambdaShifted) {
        if (table == nullptr) throw std::invalid_argument("moment_experiment: lambda model needs a sieve table");
        if (table->N < N) throw std::invalid_argument("moment_experiment: sieve table shorter than N");
    }

    const bool even_p = p % 2 == 0;
    std::vector<double> values(T, 0.0);
    std::vector<double> brackets(T, 0.0);
    detail::parallel_for(T, jobs, [&](std::size_t trial) {
        std::mt19937_64 rng(detail::splitmix64(seed + 0x1000 * (trial + 1)));
        std::vector<long long> coeffs(N);
        if (model == MomentModel::RandomSign) {
            for (std::size_t j = 0; j < N; ++j) coeffs[j] = (rng() & 1ull) ? 1 : -1;
        } else {
            std::uniform_int_distribution<std::uint64_t> dist(1, table->N - N + 1);
            const std::uint64_t start = dist(rng);
            for (std::size_t j = 0; j < N; ++j)
                coeffs[j] = table->lambda_at(start + j);
        }
        if (even_p) {
            values[trial] = detail::even_moment_exact(coeffs, p);
        } else {
            NormalizedPolynomial poly;
            poly.coeffs.reserve(N);
            for (long long v : coeffs) poly.coeffs.emplace_back(static_cast<double>(v), 0.0);
            poly.scale = 1.0 / std::sqrt(static_cast<double>(N));
            const Bracketed est = lp_norm_estimate(poly, static_cast<double>(p), 4);
            values[trial] = est.value;
            brackets[trial] = est.bracket;
        }
    });

    MomentResult out;
    out.quadrature_route = !even_p;
    out.mean = detail::pairwise_sum(values) / static_cast<double>(T);
    std::vector<double> sq(T);
    for (std::size_t i = 0; i < T; ++i) sq[i] = (values[i] - out.mean) * (values[i] - out.mean);
    const double var = detail::pairwise_sum(sq) / static_cast<double>(T - 1);
    out.std_error = std::sqrt(var / static_cast<double>(T));
    out.target = std::tgamma(static_cast<double>(p) / 2.0 + 1.0);
    if (model == MomentModel::RandomSign && p == 4)
        out.exact_expectation = 2.0 - 1.0 / static_cast<double>(N);
    for (double b : brackets) out.max_bracket = std::max(out.max_bracket, b);
    return out;
}

}  // namespace flatlab
