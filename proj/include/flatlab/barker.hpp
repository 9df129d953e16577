#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "flatlab/parallel.hpp"
#include "flatlab/seq_stats.hpp"
#include "flatlab/sequences.hpp"

namespace flatlab {

/// Barker predicate result with the first violating sidelobe on failure.
struct BarkerWitness {
    bool ok = false;
    std::size_t k = 0;      // smallest violating lag when !ok
    long long c_k = 0;      // its autocorrelation value
};

inline BarkerWitness is_barker(const SignSequence& s) {
    const auto prof = autocorrelation(s);
    for (std::size_t k = 1; k < prof.q(); ++k) {
        if (std::llabs(prof.c[k]) > 1) return BarkerWitness{false, k, prof.c[k]};
    }
    return BarkerWitness{true, 0, 0};
}

// Lengths not excluded by the Turyn-Storer structure theorem: odd n <= 13,
// n <= 2, or n = 4 m^2.
inline bool turyn_storer_admissible(std::size_t n) {
    if (n == 0) return false;
    if (n <= 2) return true;
    if (n % 2 == 1) return n <= 13;
    if (n % 4 != 0) return false;
    const std::size_t m2 = n / 4;
    std::size_t r = static_cast<std::size_t>(std::sqrt(static_cast<double>(m2)));
    while (r * r < m2) ++r;
    while (r > 0 && r * r > m2) --r;
    return r * r == m2;
}

struct BarkerSearchResult {
    std::size_t n = 0;
    std::vector<SignSequence> found;          // eps_0 = +1 canonical forms, in search order
    std::vector<std::size_t> reversal_partner;  // index into found of each entry's reversed mate
    std::size_t count = 0;
    std::uint64_t nodes_explored = 0;
    double wall_seconds = 0.0;
    bool pruned = true;
};

namespace detail {

struct BarkerDfsState {
    std::size_t n;
    bool prune;
    std::vector<int8_t> seq;       // current prefix
    std::vector<long long> partial;  // partial autocorrelation sums s_k
    std::vector<std::vector<int8_t>> hits;
    std::uint64_t nodes = 0;
};

// Appends value at position t; returns false if some lag already violates the
// reachability bound |s_k| <= (n - t - 1) + 1 for the final |c_k| <= 1.
inline bool barker_push(BarkerDfsState& st, std::size_t t, int8_t value) {
    st.seq[t] = value;
    ++st.nodes;
    bool feasible = true;
    for (std::size_t k = 1; k <= t; ++k) {
        st.partial[k] += static_cast<long long>(st.seq[t - k]) * value;
        if (st.prune && std::llabs(st.partial[k]) > static_cast<long long>(st.n - t)) feasible = false;
    }
    return feasible || !st.prune;
}

inline void barker_pop(BarkerDfsState& st, std::size_t t) {
    const int8_t value = st.seq[t];
    for (std::size_t k = 1; k <= t; ++k)
        st.partial[k] -= static_cast<long long>(st.seq[t - k]) * value;
}

inline void barker_dfs(BarkerDfsState& st, std::size_t t) {
    if (t == st.n) {
        for (std::size_t k = 1; k < st.n; ++k)
            if (std::llabs(st.partial[k]) > 1) return;
        st.hits.push_back(st.seq);
        return;
    }
    for (int8_t value : {int8_t{1}, int8_t{-1}}) {
        if (barker_push(st, t, value)) barker_dfs(st, t + 1);
        barker_pop(st, t);
    }
}

}  // namespace detail

// Exhaustive search over sign sequences of length n with eps_0 = +1 fixed
// (global negation quotient; reversal mates are reported, not removed).
// Pruning cuts subtrees whose partial sidelobe sums cannot return to |c_k|<=1.
// The subtree split by prefix keeps the found order deterministic under any
// job count.
inline BarkerSearchResult search_barker(std::size_t n, bool prune = true, unsigned jobs = 1,
                                        std::size_t cap = 28) {
    if (n == 0) throw std::invalid_argument("search_barker: n must be >= 1");
    if (n > cap) throw std::invalid_argument("search_barker: n exceeds the configured cap");
    const auto t0 = std::chrono::steady_clock::now();

    BarkerSearchResult result;
    result.n = n;
    result.pruned = prune;

    jobs = effective_jobs(jobs);
    std::size_t split_depth = 1;
    while (split_depth < n && (std::size_t{1} << (split_depth - 1)) < 4 * jobs) ++split_depth;

    // Enumerate live prefixes of length split_depth (prefix pruning applies).
    std::vector<std::vector<int8_t>> prefixes;
    {
        detail::BarkerDfsState st;
        st.n = n;
        st.prune = prune;
        st.seq.assign(n, 0);
        st.partial.assign(n, 0);
        auto expand = [&](auto&& self, std::size_t t) -> void {
            if (t == split_depth) {
                prefixes.emplace_back(st.seq.begin(), st.seq.begin() + static_cast<long>(split_depth));
                return;
            }
            const std::vector<int8_t> choices =
                (t == 0) ? std::vector<int8_t>{1} : std::vector<int8_t>{1, -1};
            for (int8_t value : choices) {
                if (detail::barker_push(st, t, value)) self(self, t + 1);
                detail::barker_pop(st, t);
            }
        };
        expand(expand, 0);
        result.nodes_explored += st.nodes;
    }

    std::vector<std::vector<std::vector<int8_t>>> subtree_hits(prefixes.size());
    std::vector<std::uint64_t> subtree_nodes(prefixes.size(), 0);
    detail::parallel_for(prefixes.size(), jobs, [&](std::size_t i) {
        detail::BarkerDfsState st;
        st.n = n;
        st.prune = prune;
        st.seq.assign(n, 0);
        st.partial.assign(n, 0);
        for (std::size_t t = 0; t < prefixes[i].size(); ++t)
            detail::barker_push(st, t, prefixes[i][t]);  // live prefixes cannot fail the bound
        st.nodes = 0;
        detail::barker_dfs(st, prefixes[i].size());
        subtree_hits[i] = std::move(st.hits);
        subtree_nodes[i] = st.nodes;
    });

    for (std::size_t i = 0; i < prefixes.size(); ++i) {
        result.nodes_explored += subtree_nodes[i];
        for (auto& seq : subtree_hits[i]) result.found.emplace_back(SignSequence(std::move(seq)));
    }
    result.count = result.found.size();

    // Reversal metadata: index of the canonicalized reversal of each hit.
    result.reversal_partner.assign(result.count, result.count);
    for (std::size_t i = 0; i < result.count; ++i) {
        std::vector<int8_t> rev(result.found[i].signs.rbegin(), result.found[i].signs.rend());
        if (rev[0] == -1)
            for (auto& v : rev) v = static_cast<int8_t>(-v);
        for (std::size_t j = 0; j < result.count; ++j) {
            if (result.found[j].signs == rev) {
                result.reversal_partner[i] = j;
                break;
            }
        }
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace flatlab
