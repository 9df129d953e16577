#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "flatlab/poly_core.hpp"
#include "flatlab/sequences.hpp"

namespace flatlab {

/// Sign block over {-1,+1}; the building unit of generalized Morse sequences.
struct MorseBlock {
    std::vector<int8_t> entries;

    MorseBlock() = default;
    explicit MorseBlock(std::vector<int8_t> e) : entries(std::move(e)) {
        if (entries.empty()) throw std::invalid_argument("MorseBlock: length must be >= 1");
        for (int8_t v : entries)
            if (v != 1 && v != -1) throw std::invalid_argument("MorseBlock: entries must be +1 or -1");
    }

    std::size_t length() const { return entries.size(); }
    bool starts_plus() const { return entries.front() == 1; }
};

inline MorseBlock parse_morse_block(std::string_view text) {
    return MorseBlock(parse_sign_sequence(text).signs);
}

inline MorseBlock block_concat(const MorseBlock& c, const MorseBlock& d) {
    std::vector<int8_t> out;
    out.reserve(c.length() + d.length());
    out.insert(out.end(), c.entries.begin(), c.entries.end());
    out.insert(out.end(), d.entries.begin(), d.entries.end());
    return MorseBlock(std::move(out));
}

// (C x D)[s + t*k] = C[s] * D[t], k = |C|; C's index is the fast one.
inline MorseBlock block_product(const MorseBlock& c, const MorseBlock& d) {
    const std::size_t k = c.length();
    std::vector<int8_t> out(k * d.length());
    for (std::size_t t = 0; t < d.length(); ++t)
        for (std::size_t s = 0; s < k; ++s)
            out[s + t * k] = static_cast<int8_t>(c.entries[s] * d.entries[t]);
    return MorseBlock(std::move(out));
}

/// Materialized prefix of the generalized Morse sequence
/// B_{n_1} x B_{n_2} x ... (left fold; convergence needs each B[0] = +1).
struct MorsePrefix {
    std::vector<MorseBlock> factors;      // factors actually consumed
    std::vector<int8_t> sequence;         // length = product of consumed factor lengths
    std::vector<std::size_t> boundaries;  // running products after each factor
    bool had_unit_factor = false;         // some factor of length 1 (allowed, warned at CLI)
};

// Left-folds block products until the materialized prefix has length >= min_length
// or (cycle = false) the factor list runs out. With cycle = true the factor
// list repeats, which is how fixed substitutions like Thue-Morse are driven.
inline MorsePrefix morse_prefix(const std::vector<MorseBlock>& factors, std::size_t min_length,
                                bool cycle = false) {
    if (factors.empty()) throw std::invalid_argument("morse_prefix: need at least one factor");
    for (const MorseBlock& f : factors)
        if (!f.starts_plus())
            throw std::invalid_argument("morse_prefix: every factor must start with +1 (coordinatewise convergence)");
    MorsePrefix out;
    MorseBlock acc = factors.front();
    out.factors.push_back(acc);
    out.boundaries.push_back(acc.length());
    out.had_unit_factor = acc.length() == 1;
    std::size_t next = 1;
    while (acc.length() < min_length) {
        if (next >= factors.size()) {
            if (!cycle) break;
            next = 0;
        }
        const MorseBlock& f = factors[next++];
        out.had_unit_factor = out.had_unit_factor || f.length() == 1;
        acc = block_product(acc, f);
        out.factors.push_back(f);
        out.boundaries.push_back(acc.length());
    }
    out.sequence = std::move(acc.entries);
    return out;
}

/// Flatness metrics along prefixes of a Morse sequence; lengths that are not
/// full factor products are flagged rather than rejected.
struct MorseScanRow {
    std::size_t length = 0;
    bool product_length = false;
    FlatnessReport report;
};

struct MorseScanResult {
    std::vector<MorseScanRow> rows;
    bool l4_strictly_increasing = false;  // across the requested lengths, in order
};

inline MorseScanResult morse_flatness_scan(const std::vector<MorseBlock>& factors,
                                           const std::vector<std::size_t>& lengths,
                                           bool cycle = false, std::size_t oversample = 8) {
    std::size_t need = 1;
    for (std::size_t len : lengths) need = std::max(need, len);
    const MorsePrefix prefix = morse_prefix(factors, need, cycle);
    MorseScanResult out;
    out.l4_strictly_increasing = lengths.size() >= 2;
    double prev = 0.0;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        const std::size_t len = lengths[i];
        if (len == 0 || len > prefix.sequence.size())
            throw std::invalid_argument("morse_flatness_scan: length exceeds the generated prefix");
        MorseScanRow row;
        row.length = len;
        row.product_length = false;
        for (std::size_t b : prefix.boundaries)
            if (b == len) row.product_length = true;
        SignSequence s(std::vector<int8_t>(prefix.sequence.begin(),
                                           prefix.sequence.begin() + static_cast<long>(len)));
        row.report = flatness_report(s, oversample);
        if (i > 0 && row.report.l4_fourth_power <= prev) out.l4_strictly_increasing = false;
        prev = row.report.l4_fourth_power;
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace flatlab
