#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flatlab {

/// Finite sign sequence (coefficients of a Littlewood-type polynomial).
/// Entries are exactly -1 or +1.
struct SignSequence {
    std::vector<int8_t> signs;

    SignSequence() = default;
    explicit SignSequence(std::vector<int8_t> s) : signs(std::move(s)) {
        if (signs.empty()) throw std::invalid_argument("SignSequence: length must be >= 1");
        for (int8_t v : signs)
            if (v != 1 && v != -1) throw std::invalid_argument("SignSequence: entries must be +1 or -1");
    }

    std::size_t q() const { return signs.size(); }

    // Class constraint used by the Littlewood <-> Newman-Bourgain map:
    // first and last signs are +1.
    bool is_littlewood_class() const { return signs.front() == 1 && signs.back() == 1; }

    std::string to_string() const {
        std::string s;
        s.reserve(signs.size());
        for (int8_t v : signs) s.push_back(v > 0 ? '+' : '-');
        return s;
    }
};

/// Finite 0/1 sequence with cached ones-count m and support set H.
struct BinarySequence {
    std::vector<uint8_t> bits;
    std::size_t m = 0;

    BinarySequence() = default;
    explicit BinarySequence(std::vector<uint8_t> b) : bits(std::move(b)) {
        if (bits.empty()) throw std::invalid_argument("BinarySequence: length must be >= 1");
        for (uint8_t v : bits)
            if (v > 1) throw std::invalid_argument("BinarySequence: entries must be 0 or 1");
        m = static_cast<std::size_t>(std::accumulate(bits.begin(), bits.end(), std::size_t{0}));
    }

    std::size_t q() const { return bits.size(); }

    bool is_nb_class() const { return bits.front() == 1 && bits.back() == 1; }

    // H = { j : bit_j = 1 }
    std::vector<std::size_t> support() const {
        std::vector<std::size_t> h;
        h.reserve(m);
        for (std::size_t j = 0; j < bits.size(); ++j)
            if (bits[j]) h.push_back(j);
        return h;
    }

    std::string to_string() const {
        std::string s;
        s.reserve(bits.size());
        for (uint8_t v : bits) s.push_back(v ? '1' : '0');
        return s;
    }
};

inline SignSequence parse_sign_sequence(std::string_view text) {
    std::vector<int8_t> s;
    s.reserve(text.size());
    for (char c : text) {
        if (c == '+') s.push_back(1);
        else if (c == '-') s.push_back(-1);
        else if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
        else throw std::invalid_argument(std::string("parse_sign_sequence: unexpected character '") + c + "'");
    }
    return SignSequence(std::move(s));
}

inline BinarySequence parse_binary_sequence(std::string_view text) {
    std::vector<uint8_t> b;
    b.reserve(text.size());
    for (char c : text) {
        if (c == '0') b.push_back(0);
        else if (c == '1') b.push_back(1);
        else if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
        else throw std::invalid_argument(std::string("parse_binary_sequence: unexpected character '") + c + "'");
    }
    return BinarySequence(std::move(b));
}

enum class SequenceKind { Sign, Binary };

struct ParsedSequence {
    SequenceKind kind;
    SignSequence sign;      // filled when kind == Sign
    BinarySequence binary;  // filled when kind == Binary
};

// Accepts either encoding: "+-+" parses as signs, "101" as bits.
inline ParsedSequence parse_sequence(std::string_view text) {
    bool has_sign = false, has_bit = false;
    for (char c : text) {
        if (c == '+' || c == '-') has_sign = true;
        else if (c == '0' || c == '1') has_bit = true;
    }
    if (has_sign && has_bit)
        throw std::invalid_argument("parse_sequence: mixed +/- and 0/1 alphabets");
    ParsedSequence out;
    if (has_sign || !has_bit) {
        out.kind = SequenceKind::Sign;
        out.sign = parse_sign_sequence(text);
    } else {
        out.kind = SequenceKind::Binary;
        out.binary = parse_binary_sequence(text);
    }
    return out;
}

inline SignSequence to_signs(const BinarySequence& b) {
    std::vector<int8_t> s(b.q());
    for (std::size_t j = 0; j < b.q(); ++j) s[j] = b.bits[j] ? 1 : -1;
    return SignSequence(std::move(s));
}

// ---------------------------------------------------------------------------
// Bitset file format: 8-byte little-endian unsigned count, then packed bits,
// LSB-first within each byte. A sign sequence stores +1 as bit 1, -1 as bit 0.
// ---------------------------------------------------------------------------

inline void write_bitset_file(const std::string& path, const std::vector<uint8_t>& bits) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_bitset_file: cannot open " + path);
    const std::uint64_t n = bits.size();
    unsigned char header[8];
    for (int i = 0; i < 8; ++i) header[i] = static_cast<unsigned char>((n >> (8 * i)) & 0xFF);
    os.write(reinterpret_cast<const char*>(header), 8);
    std::vector<unsigned char> packed((bits.size() + 7) / 8, 0);
    for (std::size_t j = 0; j < bits.size(); ++j)
        if (bits[j]) packed[j / 8] |= static_cast<unsigned char>(1u << (j % 8));
    os.write(reinterpret_cast<const char*>(packed.data()), static_cast<std::streamsize>(packed.size()));
    if (!os) throw std::runtime_error("write_bitset_file: short write to " + path);
}

inline std::vector<uint8_t> read_bitset_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_bitset_file: cannot open " + path);
    unsigned char header[8];
    is.read(reinterpret_cast<char*>(header), 8);
    if (is.gcount() != 8) throw std::runtime_error("read_bitset_file: truncated header in " + path);
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i) n |= static_cast<std::uint64_t>(header[i]) << (8 * i);
    std::vector<unsigned char> packed((n + 7) / 8);
    is.read(reinterpret_cast<char*>(packed.data()), static_cast<std::streamsize>(packed.size()));
    if (static_cast<std::uint64_t>(is.gcount()) != packed.size())
        throw std::runtime_error("read_bitset_file: truncated payload in " + path);
    std::vector<uint8_t> bits(n);
    for (std::uint64_t j = 0; j < n; ++j) bits[j] = (packed[j / 8] >> (j % 8)) & 1u;
    return bits;
}

inline void write_bitset_file(const std::string& path, const SignSequence& s) {
    std::vector<uint8_t> bits(s.q());
    for (std::size_t j = 0; j < s.q(); ++j) bits[j] = s.signs[j] > 0 ? 1 : 0;
    write_bitset_file(path, bits);
}

}  // namespace flatlab
