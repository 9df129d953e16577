#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <random>

#include "flatlab/sequences.hpp"

using namespace flatlab;

TEST_CASE("sign strings parse and round-trip", "[sequences]") {
    const SignSequence s = parse_sign_sequence("+-+");
    REQUIRE(s.q() == 3);
    CHECK(s.signs[0] == 1);
    CHECK(s.signs[1] == -1);
    CHECK(s.signs[2] == 1);
    CHECK(s.to_string() == "+-+");
    CHECK(s.is_littlewood_class());
    CHECK_FALSE(parse_sign_sequence("-++").is_littlewood_class());
    CHECK_THROWS_AS(parse_sign_sequence("+x+"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sign_sequence(""), std::invalid_argument);
}

TEST_CASE("binary strings parse with support and ones count", "[sequences]") {
    const BinarySequence b = parse_binary_sequence("1011");
    REQUIRE(b.q() == 4);
    CHECK(b.m == 3);
    CHECK(b.support() == std::vector<std::size_t>{0, 2, 3});
    CHECK(b.is_nb_class());
    CHECK_FALSE(parse_binary_sequence("0110").is_nb_class());
}

TEST_CASE("mixed alphabets are rejected, whitespace is ignored", "[sequences]") {
    CHECK_THROWS_AS(parse_sequence("+-01"), std::invalid_argument);
    CHECK(parse_sequence(" +- + ").kind == SequenceKind::Sign);
    CHECK(parse_sequence("10 1\n").kind == SequenceKind::Binary);
}

TEST_CASE("bitset files round-trip random payloads", "[sequences]") {
    std::mt19937_64 rng(99);
    const std::string path = "seq_roundtrip.bits";
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t n = 1 + rng() % 300;
        std::vector<uint8_t> bits(n);
        for (auto& v : bits) v = rng() & 1u;
        write_bitset_file(path, bits);
        CHECK(read_bitset_file(path) == bits);
    }
    std::remove(path.c_str());
}

TEST_CASE("sign sequences survive the bitset encoding", "[sequences]") {
    const std::string path = "seq_signs.bits";
    const SignSequence s = parse_sign_sequence("+--+-+++-");
    write_bitset_file(path, s);
    const auto bits = read_bitset_file(path);
    REQUIRE(bits.size() == s.q());
    for (std::size_t j = 0; j < bits.size(); ++j)
        CHECK((bits[j] ? 1 : -1) == s.signs[j]);
    std::remove(path.c_str());
}
