#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "encodings.hpp"
#include "errors.hpp"

using namespace cfa;

TEST_CASE("binary code round trip") {
    CHECK(enc::bin(0) == "");
    CHECK(enc::bin(1) == "1");
    CHECK(enc::bin(2) == "10");
    CHECK(enc::bin(13) == "1101");
    for (unsigned v = 1; v < 300; ++v) {
        Int back = 0;
        for (char c : enc::bin(v)) back = back * 2 + (c - '0');
        CHECK(back == v);
    }
}

TEST_CASE("signed transfer code") {
    CHECK(enc::encode_trans(0) == "");
    CHECK(enc::encode_trans(2) == "110");
    CHECK(enc::encode_trans(-3) == "011");
    for (int v = -40; v <= 40; ++v) CHECK(enc::decode_trans(enc::encode_trans(v)) == v);
    CHECK_THROWS_AS(enc::decode_trans("2"), Error);
    CHECK_THROWS_AS(enc::decode_trans("10"), Error);  // magnitude must lead with 1
}

TEST_CASE("bracket sequences") {
    CHECK(enc::bracket_encode({1, 2}) == "10110");
    CHECK(enc::bracket_decode("10110") == std::vector<unsigned>{1, 2});
    for (auto entries : {std::vector<unsigned>{5}, {1, 1, 1}, {7, 2, 9}})
        CHECK(enc::bracket_decode(enc::bracket_encode(entries)) == entries);
    CHECK_THROWS_AS(enc::bracket_decode("01"), Error);
    CHECK_THROWS_AS(enc::bracket_decode("11"), Error);  // missing terminator
}

TEST_CASE("unary padded sequences") {
    CHECK(enc::padded_encode({1, 2}, 4, 4) == "100001100");
    CHECK(enc::padded_decode("100001100", 4) == std::vector<unsigned>{1, 2});
    for (unsigned a = 0; a <= 3; ++a)
        for (unsigned b = 0; b <= 3; ++b)
            CHECK(enc::padded_decode(enc::padded_encode({a, b}, 3, 3), 3) == std::vector<unsigned>{a, b});
    CHECK_THROWS_AS(enc::padded_encode({4}, 3, 3), Error);
    CHECK_THROWS_AS(enc::padded_decode("10", 3), Error);    // wrong width
    CHECK_THROWS_AS(enc::padded_decode("0100", 4), Error);  // padding before payload
}

TEST_CASE("value helpers") {
    CHECK(enc::count_symbol("00#10", '0') == 3);
    CHECK(enc::count_symbol("", '0') == 0);
    auto set = enc::entry_set({2, 2, 0});
    CHECK(set.count(2) == 1);
    CHECK(set.count(0) == 1);
    CHECK(set.size() == 2);
    CHECK(enc::bitwise_dot("101", "111") == 2);
    CHECK(enc::bitwise_dot("00", "11") == 0);
    CHECK_THROWS_AS(enc::bitwise_dot("0", "01"), Error);
}
