// SPDX-License-Identifier: Apache-2.0
#include "support/oracles.hpp"

#include <lamina/bitpack.hpp>

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

using namespace lamina;

TEST_CASE("bit fields straddle byte and word boundaries")
{
    // Oracle: a flat bit array maintained alongside every write.
    std::mt19937_64 rng(11);
    std::vector<std::byte> data(64, std::byte{0});
    std::vector<bool> bits(64 * 8, false);
    for(int step = 0; step < 2000; ++step)
    {
        const unsigned width = 1 + static_cast<unsigned>(rng() % 64);
        const std::uint64_t offset = rng() % (bits.size() - width);
        const std::uint64_t value = rng();
        writeBits(data.data(), offset, width, value);
        for(unsigned k = 0; k < width; ++k)
            bits[offset + k] = ((value >> k) & 1) != 0;

        std::uint64_t expected = 0;
        for(unsigned k = 0; k < width; ++k)
            expected |= static_cast<std::uint64_t>(bits[offset + k] ? 1 : 0) << k;
        CHECK(readBits(data.data(), offset, width) == expected);
    }
    // Full storage agrees with the oracle bit array.
    for(std::size_t byteIdx = 0; byteIdx < data.size(); ++byteIdx)
    {
        std::uint8_t expected = 0;
        for(unsigned k = 0; k < 8; ++k)
            expected |= static_cast<std::uint8_t>(bits[byteIdx * 8 + k] ? 1 : 0) << k;
        CHECK(std::to_integer<std::uint8_t>(data[byteIdx]) == expected);
    }
}

TEST_CASE("integer packing keeps the low bits of two's complement")
{
    CHECK(packInt(std::int64_t{-3}, 4) == 0b1101);
    CHECK(packInt(std::uint64_t{9}, 3) == 0b001);
    CHECK(unpackSigned(0b1101, 4) == -3);
    CHECK(unpackUnsigned(0b001, 3) == 1);
}

TEST_CASE("all patterns round trip exhaustively up to twelve bits")
{
    for(unsigned b = 1; b <= 12; ++b)
    {
        const std::uint64_t patterns = std::uint64_t{1} << b;
        for(std::uint64_t p = 0; p < patterns; ++p)
        {
            CHECK(unpackUnsigned(packInt(p, b), b) == p);
            const std::int64_t sv = unpackSigned(p, b);
            CHECK(packInt(sv, b) == p);
            CHECK(unpackSigned(packInt(sv, b), b) == sv);
            // Truncation is mod 2^b.
            CHECK(packInt(p | (std::uint64_t{1} << 40), b) == p);
        }
    }
}

TEST_CASE("minifloat encoding matches the binary16 reference on anchors")
{
    CHECK(floatEncode(1.0, 5, 10) == 0x3C00);
    CHECK(floatEncode(0.0, 5, 10) == 0x0000);
    CHECK(floatEncode(-0.0, 5, 10) == 0x8000);
    CHECK(floatEncode(std::numeric_limits<double>::infinity(), 5, 10) == 0x7C00);
    CHECK(floatEncode(-std::numeric_limits<double>::infinity(), 5, 10) == 0xFC00);
    CHECK(floatEncode(65504.0, 5, 10) == 0x7BFF);
    // Post-rounding exponent overflow maps to infinity.
    CHECK(floatEncode(65520.0, 5, 10) == 0x7C00);
    CHECK(floatEncode(-65520.0, 5, 10) == 0xFC00);
    CHECK(floatEncode(1e300, 5, 10) == 0x7C00);
    // Just below the overflow threshold rounds down to the largest finite.
    CHECK(floatEncode(65519.999, 5, 10) == 0x7BFF);
    // Smallest subnormal and below-subnormal flush.
    CHECK(floatEncode(std::ldexp(1.0, -24), 5, 10) == 0x0001);
    CHECK(floatEncode(std::ldexp(1.0, -26), 5, 10) == 0x0000);
    CHECK(floatDecode(0x3C00, 5, 10) == 1.0);
    CHECK(floatDecode(0x7BFF, 5, 10) == 65504.0);
}

TEST_CASE("NaN encodes to a quiet NaN with the sign preserved")
{
    const auto plus = floatEncode(std::numeric_limits<double>::quiet_NaN(), 5, 10);
    CHECK(oracle::binary16IsNaN(static_cast<std::uint16_t>(plus)));
    CHECK((plus & 0x8000) == 0);
    const auto minus = floatEncode(-std::numeric_limits<double>::quiet_NaN(), 5, 10);
    CHECK(oracle::binary16IsNaN(static_cast<std::uint16_t>(minus)));
    CHECK((minus & 0x8000) != 0);
    CHECK(std::isnan(floatDecode(plus, 5, 10)));
}

TEST_CASE("random values agree with the independent binary16 oracle")
{
    std::mt19937_64 rng(5);
    for(int i = 0; i < 10000; ++i)
    {
        const int exponent = static_cast<int>(rng() % 64) - 32;
        const double mantissa = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double v = (rng() % 2 ? -1.0 : 1.0) * std::ldexp(1.0 + mantissa, exponent);
        CHECK(floatEncode(v, 5, 10) == oracle::binary16FromDouble(v));
    }
}

TEST_CASE("every binary16 pattern decodes to the reference value")
{
    for(std::uint32_t p = 0; p <= 0xFFFF; ++p)
    {
        const double got = floatDecode(p, 5, 10);
        const double expect = oracle::binary16ToDouble(static_cast<std::uint16_t>(p));
        if(oracle::binary16IsNaN(static_cast<std::uint16_t>(p)))
            CHECK(std::isnan(got));
        else
            CHECK(std::bit_cast<std::uint64_t>(got) == std::bit_cast<std::uint64_t>(expect));
    }
}

TEST_CASE("eight-and-twenty-three coincides with native binary32")
{
    std::mt19937_64 rng(17);
    for(int i = 0; i < 10000; ++i)
    {
        const auto bits32 = static_cast<std::uint32_t>(rng());
        const float f = std::bit_cast<float>(bits32);
        if(std::isnan(f))
            continue;
        CHECK(floatEncode(static_cast<double>(f), 8, 23) == bits32);
        CHECK(floatDecode(bits32, 8, 23) == static_cast<double>(f));
    }
}

TEST_CASE("encoding is monotone on finite positive values")
{
    std::mt19937_64 rng(23);
    std::vector<double> values;
    for(int i = 0; i < 2000; ++i)
    {
        const int exponent = static_cast<int>(rng() % 48) - 28;
        values.push_back(std::ldexp(1.0 + static_cast<double>(rng() >> 11) * 0x1.0p-53, exponent));
    }
    std::sort(values.begin(), values.end());
    for(unsigned e = 2; e <= 8; ++e)
        for(unsigned m : {1u, 4u, 10u})
        {
            std::uint64_t prev = 0;
            for(const double v : values)
            {
                const auto enc = floatEncode(v, e, m);
                CHECK(enc >= prev);
                prev = enc;
            }
        }
}

TEST_CASE("round trip is exact on representable values")
{
    std::mt19937_64 rng(29);
    for(int i = 0; i < 5000; ++i)
    {
        const auto pattern = static_cast<std::uint16_t>(rng());
        if(oracle::binary16IsNaN(pattern))
            continue;
        const double v = floatDecode(pattern, 5, 10);
        CHECK(floatEncode(v, 5, 10) == pattern);
    }
}
