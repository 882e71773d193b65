// SPDX-License-Identifier: Apache-2.0
#include <lamina/bitpack.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace lamina
{
    std::uint64_t readBits(const std::byte* data, std::uint64_t bitOffset, unsigned bits) noexcept
    {
        std::uint64_t out = 0;
        unsigned got = 0;
        std::uint64_t byte = bitOffset >> 3;
        unsigned bitInByte = static_cast<unsigned>(bitOffset & 7);
        while(got < bits)
        {
            const unsigned take = std::min(8 - bitInByte, bits - got);
            const std::uint64_t mask = (std::uint64_t{1} << take) - 1;
            const std::uint64_t chunk = (std::to_integer<std::uint64_t>(data[byte]) >> bitInByte) & mask;
            out |= chunk << got;
            got += take;
            ++byte;
            bitInByte = 0;
        }
        return out;
    }

    void writeBits(std::byte* data, std::uint64_t bitOffset, unsigned bits, std::uint64_t value) noexcept
    {
        unsigned put = 0;
        std::uint64_t byte = bitOffset >> 3;
        unsigned bitInByte = static_cast<unsigned>(bitOffset & 7);
        while(put < bits)
        {
            const unsigned take = std::min(8 - bitInByte, bits - put);
            const unsigned mask = ((1u << take) - 1) << bitInByte;
            const unsigned chunk = static_cast<unsigned>((value >> put) & ((std::uint64_t{1} << take) - 1));
            unsigned cur = std::to_integer<unsigned>(data[byte]);
            cur = (cur & ~mask) | (chunk << bitInByte);
            data[byte] = static_cast<std::byte>(cur);
            put += take;
            ++byte;
            bitInByte = 0;
        }
    }

    namespace
    {
        constexpr std::uint64_t lowMask(unsigned bits) noexcept
        {
            return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
        }

        /// round(x / 2^s) with ties to even; negative s shifts left exactly.
        std::uint64_t rneShift(std::uint64_t x, int s) noexcept
        {
            if(s <= 0)
                return x << static_cast<unsigned>(-s);
            if(s >= 64)
                return 0; // x < 2^63 here, so x / 2^64 < 1/2
            const std::uint64_t q = x >> s;
            const std::uint64_t rem = x & lowMask(static_cast<unsigned>(s));
            const std::uint64_t half = std::uint64_t{1} << (s - 1);
            if(rem > half || (rem == half && (q & 1) != 0))
                return q + 1;
            return q;
        }
    } // namespace

    std::uint64_t packInt(std::int64_t value, unsigned b) noexcept
    {
        return static_cast<std::uint64_t>(value) & lowMask(b);
    }

    std::uint64_t packInt(std::uint64_t value, unsigned b) noexcept
    {
        return value & lowMask(b);
    }

    std::uint64_t unpackUnsigned(std::uint64_t pattern, unsigned b) noexcept
    {
        return pattern & lowMask(b);
    }

    std::int64_t unpackSigned(std::uint64_t pattern, unsigned b) noexcept
    {
        pattern &= lowMask(b);
        if(b >= 64)
            return static_cast<std::int64_t>(pattern);
        const std::uint64_t sign = std::uint64_t{1} << (b - 1);
        return static_cast<std::int64_t>((pattern ^ sign) - sign);
    }

    std::uint64_t floatEncode(double value, unsigned expBits, unsigned manBits) noexcept
    {
        const std::uint64_t bits64 = std::bit_cast<std::uint64_t>(value);
        const std::uint64_t sign = bits64 >> 63;
        const std::uint64_t signBit = sign << (expBits + manBits);
        const std::uint64_t expMask = lowMask(expBits);
        const std::uint64_t infPattern = signBit | (expMask << manBits);

        const std::uint64_t rawExp = (bits64 >> 52) & 0x7FF;
        std::uint64_t frac = bits64 & lowMask(52);

        if(rawExp == 0x7FF)
        {
            if(frac == 0)
                return infPattern;
            // canonical quiet NaN; with no mantissa bits the slot collapses to Inf
            if(manBits == 0)
                return infPattern;
            return infPattern | (std::uint64_t{1} << (manBits - 1));
        }
        if(rawExp == 0 && frac == 0)
            return signBit;

        // normalize so value = frac * 2^e2 with frac in [2^52, 2^53)
        int e2;
        if(rawExp == 0)
        {
            const int shift = 52 - (63 - std::countl_zero(frac));
            frac <<= shift;
            e2 = 1 - 1023 - 52 - shift;
        }
        else
        {
            frac |= std::uint64_t{1} << 52;
            e2 = static_cast<int>(rawExp) - 1023 - 52;
        }

        const std::int64_t bias = (std::int64_t{1} << (expBits - 1)) - 1;
        std::int64_t biasedExp = e2 + 52 + bias; // floor(log2 |value|) + bias
        const std::int64_t maxExpField = static_cast<std::int64_t>(expMask);

        if(biasedExp >= 1)
        {
            // normal candidate: mantissa q in [2^M, 2^(M+1)] after rounding
            std::uint64_t q = rneShift(frac, 52 - static_cast<int>(manBits));
            if((q >> (manBits + 1)) != 0)
            {
                q >>= 1;
                ++biasedExp;
            }
            if(biasedExp >= maxExpField)
                return infPattern; // exponent overflow after rounding
            return signBit | (static_cast<std::uint64_t>(biasedExp) << manBits) | (q - (std::uint64_t{1} << manBits));
        }

        // subnormal candidate: field = round(|value| / 2^(1 - bias - M));
        // biasedExp <= 0 bounds the shift to a small int range
        const std::int64_t shift = (1 - bias - static_cast<std::int64_t>(manBits)) - e2;
        const std::uint64_t q = rneShift(frac, static_cast<int>(shift));
        if((q >> manBits) != 0)
        {
            // rounded up to the smallest normal
            if(1 >= maxExpField)
                return infPattern;
            return signBit | (std::uint64_t{1} << manBits);
        }
        return signBit | q; // q == 0 is underflow to signed zero
    }

    double floatDecode(std::uint64_t pattern, unsigned expBits, unsigned manBits) noexcept
    {
        const unsigned width = 1 + expBits + manBits;
        pattern &= lowMask(width);
        const std::uint64_t sign = (pattern >> (expBits + manBits)) & 1;
        const std::uint64_t expField = (pattern >> manBits) & lowMask(expBits);
        const std::uint64_t manField = pattern & lowMask(manBits);
        const std::int64_t bias = (std::int64_t{1} << (expBits - 1)) - 1;

        // exponents beyond this saturate to 0 / Inf in double anyway
        const auto clampExp = [](std::int64_t e)
        { return static_cast<int>(std::clamp<std::int64_t>(e, -5000, 5000)); };

        double mag;
        if(expField == lowMask(expBits))
            mag = manField != 0 ? std::numeric_limits<double>::quiet_NaN() : std::numeric_limits<double>::infinity();
        else if(expField == 0)
            mag = std::ldexp(static_cast<double>(manField), clampExp(1 - bias - static_cast<std::int64_t>(manBits)));
        else
            mag = std::ldexp(
                static_cast<double>((std::uint64_t{1} << manBits) + manField),
                clampExp(static_cast<std::int64_t>(expField) - bias - static_cast<std::int64_t>(manBits)));
        return sign != 0 ? -mag : mag;
    }
} // namespace lamina
