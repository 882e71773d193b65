// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>

namespace lamina
{
    /// Bit-level storage primitives. Bit order is least-significant-bit
    /// first within bytes of little-endian storage words; a field may
    /// straddle any byte or word boundary.

    /// Reads `bits` (1..64) starting at absolute bit position `bitOffset`.
    std::uint64_t readBits(const std::byte* data, std::uint64_t bitOffset, unsigned bits) noexcept;

    /// Writes the low `bits` of `value` at absolute bit position `bitOffset`.
    /// Not atomic; concurrent writers must not share storage words.
    void writeBits(std::byte* data, std::uint64_t bitOffset, unsigned bits, std::uint64_t value) noexcept;

    /// Low b bits of the value's two's-complement representation.
    std::uint64_t packInt(std::int64_t value, unsigned b) noexcept;
    std::uint64_t packInt(std::uint64_t value, unsigned b) noexcept;

    /// Inverse of packInt: zero-extends, or sign-extends from bit b-1.
    std::int64_t unpackSigned(std::uint64_t pattern, unsigned b) noexcept;
    std::uint64_t unpackUnsigned(std::uint64_t pattern, unsigned b) noexcept;

    /// Encodes a float64-domain value into a (1, E, M) minifloat pattern:
    /// sign bit, E exponent bits with bias 2^(E-1)-1, M mantissa bits.
    /// Rounds to nearest-even; produces target subnormals in range; flushes
    /// below-subnormal values to signed zero; maps post-rounding exponent
    /// overflow to signed infinity; any NaN becomes the canonical quiet NaN
    /// of the target (sign preserved).
    std::uint64_t floatEncode(double value, unsigned expBits, unsigned manBits) noexcept;

    /// Exact inverse of floatEncode on the representable set.
    double floatDecode(std::uint64_t pattern, unsigned expBits, unsigned manBits) noexcept;
} // namespace lamina
