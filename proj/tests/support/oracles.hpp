// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <lamina/extents.hpp>
#include <lamina/record.hpp>

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace oracle
{
    /// IEEE 754 binary16 conversion with round-to-nearest-even, computed by
    /// scaled rounding arithmetic (frexp/ldexp/nearbyint) on real values.
    /// NaN inputs yield a quiet NaN pattern with the input's sign.
    std::uint16_t binary16FromDouble(double v);

    /// Exact real value of a binary16 bit pattern; NaN patterns yield NaN.
    double binary16ToDouble(std::uint16_t bits);

    /// True when the pattern encodes a NaN (all-ones exponent, nonzero
    /// mantissa).
    bool binary16IsNaN(std::uint16_t bits);

    /// Byte run-length coding: (runLength 1..255, value) pairs.
    std::vector<std::byte> rleCompress(std::span<const std::byte> data);
    std::vector<std::byte> rleDecompress(std::span<const std::byte> data);

    /// Random schema with at most maxLeaves leaves and nesting depth at most
    /// maxDepth below the root; always contains at least one leaf.
    lamina::RecordSchema randomSchema(std::mt19937& rng, int maxLeaves, int maxDepth);

    /// Random extents whose element count is in [1, maxElements]; mixes
    /// ranks, index types and static/dynamic dimensions.
    lamina::ArrayExtents randomExtents(std::mt19937& rng, std::uint64_t maxElements);

    /// A deterministic, kind-respecting test value for leaf writes.
    lamina::ScalarValue scalarSample(lamina::Scalar kind, std::uint64_t salt);
} // namespace oracle
