// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <lamina/mappings.hpp>
#include <lamina/view.hpp>

#include <array>
#include <cstring>

namespace nbody
{
    /// Particle schema flat leaf indices.
    inline constexpr std::size_t kPosX = 0;
    inline constexpr std::size_t kPosY = 1;
    inline constexpr std::size_t kPosZ = 2;
    inline constexpr std::size_t kVelX = 3;
    inline constexpr std::size_t kVelY = 4;
    inline constexpr std::size_t kVelZ = 5;
    inline constexpr std::size_t kMass = 6;
    inline constexpr std::size_t kLeafCount = 7;

    /// Read-side accessor over layouts whose leaf address is base + i*stride
    /// (AoS packed/aligned, SoA single/multi blob). Bases and strides are
    /// taken from the mapping's first two elements, so the accessor is exact
    /// for these layouts by construction.
    template<typename T>
    struct AffineAccessor
    {
        std::array<const std::byte*, kLeafCount> base{};
        std::array<std::size_t, kLeafCount> stride{};

        explicit AffineAccessor(const lamina::View& view)
        {
            for(std::size_t f = 0; f < kLeafCount; ++f)
            {
                const auto [nr0, off0] = view.mapping().physicalOffset(0, f);
                const auto [nr1, off1] = view.mapping().physicalOffset(1, f);
                base[f] = view.blobs()[nr0].data() + off0;
                stride[f] = off1 - off0;
            }
        }

        template<std::size_t F>
        T get(std::uint64_t j) const
        {
            T v;
            std::memcpy(&v, base[F] + j * stride[F], sizeof(T));
            return v;
        }
    };

    /// Read-side accessor for AoSoA, resolving block and lane per access
    /// (the flat-traversal address computation).
    template<typename T>
    struct AoSoAAccessor
    {
        const std::byte* blob0;
        std::uint64_t laneCount;
        std::size_t blockSize;
        std::array<std::size_t, kLeafCount> laneOff{};

        AoSoAAccessor(const lamina::View& view, const lamina::AoSoAMapping& m)
            : blob0(view.blobs()[0].data())
            , laneCount(m.laneCount())
            , blockSize(m.blockSize())
        {
            for(std::size_t f = 0; f < kLeafCount; ++f)
                laneOff[f] = view.schema().leaf(f).offsetPacked * laneCount;
        }

        template<std::size_t F>
        T get(std::uint64_t j) const
        {
            const std::byte* p
                = blob0 + (j / laneCount) * blockSize + laneOff[F] + (j % laneCount) * sizeof(T);
            T v;
            std::memcpy(&v, p, sizeof(T));
            return v;
        }

        const std::byte* blockBase(std::uint64_t block) const
        {
            return blob0 + block * blockSize;
        }

        template<std::size_t F>
        T getLane(const std::byte* block, std::uint64_t lane) const
        {
            T v;
            std::memcpy(&v, block + laneOff[F] + lane * sizeof(T), sizeof(T));
            return v;
        }
    };

    /// Read-side accessor through the generic mapping funnel; works for any
    /// mapping, including computed and instrumented ones.
    template<typename T>
    struct FunnelAccessor
    {
        const lamina::View* view;

        explicit FunnelAccessor(const lamina::View& v)
            : view(&v)
        {
        }

        template<std::size_t F>
        T get(std::uint64_t j) const
        {
            return static_cast<T>(view->read(j, F).asFloat());
        }
    };
} // namespace nbody
