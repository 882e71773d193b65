// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "view.hpp"

#include <array>
#include <cmath>

namespace lamina
{
    // ============================================================================
    // batch type
    // ============================================================================

    /// Portable N-wide value batch with lane-independent elementwise
    /// arithmetic: lane i of op(a, b) is op(a[i], b[i]), evaluated in T's
    /// precision, so batch results match per-lane scalar execution bit for
    /// bit. The compiler is free to map the lane loop onto hardware
    /// vectors; correctness never depends on that.
    template<typename T, std::size_t N>
    struct SimdBatch
    {
        static_assert(N >= 1, "batch width must be at least 1");
        static constexpr std::size_t width = N;
        using value_type = T;

        std::array<T, N> lanes{};

        constexpr SimdBatch() = default;

        constexpr explicit SimdBatch(T broadcast)
        {
            for(auto& l : lanes)
                l = broadcast;
        }

        constexpr T operator[](std::size_t i) const
        {
            return lanes[i];
        }

        constexpr T& operator[](std::size_t i)
        {
            return lanes[i];
        }

        friend constexpr SimdBatch operator+(SimdBatch a, SimdBatch b)
        {
            for(std::size_t i = 0; i < N; ++i)
                a.lanes[i] = a.lanes[i] + b.lanes[i];
            return a;
        }

        friend constexpr SimdBatch operator-(SimdBatch a, SimdBatch b)
        {
            for(std::size_t i = 0; i < N; ++i)
                a.lanes[i] = a.lanes[i] - b.lanes[i];
            return a;
        }

        friend constexpr SimdBatch operator*(SimdBatch a, SimdBatch b)
        {
            for(std::size_t i = 0; i < N; ++i)
                a.lanes[i] = a.lanes[i] * b.lanes[i];
            return a;
        }

        friend constexpr SimdBatch operator/(SimdBatch a, SimdBatch b)
        {
            for(std::size_t i = 0; i < N; ++i)
                a.lanes[i] = a.lanes[i] / b.lanes[i];
            return a;
        }

        constexpr SimdBatch& operator+=(SimdBatch b)
        {
            return *this = *this + b;
        }

        constexpr SimdBatch& operator-=(SimdBatch b)
        {
            return *this = *this - b;
        }

        constexpr SimdBatch& operator*=(SimdBatch b)
        {
            return *this = *this * b;
        }

        friend SimdBatch sqrt(SimdBatch a)
        {
            using std::sqrt;
            for(auto& l : a.lanes)
                l = sqrt(l);
            return a;
        }

        constexpr bool operator==(const SimdBatch&) const = default;
    };

    /// Width-N value form: the plain scalar for N = 1 (no batch machinery
    /// in the type at all), SimdBatch otherwise.
    template<typename T, std::size_t N>
    using SimdN = std::conditional_t<N == 1, T, SimdBatch<T, N>>;

    template<typename V>
    inline constexpr std::size_t simdWidthOf = 1;

    template<typename T, std::size_t N>
    inline constexpr std::size_t simdWidthOf<SimdBatch<T, N>> = N;

    /// Broadcast a scalar into a SimdN value of either form.
    template<typename V, typename T>
    constexpr V simdBroadcast(T x)
    {
        if constexpr(simdWidthOf<V> == 1)
            return static_cast<V>(x);
        else
            return V(static_cast<typename V::value_type>(x));
    }

    template<typename T>
    constexpr T laneOf(T v, std::size_t)
    {
        return v;
    }

    template<typename T, std::size_t N>
    constexpr T laneOf(const SimdBatch<T, N>& v, std::size_t i)
    {
        return v[i];
    }

    // ============================================================================
    // simdized record
    // ============================================================================

    /// A record whose every leaf is an N-wide batch, with runtime N. Storage
    /// is one packed single-record layout of the widened schema (each leaf
    /// becomes a fixed array of N values), so every leaf's batch is
    /// contiguous. Width 1 degenerates to a packed record instance.
    class SimdizedRecord
    {
    public:
        SimdizedRecord(RecordSchema schema, std::size_t width);

        const RecordSchema& schema() const noexcept
        {
            return schema_;
        }

        std::size_t width() const noexcept
        {
            return width_;
        }

        /// Contiguous batch storage of the leaf, width() values.
        std::byte* leafData(std::size_t flatLeaf) noexcept
        {
            return storage_.data() + base_[flatLeaf];
        }

        const std::byte* leafData(std::size_t flatLeaf) const noexcept
        {
            return storage_.data() + base_[flatLeaf];
        }

        ScalarValue lane(std::size_t flatLeaf, std::size_t k) const;
        void setLane(std::size_t flatLeaf, std::size_t k, const ScalarValue& v);

        template<typename T>
        T get(std::size_t flatLeaf, std::size_t k) const
        {
            return loadUnaligned<T>(leafData(flatLeaf) + k * sizeof(T));
        }

        template<typename T>
        void set(std::size_t flatLeaf, std::size_t k, T v)
        {
            storeUnaligned<T>(leafData(flatLeaf) + k * sizeof(T), v);
        }

    private:
        RecordSchema schema_;
        std::size_t width_;
        std::vector<std::size_t> base_; // per leaf: width * packed offset
        Blob storage_;
    };

    // ============================================================================
    // layout-aware batch transfer
    // ============================================================================

    /// Loads lanes [first, first + n) of one leaf. Uses one contiguous
    /// block transfer when the mapping stores the run with stride = leaf
    /// size, otherwise n scalar reads; the result is identical either way.
    /// Throws std::out_of_range when fewer than n elements remain.
    void loadLeafLanes(const View& view, std::uint64_t first, std::size_t flatLeaf, std::size_t n, std::byte* dst);
    void storeLeafLanes(View& view, std::uint64_t first, std::size_t flatLeaf, std::size_t n, const std::byte* src);

    /// Loads width() consecutive elements starting at `first`, every leaf.
    void loadSimd(const View& view, std::uint64_t first, SimdizedRecord& dst);

    /// Stores all leaves, or only the leaves below `subtree`.
    void storeSimd(const SimdizedRecord& src, View& view, std::uint64_t first);
    void storeSimd(const SimdizedRecord& src, View& view, std::uint64_t first, const RecordCoord& subtree);

    /// Typed leaf batch transfer; for N = 1 the batch is the plain scalar.
    /// T must match the leaf's scalar type exactly.
    template<typename T, std::size_t N>
    void loadLeafSimd(const View& view, std::uint64_t first, std::size_t flatLeaf, SimdN<T, N>& dst)
    {
        if constexpr(N == 1)
            dst = view.load<T>(first, flatLeaf);
        else
        {
            const auto& leaf = view.schema().leaf(flatLeaf);
            if(scalarOf<T>() != leaf.type)
                throw std::invalid_argument("type mismatch: leaf is " + std::string(scalarName(leaf.type)));
            loadLeafLanes(view, first, flatLeaf, N, reinterpret_cast<std::byte*>(dst.lanes.data()));
        }
    }

    template<typename T, std::size_t N>
    void storeLeafSimd(const SimdN<T, N>& src, View& view, std::uint64_t first, std::size_t flatLeaf)
    {
        if constexpr(N == 1)
            view.store<T>(first, flatLeaf, src);
        else
        {
            const auto& leaf = view.schema().leaf(flatLeaf);
            if(scalarOf<T>() != leaf.type)
                throw std::invalid_argument("type mismatch: leaf is " + std::string(scalarName(leaf.type)));
            storeLeafLanes(view, first, flatLeaf, N, reinterpret_cast<const std::byte*>(src.lanes.data()));
        }
    }
} // namespace lamina
