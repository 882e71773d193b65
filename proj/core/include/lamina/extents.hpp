// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lamina
{
    /// Integer type used for all indexing computations of an extents object.
    enum class IndexType : std::uint8_t
    {
        I16,
        I32,
        I64,
        U16,
        U32,
        U64
    };

    constexpr std::size_t indexTypeSize(IndexType t) noexcept
    {
        switch(t)
        {
        case IndexType::I16:
        case IndexType::U16:
            return 2;
        case IndexType::I32:
        case IndexType::U32:
            return 4;
        case IndexType::I64:
        case IndexType::U64:
            return 8;
        }
        return 0;
    }

    /// Largest value representable in the index type.
    constexpr std::uint64_t indexTypeMax(IndexType t) noexcept
    {
        switch(t)
        {
        case IndexType::I16:
            return 0x7FFF;
        case IndexType::I32:
            return 0x7FFFFFFF;
        case IndexType::I64:
            return 0x7FFFFFFFFFFFFFFF;
        case IndexType::U16:
            return 0xFFFF;
        case IndexType::U32:
            return 0xFFFFFFFF;
        case IndexType::U64:
            return 0xFFFFFFFFFFFFFFFF;
        }
        return 0;
    }

    std::string_view indexTypeName(IndexType t) noexcept;
    IndexType parseIndexType(std::string_view text);

    /// Marker for a dynamic extent in a dimension list.
    inline constexpr std::uint64_t dyn = ~std::uint64_t{0};

    /// Multidimensional index, one component per array dimension.
    using ArrayIndex = std::vector<std::uint64_t>;

    /// Per-dimension array extents. Each dimension is either static (size
    /// fixed in the dimension list) or dynamic (size supplied at
    /// construction). Extents and their total element count must be
    /// representable in the chosen index type; construction validates this
    /// and rejects anything larger. Rank 0 is legal and holds one element.
    class ArrayExtents
    {
    public:
        ArrayExtents() : ArrayExtents(IndexType::U64, {}, {})
        {
        }

        /// dims uses `dyn` as the dynamic marker; dynamicValues supplies one
        /// size per dynamic entry, in order. Throws std::invalid_argument
        /// ("arity error") on a count mismatch and std::overflow_error
        /// ("index type overflow") when an extent or the total element count
        /// does not fit the index type.
        ArrayExtents(IndexType indexType, std::vector<std::uint64_t> dims, std::vector<std::uint64_t> dynamicValues);

        IndexType indexType() const noexcept
        {
            return indexType_;
        }

        std::size_t rank() const noexcept
        {
            return dims_.size();
        }

        /// Resolved size of dimension i.
        std::uint64_t extent(std::size_t i) const
        {
            return resolved_[i];
        }

        std::span<const std::uint64_t> extents() const noexcept
        {
            return resolved_;
        }

        /// The dimension list as constructed, dynamic entries as `dyn`.
        std::span<const std::uint64_t> dims() const noexcept
        {
            return dims_;
        }

        std::span<const std::uint64_t> dynamicValues() const noexcept
        {
            return dynamicValues_;
        }

        std::size_t dynamicCount() const noexcept
        {
            return dynamicValues_.size();
        }

        bool isFullyStatic() const noexcept
        {
            return dynamicValues_.empty();
        }

        /// Product of all extents (1 for rank 0).
        std::uint64_t elementCount() const noexcept
        {
            return elementCount_;
        }

        /// Bytes of runtime state: one index-type-sized slot per dynamic
        /// extent, zero when fully static.
        std::size_t runtimeStateBytes() const noexcept
        {
            return dynamicValues_.size() * indexTypeSize(indexType_);
        }

        bool operator==(const ArrayExtents& other) const noexcept
        {
            return indexType_ == other.indexType_ && dims_ == other.dims_
                && dynamicValues_ == other.dynamicValues_;
        }

        /// Text form `i32:[3,dyn,4,4]`; dynamic values are not part of it.
        std::string toString() const;

        /// Parses the text form. Dynamic values are supplied separately.
        static ArrayExtents parse(std::string_view text, std::span<const std::uint64_t> dynamicValues);

        friend std::ostream& operator<<(std::ostream& os, const ArrayExtents& e);

    private:
        IndexType indexType_;
        std::vector<std::uint64_t> dims_;
        std::vector<std::uint64_t> dynamicValues_;
        std::vector<std::uint64_t> resolved_;
        std::uint64_t elementCount_ = 1;
    };

    ArrayExtents makeExtents(
        IndexType indexType,
        std::vector<std::uint64_t> dims,
        std::vector<std::uint64_t> dynamicValues);

    /// Row-major linear index, rightmost dimension fastest. Throws
    /// std::out_of_range ("index out of range") on an out-of-bounds
    /// component or rank mismatch.
    std::uint64_t linearize(const ArrayExtents& extents, std::span<const std::uint64_t> index);

    /// Inverse of linearize.
    ArrayIndex delinearize(const ArrayExtents& extents, std::uint64_t linear);

    /// Calls f(std::span<const std::uint64_t>) for every index in ascending
    /// linearize order.
    template<typename F>
    void forEachIndex(const ArrayExtents& extents, F&& f)
    {
        const std::size_t rank = extents.rank();
        for(std::size_t d = 0; d < rank; ++d)
            if(extents.extent(d) == 0)
                return;
        ArrayIndex index(rank, 0);
        const std::uint64_t total = extents.elementCount();
        for(std::uint64_t i = 0; i < total; ++i)
        {
            f(std::span<const std::uint64_t>(index));
            for(std::size_t d = rank; d-- > 0;)
            {
                if(++index[d] < extents.extent(d))
                    break;
                index[d] = 0;
            }
        }
    }
} // namespace lamina
