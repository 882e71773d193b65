// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mapping.hpp"

namespace lamina
{
    // ============================================================================
    // array of structs
    // ============================================================================

    /// One blob of N records. Packed places leaves back to back
    /// (recordSizePacked); Aligned pads every leaf to its natural alignment
    /// (recordSizeAligned), so direct typed references are legal.
    class AoSMapping : public Mapping
    {
    public:
        enum class Variant
        {
            Packed,
            Aligned
        };

        AoSMapping(RecordSchema schema, ArrayExtents extents, Variant variant);

        std::string name() const override;

        std::size_t blobCount() const override
        {
            return 1;
        }

        std::size_t blobSize(std::size_t) const override
        {
            return static_cast<std::size_t>(elementCount()) * recordSize_;
        }

        Variant variant() const noexcept
        {
            return variant_;
        }

        std::size_t recordSize() const noexcept
        {
            return recordSize_;
        }

        std::size_t leafOffsetInRecord(std::size_t flatLeaf) const
        {
            return leafOffset_[flatLeaf];
        }

        /// Non-virtual resolution for inlined hot loops.
        NrAndOffset offsetOf(std::uint64_t linear, std::size_t flatLeaf) const noexcept
        {
            return {0, static_cast<std::size_t>(linear) * recordSize_ + leafOffset_[flatLeaf]};
        }

        NrAndOffset physicalOffset(std::uint64_t linear, std::size_t flatLeaf) const override;
        std::optional<NrAndOffset> contiguousRun(std::uint64_t linear, std::size_t flatLeaf, std::uint64_t n)
            const override;

    private:
        Variant variant_;
        std::size_t recordSize_;
        std::vector<std::size_t> leafOffset_;
    };

    // ============================================================================
    // struct of arrays
    // ============================================================================

    /// Each leaf stored as a contiguous array of N values. MultiBlob gives
    /// every leaf its own blob; Single concatenates the per-leaf subarrays
    /// into one blob in flat leaf order.
    class SoAMapping : public Mapping
    {
    public:
        enum class Blobs
        {
            Single,
            MultiBlob
        };

        SoAMapping(RecordSchema schema, ArrayExtents extents, Blobs blobs);

        std::string name() const override;
        std::size_t blobCount() const override;
        std::size_t blobSize(std::size_t nr) const override;

        Blobs blobs() const noexcept
        {
            return blobs_;
        }

        /// Byte position of the leaf's subarray within the single blob.
        std::size_t subarrayBase(std::size_t flatLeaf) const
        {
            return subarrayBase_[flatLeaf];
        }

        NrAndOffset offsetOf(std::uint64_t linear, std::size_t flatLeaf) const noexcept
        {
            const std::size_t size = leafSize_[flatLeaf];
            if(blobs_ == Blobs::MultiBlob)
                return {flatLeaf, static_cast<std::size_t>(linear) * size};
            return {0, subarrayBase_[flatLeaf] + static_cast<std::size_t>(linear) * size};
        }

        NrAndOffset physicalOffset(std::uint64_t linear, std::size_t flatLeaf) const override;
        std::optional<NrAndOffset> contiguousRun(std::uint64_t linear, std::size_t flatLeaf, std::uint64_t n)
            const override;

    private:
        Blobs blobs_;
        std::vector<std::size_t> leafSize_;
        std::vector<std::size_t> subarrayBase_;
    };

    // ============================================================================
    // blocked hybrid
    // ============================================================================

    /// Blocks of L records, field-major inside the block, packed. The blob
    /// holds ceil(N/L) whole blocks; tail slots beyond N exist but must not
    /// be accessed.
    class AoSoAMapping : public Mapping
    {
    public:
        AoSoAMapping(RecordSchema schema, ArrayExtents extents, std::uint64_t laneCount);

        std::string name() const override;

        std::size_t blobCount() const override
        {
            return 1;
        }

        std::size_t blobSize(std::size_t) const override;

        std::uint64_t laneCount() const noexcept
        {
            return laneCount_;
        }

        std::size_t blockSize() const noexcept
        {
            return blockSize_;
        }

        NrAndOffset offsetOf(std::uint64_t linear, std::size_t flatLeaf) const noexcept
        {
            const std::uint64_t block = linear / laneCount_;
            const std::uint64_t lane = linear % laneCount_;
            return {
                0,
                static_cast<std::size_t>(block) * blockSize_ + laneOffset_[flatLeaf]
                    + static_cast<std::size_t>(lane) * leafSize_[flatLeaf]};
        }

        NrAndOffset physicalOffset(std::uint64_t linear, std::size_t flatLeaf) const override;
        std::optional<NrAndOffset> contiguousRun(std::uint64_t linear, std::size_t flatLeaf, std::uint64_t n)
            const override;

    private:
        std::uint64_t laneCount_;
        std::size_t blockSize_; // recordSizePacked * L
        std::vector<std::size_t> laneOffset_; // packed leaf offset * L
        std::vector<std::size_t> leafSize_;
    };

    // ============================================================================
    // single record
    // ============================================================================

    /// Lays out exactly one record instance, packed. The array dimensions
    /// must hold a single element.
    class OneMapping : public Mapping
    {
    public:
        OneMapping(RecordSchema schema, ArrayExtents extents);

        std::string name() const override;

        std::size_t blobCount() const override
        {
            return 1;
        }

        std::size_t blobSize(std::size_t) const override
        {
            return schema_.sizePacked();
        }

        NrAndOffset offsetOf(std::uint64_t, std::size_t flatLeaf) const
        {
            return {0, schema_.leaf(flatLeaf).offsetPacked};
        }

        NrAndOffset physicalOffset(std::uint64_t linear, std::size_t flatLeaf) const override;
        std::optional<NrAndOffset> contiguousRun(std::uint64_t linear, std::size_t flatLeaf, std::uint64_t n)
            const override;
    };

    // ============================================================================
    // routed composition
    // ============================================================================

    /// Routes the leaves under the selector subtrees to an inner mapping A
    /// and all remaining leaves to an inner mapping B. Blob indices of B are
    /// shifted up by A's blob count. Either side may be empty of leaves, in
    /// which case its mapping maps an empty record.
    class SplitMapping : public Mapping
    {
    public:
        SplitMapping(
            RecordSchema schema,
            ArrayExtents extents,
            std::vector<RecordCoord> selectors,
            const MappingFactory& makeSelected,
            const MappingFactory& makeRest);

        std::string name() const override;
        std::size_t blobCount() const override;
        std::size_t blobSize(std::size_t nr) const override;

        bool isComputed(std::size_t flatLeaf) const override;
        bool hasMutableState() const override;
        NrAndOffset physicalOffset(std::uint64_t linear, std::size_t flatLeaf) const override;
        ScalarValue read(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const override;
        void write(std::span<Blob> blobs, std::uint64_t linear, std::size_t flatLeaf, const ScalarValue& v)
            const override;
        void accessRanges(std::uint64_t linear, std::size_t flatLeaf, std::vector<ByteRange>& out) const override;
        std::optional<NrAndOffset> contiguousRun(std::uint64_t linear, std::size_t flatLeaf, std::uint64_t n)
            const override;
        std::size_t runtimeStateBytes() const override;

        const Mapping& selectedMapping() const noexcept
        {
            return *innerA_;
        }

        const Mapping& restMapping() const noexcept
        {
            return *innerB_;
        }

        bool isSelected(std::size_t flatLeaf) const
        {
            return route_[flatLeaf].selected;
        }

        const std::vector<RecordCoord>& selectors() const noexcept
        {
            return selectors_;
        }

    private:
        struct Route
        {
            bool selected = false;
            std::size_t innerFlat = 0;
        };

        std::vector<RecordCoord> selectors_;
        MappingPtr innerA_;
        MappingPtr innerB_;
        std::vector<Route> route_;
    };

    /// Restriction of a schema to the leaves below (keep = true) or outside
    /// (keep = false) the selector subtrees. Partially kept fixed arrays
    /// become records with element tags "e<k>". Returns an empty record when
    /// nothing remains.
    RecordSchema restrictSchema(const RecordSchema& schema, const std::vector<RecordCoord>& selectors, bool keep);
} // namespace lamina
