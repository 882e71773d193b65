// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mapping.hpp"

#include <atomic>
#include <iosfwd>

namespace lamina
{
    /// Snapshot of per-leaf access counters in flat leaf order.
    struct FieldAccessCounters
    {
        std::vector<std::uint64_t> reads;
        std::vector<std::uint64_t> writes;

        std::uint64_t totalReads() const noexcept;
        std::uint64_t totalWrites() const noexcept;
    };

    /// Wraps any mapping and counts reads and writes per leaf as a side
    /// effect of access, one relaxed atomic increment each. Storage is
    /// exactly 2 x leafCount 64-bit counters, held beside the mapping so
    /// the wrapped blobs stay byte-identical to an unwrapped run. Counted
    /// accesses go through the generic read/write funnel; contiguousRun is
    /// disabled so batched transfers decay to counted per-element accesses.
    class FieldAccessCount : public Mapping
    {
    public:
        explicit FieldAccessCount(MappingPtr inner);

        std::string name() const override;
        std::size_t blobCount() const override;
        std::size_t blobSize(std::size_t nr) const override;
        bool isComputed(std::size_t flatLeaf) const override;

        bool hasMutableState() const override
        {
            return true;
        }

        NrAndOffset physicalOffset(std::uint64_t linear, std::size_t flatLeaf) const override;
        ScalarValue read(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const override;
        void write(std::span<Blob> blobs, std::uint64_t linear, std::size_t flatLeaf, const ScalarValue& v)
            const override;
        void accessRanges(std::uint64_t linear, std::size_t flatLeaf, std::vector<ByteRange>& out) const override;
        std::size_t runtimeStateBytes() const override;

        const Mapping* inner() const noexcept override
        {
            return inner_.get();
        }

        std::uint64_t reads(std::size_t flatLeaf) const;
        std::uint64_t writes(std::size_t flatLeaf) const;
        FieldAccessCounters counters() const;
        void reset() const;

        /// Bytes occupied by the counters: 2 x leafCount x 8.
        std::size_t counterBytes() const noexcept;

    private:
        MappingPtr inner_;
        mutable std::vector<std::atomic<std::uint64_t>> reads_;
        mutable std::vector<std::atomic<std::uint64_t>> writes_;
    };

    /// Wraps any mapping and counts accesses to storage blocks of a
    /// configurable byte granularity: every block overlapped by an access's
    /// physical byte range gains one relaxed atomic increment. Counter
    /// storage is ceil(blobSize/granularity) 64-bit counters per blob; at
    /// granularity 1 that is 8 bytes of counter per mapped byte. Sub-byte
    /// ranges count with their bit range rounded outward to whole bytes;
    /// leaves with no physical bytes are not counted.
    class Heatmap : public Mapping
    {
    public:
        Heatmap(MappingPtr inner, std::size_t granularity);

        std::string name() const override;
        std::size_t blobCount() const override;
        std::size_t blobSize(std::size_t nr) const override;
        bool isComputed(std::size_t flatLeaf) const override;

        bool hasMutableState() const override
        {
            return true;
        }

        NrAndOffset physicalOffset(std::uint64_t linear, std::size_t flatLeaf) const override;
        ScalarValue read(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const override;
        void write(std::span<Blob> blobs, std::uint64_t linear, std::size_t flatLeaf, const ScalarValue& v)
            const override;
        void accessRanges(std::uint64_t linear, std::size_t flatLeaf, std::vector<ByteRange>& out) const override;
        std::size_t runtimeStateBytes() const override;

        const Mapping* inner() const noexcept override
        {
            return inner_.get();
        }

        std::size_t granularity() const noexcept
        {
            return granularity_;
        }

        std::size_t blockCount(std::size_t nr) const
        {
            return blocks_[nr].size();
        }

        std::uint64_t blockCounter(std::size_t nr, std::size_t block) const;

        /// Sum of all block counters.
        std::uint64_t totalTouches() const;
        void reset() const;

        /// Bytes occupied by the counters: 8 per block over all blobs.
        std::size_t counterBytes() const noexcept;

    private:
        void touch(std::uint64_t linear, std::size_t flatLeaf) const;

        MappingPtr inner_;
        std::size_t granularity_;
        mutable std::vector<std::vector<std::atomic<std::uint64_t>>> blocks_;
    };

    /// One row per leaf: dotted path, reads, writes, total; then a TOTAL
    /// row. Header `field,reads,writes,total`.
    void writeFieldAccessCsv(std::ostream& os, const RecordSchema& schema, const FieldAccessCounters& counters);

    /// One CSV per blob, concatenated with `# blob <nr>` separator lines.
    /// Rows `blockIndex,byteStart,count`.
    void writeHeatmapCsv(std::ostream& os, const Heatmap& heatmap);
} // namespace lamina
