// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "blob.hpp"
#include "extents.hpp"
#include "record.hpp"
#include "scalar.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lamina
{
    /// Physical location of a leaf value: blob index and byte offset.
    struct NrAndOffset
    {
        std::size_t nr = 0;
        std::size_t offset = 0;

        bool operator==(const NrAndOffset&) const = default;
    };

    /// Half-open byte range [begin, end) within one blob.
    struct ByteRange
    {
        std::size_t nr = 0;
        std::size_t begin = 0;
        std::size_t end = 0;

        bool operator==(const ByteRange&) const = default;
    };

    /// Translates (linearized array index, flat leaf index) into storage.
    /// Physical leaves resolve to a blob location holding the leaf's bytes;
    /// computed leaves route reads and writes through read()/write(), which
    /// may convert, pack or discard. Mappings are immutable values (the
    /// instrumentation wrappers carry mutable counters and say so via
    /// hasMutableState), so resolution is safe to call concurrently.
    class Mapping
    {
    public:
        Mapping(RecordSchema schema, ArrayExtents extents)
            : schema_(std::move(schema))
            , extents_(std::move(extents))
        {
        }

        virtual ~Mapping() = default;

        const RecordSchema& schema() const noexcept
        {
            return schema_;
        }

        const ArrayExtents& extents() const noexcept
        {
            return extents_;
        }

        std::uint64_t elementCount() const noexcept
        {
            return extents_.elementCount();
        }

        /// Canonical layout name; parseable back where the layout grammar
        /// covers the mapping.
        virtual std::string name() const = 0;

        virtual std::size_t blobCount() const = 0;
        virtual std::size_t blobSize(std::size_t nr) const = 0;

        std::vector<std::size_t> blobSizes() const
        {
            std::vector<std::size_t> sizes(blobCount());
            for(std::size_t i = 0; i < sizes.size(); ++i)
                sizes[i] = blobSize(i);
            return sizes;
        }

        /// True when accesses to the leaf go through read()/write() instead
        /// of raw bytes at physicalOffset().
        virtual bool isComputed(std::size_t flatLeaf) const
        {
            (void) flatLeaf;
            return false;
        }

        bool isFullyPhysical() const
        {
            for(std::size_t f = 0; f < schema_.leafCount(); ++f)
                if(isComputed(f))
                    return false;
            return true;
        }

        /// True for wrappers that mutate internal counters on access.
        virtual bool hasMutableState() const
        {
            return false;
        }

        /// Storage location of a physical leaf. Throws std::logic_error for
        /// computed leaves.
        virtual NrAndOffset physicalOffset(std::uint64_t linear, std::size_t flatLeaf) const;

        /// Generic value access. The base implementation serves physical
        /// leaves through physicalOffset(); computed mappings override.
        virtual ScalarValue read(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const;
        virtual void write(std::span<Blob> blobs, std::uint64_t linear, std::size_t flatLeaf, const ScalarValue& v)
            const;

        /// Appends the physical byte ranges touched by one access to the
        /// leaf. Sub-byte ranges are rounded outward to whole bytes; leaves
        /// with no physical storage append nothing.
        virtual void accessRanges(std::uint64_t linear, std::size_t flatLeaf, std::vector<ByteRange>& out) const;

        /// Location of element `linear` of the leaf when the n elements
        /// starting there are stored contiguously with stride = leaf size;
        /// nullopt otherwise (or when the mapping wants per-element access,
        /// as the counting wrappers do).
        virtual std::optional<NrAndOffset> contiguousRun(
            std::uint64_t linear,
            std::size_t flatLeaf,
            std::uint64_t n) const
        {
            (void) linear;
            (void) flatLeaf;
            (void) n;
            return std::nullopt;
        }

        /// Wrapped mapping for adapters and instrumentation, else nullptr.
        virtual const Mapping* inner() const noexcept
        {
            return nullptr;
        }

        /// Bytes of bookkeeping state beyond the blobs: dynamic extents plus
        /// whatever the mapping itself stores at runtime (counters).
        virtual std::size_t runtimeStateBytes() const
        {
            return extents_.runtimeStateBytes();
        }

    protected:
        void checkPhysicalAccess(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const;

        RecordSchema schema_;
        ArrayExtents extents_;
    };

    using MappingPtr = std::shared_ptr<const Mapping>;

    /// Builds a concrete mapping for a schema/extents pair; used wherever a
    /// mapping must be chosen per subtree (Split, adapters, the layout
    /// grammar).
    using MappingFactory = std::function<MappingPtr(RecordSchema, ArrayExtents)>;
} // namespace lamina
