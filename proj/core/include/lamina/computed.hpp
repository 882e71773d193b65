// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bitpack.hpp"
#include "mapping.hpp"

#include <variant>

namespace lamina
{
    // ============================================================================
    // bit-packed integer SoA
    // ============================================================================

    /// Stores every integer leaf in its own blob as a dense stream of b-bit
    /// fields, one per array element, in linear index order. Values are
    /// truncated to b bits on store (mod 2^b for unsigned, low bits of the
    /// two's complement for signed) and zero-/sign-extended on load.
    class BitpackIntSoA : public Mapping
    {
    public:
        enum class Word
        {
            U32,
            U64
        };

        /// Per-leaf bit counts, indexed by flat leaf. Every leaf must be an
        /// integer type and 1 <= bits <= native width.
        BitpackIntSoA(
            RecordSchema schema,
            ArrayExtents extents,
            std::vector<unsigned> bitsPerLeaf,
            Word word = Word::U32);

        /// Same bit count for all leaves.
        BitpackIntSoA(RecordSchema schema, ArrayExtents extents, unsigned bits, Word word = Word::U32);

        std::string name() const override;

        std::size_t blobCount() const override
        {
            return bits_.size();
        }

        std::size_t blobSize(std::size_t nr) const override;

        bool isComputed(std::size_t) const override
        {
            return true;
        }

        unsigned bits(std::size_t flatLeaf) const
        {
            return bits_[flatLeaf];
        }

        /// Absolute bit position of the element's field within its blob.
        std::uint64_t bitOffset(std::uint64_t linear, std::size_t flatLeaf) const
        {
            return linear * bits_[flatLeaf];
        }

        ScalarValue read(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const override;
        void write(std::span<Blob> blobs, std::uint64_t linear, std::size_t flatLeaf, const ScalarValue& v)
            const override;
        void accessRanges(std::uint64_t linear, std::size_t flatLeaf, std::vector<ByteRange>& out) const override;

    private:
        std::vector<unsigned> bits_;
        Word word_;
    };

    // ============================================================================
    // bit-packed float SoA
    // ============================================================================

    /// Stores every float leaf in its own blob as a dense stream of
    /// (1 + E + M)-bit minifloats in linear index order. Encoding follows
    /// floatEncode; loads decode back to the leaf's native float type.
    class BitpackFloatSoA : public Mapping
    {
    public:
        struct FloatBits
        {
            unsigned expBits;
            unsigned manBits;
        };

        BitpackFloatSoA(
            RecordSchema schema,
            ArrayExtents extents,
            std::vector<FloatBits> bitsPerLeaf,
            BitpackIntSoA::Word word = BitpackIntSoA::Word::U32);

        BitpackFloatSoA(
            RecordSchema schema,
            ArrayExtents extents,
            unsigned expBits,
            unsigned manBits,
            BitpackIntSoA::Word word = BitpackIntSoA::Word::U32);

        std::string name() const override;

        std::size_t blobCount() const override
        {
            return bits_.size();
        }

        std::size_t blobSize(std::size_t nr) const override;

        bool isComputed(std::size_t) const override
        {
            return true;
        }

        FloatBits floatBits(std::size_t flatLeaf) const
        {
            return bits_[flatLeaf];
        }

        unsigned storedWidth(std::size_t flatLeaf) const
        {
            return 1 + bits_[flatLeaf].expBits + bits_[flatLeaf].manBits;
        }

        std::uint64_t bitOffset(std::uint64_t linear, std::size_t flatLeaf) const
        {
            return linear * storedWidth(flatLeaf);
        }

        ScalarValue read(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const override;
        void write(std::span<Blob> blobs, std::uint64_t linear, std::size_t flatLeaf, const ScalarValue& v)
            const override;
        void accessRanges(std::uint64_t linear, std::size_t flatLeaf, std::vector<ByteRange>& out) const override;

    private:
        std::vector<FloatBits> bits_;
        BitpackIntSoA::Word word_;
    };

    // ============================================================================
    // storage type change
    // ============================================================================

    /// Selects leaves either by type (every leaf of that type) or by
    /// coordinate (a single leaf).
    using LeafSelector = std::variant<Scalar, RecordCoord>;

    /// Stores selected leaves under a different scalar type. The storage
    /// schema has the same tree shape with substituted leaf types and is
    /// mapped by an inner mapping; reads and writes convert between logical
    /// and storage type (f32<->f64 rounding to nearest, integer width
    /// changes within the same signedness wrapping). Unsupported pairs are
    /// rejected at construction.
    class ChangeTypeMapping : public Mapping
    {
    public:
        ChangeTypeMapping(
            RecordSchema schema,
            ArrayExtents extents,
            std::vector<std::pair<LeafSelector, Scalar>> changes,
            const MappingFactory& makeInner);

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

        const Mapping& innerMapping() const noexcept
        {
            return *inner_;
        }

        const Mapping* inner() const noexcept override
        {
            return inner_.get();
        }

        Scalar storageType(std::size_t flatLeaf) const
        {
            return storageType_[flatLeaf];
        }

        const RecordSchema& storageSchema() const noexcept
        {
            return inner_->schema();
        }

    private:
        std::vector<std::pair<LeafSelector, Scalar>> changes_;
        std::vector<Scalar> storageType_; // per flat leaf
        MappingPtr inner_;
    };

    // ============================================================================
    // byte decomposition
    // ============================================================================

    /// Rewrites every leaf of size s into a fixed array of s single bytes
    /// and maps the exploded schema with an inner mapping. Byte k of a value
    /// is byte k of its little-endian representation, so values round-trip
    /// bit-exactly on any platform. One logical access performs s
    /// single-byte accesses through the inner mapping.
    class BytesplitMapping : public Mapping
    {
    public:
        BytesplitMapping(RecordSchema schema, ArrayExtents extents, const MappingFactory& makeInner);

        std::string name() const override;
        std::size_t blobCount() const override;
        std::size_t blobSize(std::size_t nr) const override;

        bool isComputed(std::size_t) const override
        {
            return true;
        }

        bool hasMutableState() const override;
        ScalarValue read(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const override;
        void write(std::span<Blob> blobs, std::uint64_t linear, std::size_t flatLeaf, const ScalarValue& v)
            const override;
        void accessRanges(std::uint64_t linear, std::size_t flatLeaf, std::vector<ByteRange>& out) const override;
        std::size_t runtimeStateBytes() const override;

        const Mapping& innerMapping() const noexcept
        {
            return *inner_;
        }

        const Mapping* inner() const noexcept override
        {
            return inner_.get();
        }

        /// Flat leaf of byte 0 of the given logical leaf in the exploded
        /// schema. Byte k follows at +k.
        std::size_t explodedBase(std::size_t flatLeaf) const
        {
            return explodedBase_[flatLeaf];
        }

        const RecordSchema& explodedSchema() const noexcept
        {
            return inner_->schema();
        }

    private:
        std::vector<std::size_t> explodedBase_;
        MappingPtr inner_;
    };

    // ============================================================================
    // discarding storage
    // ============================================================================

    /// Maps nothing: no blobs, writes are discarded, reads return the leaf
    /// type's zero value.
    class NullMapping : public Mapping
    {
    public:
        NullMapping(RecordSchema schema, ArrayExtents extents);

        std::string name() const override;

        std::size_t blobCount() const override
        {
            return 0;
        }

        std::size_t blobSize(std::size_t) const override
        {
            return 0;
        }

        bool isComputed(std::size_t) const override
        {
            return true;
        }

        ScalarValue read(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const override;
        void write(std::span<Blob> blobs, std::uint64_t linear, std::size_t flatLeaf, const ScalarValue& v)
            const override;
        void accessRanges(std::uint64_t, std::size_t, std::vector<ByteRange>&) const override
        {
        }
    };

    /// The exploded schema used by BytesplitMapping: every leaf of size s
    /// becomes FixedArray(s, u8).
    RecordSchema bytesplitSchema(const RecordSchema& schema);

    /// The storage schema used by ChangeTypeMapping: same tree shape with
    /// selected leaf types substituted. Returns the per-flat-leaf storage
    /// types through `outTypes` when non-null.
    RecordSchema changeTypeSchema(
        const RecordSchema& schema,
        const std::vector<std::pair<LeafSelector, Scalar>>& changes,
        std::vector<Scalar>* outTypes);
} // namespace lamina
