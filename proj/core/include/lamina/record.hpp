// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "scalar.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lamina
{
    /// Addresses a node of the record dimension as the list of child indices
    /// from the root. The empty coordinate is the whole record.
    class RecordCoord
    {
    public:
        RecordCoord() = default;

        RecordCoord(std::initializer_list<std::uint32_t> path) : path_(path)
        {
        }

        explicit RecordCoord(std::vector<std::uint32_t> path) : path_(std::move(path))
        {
        }

        std::size_t depth() const noexcept
        {
            return path_.size();
        }

        bool empty() const noexcept
        {
            return path_.empty();
        }

        std::uint32_t operator[](std::size_t i) const
        {
            return path_[i];
        }

        std::span<const std::uint32_t> path() const noexcept
        {
            return path_;
        }

        RecordCoord child(std::uint32_t i) const
        {
            auto p = path_;
            p.push_back(i);
            return RecordCoord(std::move(p));
        }

        /// True if this coordinate is `other` or an ancestor of it.
        bool isPrefixOf(const RecordCoord& other) const noexcept
        {
            if(path_.size() > other.path_.size())
                return false;
            for(std::size_t i = 0; i < path_.size(); ++i)
                if(path_[i] != other.path_[i])
                    return false;
            return true;
        }

        bool operator==(const RecordCoord&) const = default;
        auto operator<=>(const RecordCoord&) const = default;

        std::string toString() const;

        friend std::ostream& operator<<(std::ostream& os, const RecordCoord& c);

    private:
        std::vector<std::uint32_t> path_;
    };

    /// Immutable tree describing the record dimension: nested named fields,
    /// fixed-size inner arrays and scalar leaves. Construction validates the
    /// tree and precomputes the canonical flat leaf table (depth-first,
    /// pre-order, left to right), packed byte offsets and naturally aligned
    /// byte offsets, so schema queries are table lookups afterwards.
    class RecordSchema
    {
    public:
        struct Node;
        using NodePtr = std::shared_ptr<const Node>;

        struct Field
        {
            std::string tag;
            NodePtr node;
        };

        struct Node
        {
            enum class Kind
            {
                Record,
                FixedArray,
                Leaf
            };

            Kind kind = Kind::Leaf;
            Scalar scalar = Scalar::F64; // Leaf
            std::uint64_t count = 0; // FixedArray
            NodePtr element; // FixedArray
            std::vector<Field> fields; // Record

            std::size_t childCount() const noexcept
            {
                switch(kind)
                {
                case Kind::Record:
                    return fields.size();
                case Kind::FixedArray:
                    return static_cast<std::size_t>(count);
                case Kind::Leaf:
                    return 0;
                }
                return 0;
            }

            NodePtr childAt(std::size_t i) const
            {
                if(kind == Kind::Record)
                    return fields.at(i).node;
                if(kind == Kind::FixedArray && i < count)
                    return element;
                throw std::out_of_range("record child index out of range");
            }
        };

        /// One flat leaf of the schema in canonical order.
        struct LeafDesc
        {
            RecordCoord coord;
            std::string path; // dotted, array elements as [k]
            Scalar type = Scalar::F64;
            std::size_t size = 0;
            std::size_t offsetPacked = 0; // sum of preceding leaf sizes
            std::size_t offsetAligned = 0; // naturally aligned struct layout
        };

        RecordSchema() : RecordSchema(leaf(Scalar::F64))
        {
        }

        /// Wraps an existing node tree; validates nothing beyond what the
        /// factories that built the nodes already did.
        explicit RecordSchema(NodePtr root);

        static RecordSchema leaf(Scalar s);
        static RecordSchema record(std::vector<std::pair<std::string, RecordSchema>> fields);
        static RecordSchema fixedArray(std::uint64_t count, const RecordSchema& element);

        const NodePtr& root() const noexcept
        {
            return root_;
        }

        std::size_t leafCount() const noexcept
        {
            return info_->leaves.size();
        }

        std::span<const LeafDesc> leaves() const noexcept
        {
            return info_->leaves;
        }

        const LeafDesc& leaf(std::size_t flatIndex) const
        {
            return info_->leaves.at(flatIndex);
        }

        /// Record size with no padding: sum of all leaf sizes.
        std::size_t sizePacked() const noexcept
        {
            return info_->sizePacked;
        }

        /// Record size with minimal padding so every leaf offset is a
        /// multiple of its own size and the total is a multiple of the
        /// largest leaf size.
        std::size_t sizeAligned() const noexcept
        {
            return info_->sizeAligned;
        }

        /// Largest leaf size; 1 for schemas without leaves.
        std::size_t alignment() const noexcept
        {
            return info_->alignment;
        }

        /// Node addressed by the coordinate, or nullptr when out of range.
        NodePtr nodeAt(const RecordCoord& coord) const noexcept;

        /// Flat index of a leaf coordinate. Throws std::invalid_argument
        /// ("coordinate not a leaf") when the coordinate addresses an inner
        /// node or nothing at all.
        std::size_t flatIndexOf(const RecordCoord& coord) const;

        /// Subtree rooted at the coordinate as a schema of its own.
        RecordSchema subSchema(const RecordCoord& coord) const;

        /// Flat index range [first, last) of the leaves below the given node.
        std::pair<std::size_t, std::size_t> leafRange(const RecordCoord& coord) const;

        /// Resolves a dotted path ("Pos.x", "A[1]", "A.1.x") to a coordinate.
        /// Throws std::invalid_argument ("no such field") on unknown tags.
        RecordCoord coordOf(std::string_view dottedPath) const;

        /// Dotted path of the node at the coordinate.
        std::string pathOf(const RecordCoord& coord) const;

        bool operator==(const RecordSchema& other) const noexcept
        {
            return sameTree(root_, other.root_);
        }

        /// Canonical text form, parseable by parse(). Grammar:
        ///   node   := scalar | record | node "[" count "]"
        ///   record := "Record" "{" [tag ":" node ("," tag ":" node)*] "}"
        ///   scalar := i8|i16|i32|i64|u8|u16|u32|u64|f32|f64|bool
        /// Whitespace is ignored everywhere.
        std::string toString() const;

        static RecordSchema parse(std::string_view text);

        friend std::ostream& operator<<(std::ostream& os, const RecordSchema& s);

    private:
        struct Info
        {
            std::vector<LeafDesc> leaves;
            std::size_t sizePacked = 0;
            std::size_t sizeAligned = 0;
            std::size_t alignment = 1;
        };

        static bool sameTree(const NodePtr& a, const NodePtr& b) noexcept;

        NodePtr root_;
        std::shared_ptr<const Info> info_;
    };

    /// All leaves in canonical flat order as (coordinate, scalar type) pairs.
    std::vector<std::pair<RecordCoord, Scalar>> flattenSchema(const RecordSchema& schema);

    /// (type, flat index, packed byte offset) of the leaf at `coord`.
    struct LeafInfo
    {
        Scalar type;
        std::size_t flatIndex;
        std::size_t byteOffsetPacked;
    };

    LeafInfo leafInfo(const RecordSchema& schema, const RecordCoord& coord);

    inline std::size_t recordSizePacked(const RecordSchema& schema) noexcept
    {
        return schema.sizePacked();
    }

    inline std::size_t recordSizeAligned(const RecordSchema& schema) noexcept
    {
        return schema.sizeAligned();
    }
} // namespace lamina
