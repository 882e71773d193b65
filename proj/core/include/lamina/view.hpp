// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mapping.hpp"

#include <stdexcept>

namespace lamina
{
    class View;

    /// Reference-like handle to one leaf of one element. Reads and writes
    /// route through the mapping, so computed layouts apply their
    /// conversions; on physical layouts it behaves like a plain reference.
    class ProxyReference
    {
    public:
        ProxyReference(View& view, std::uint64_t linear, std::size_t flatLeaf) noexcept
            : view_(&view)
            , linear_(linear)
            , flat_(flatLeaf)
        {
        }

        ScalarValue value() const;
        void assign(const ScalarValue& v);

        template<typename T>
        T get() const;

        template<typename T>
        void set(T v);

        template<typename T>
        ProxyReference& operator=(T v)
        {
            set(v);
            return *this;
        }

        template<typename T>
        operator T() const
        {
            return get<T>();
        }

    private:
        View* view_;
        std::uint64_t linear_;
        std::size_t flat_;
    };

    /// Navigable handle to a record (or sub-record) of one array element.
    /// operator() descends by field tag, operator[] by child position;
    /// arriving at a leaf, get/set or assignment access the value.
    class RecordRef
    {
    public:
        RecordRef(View& view, std::uint64_t linear, RecordCoord coord = {});

        RecordRef operator()(std::string_view tag) const;
        RecordRef operator[](std::uint32_t childIndex) const;

        const RecordCoord& coord() const noexcept
        {
            return coord_;
        }

        std::uint64_t linearIndex() const noexcept
        {
            return linear_;
        }

        bool isLeaf() const;

        /// Leaf access; throws std::invalid_argument ("coordinate not a
        /// leaf") on inner nodes.
        ProxyReference ref() const;
        ScalarValue value() const;
        void assign(const ScalarValue& v);

        template<typename T>
        T get() const;

        template<typename T>
        void set(T v);

        template<typename T>
        RecordRef& operator=(T v)
        {
            set(v);
            return *this;
        }

    private:
        View* view_;
        std::uint64_t linear_;
        RecordCoord coord_;
    };

    /// Owns the blobs of a mapping and exposes element access. All generic
    /// access is bounds-checked; the typed fast path is available through
    /// load/store when the mapping is physical and untraced.
    class View
    {
    public:
        /// Allocates blobCount zero-initialized blobs of the declared sizes.
        explicit View(MappingPtr mapping);

        /// Adopts existing blobs; sizes must match the mapping's.
        View(MappingPtr mapping, std::vector<Blob> blobs);

        const Mapping& mapping() const noexcept
        {
            return *mapping_;
        }

        const MappingPtr& mappingPtr() const noexcept
        {
            return mapping_;
        }

        const RecordSchema& schema() const noexcept
        {
            return mapping_->schema();
        }

        const ArrayExtents& extents() const noexcept
        {
            return mapping_->extents();
        }

        std::span<Blob> blobs() noexcept
        {
            return blobs_;
        }

        std::span<const Blob> blobs() const noexcept
        {
            return blobs_;
        }

        /// Generic access by linearized index and flat leaf.
        ScalarValue read(std::uint64_t linear, std::size_t flatLeaf) const;
        void write(std::uint64_t linear, std::size_t flatLeaf, const ScalarValue& v);

        /// Generic access by array index and record coordinate.
        ScalarValue read(std::span<const std::uint64_t> index, const RecordCoord& coord) const;
        void write(std::span<const std::uint64_t> index, const RecordCoord& coord, const ScalarValue& v);

        /// Typed access. T must match the leaf's scalar type exactly.
        /// Physical untraced leaves go straight to the resolved bytes;
        /// everything else funnels through the mapping.
        template<typename T>
        T load(std::uint64_t linear, std::size_t flatLeaf) const
        {
            const auto& leaf = schema().leaf(flatLeaf);
            if(scalarOf<T>() != leaf.type)
                throw std::invalid_argument("type mismatch: leaf is " + std::string(scalarName(leaf.type)));
            if(!mapping_->isComputed(flatLeaf) && !mapping_->hasMutableState())
            {
                const auto [nr, off] = mapping_->physicalOffset(linear, flatLeaf);
                return loadUnaligned<T>(blobs_[nr].data() + off);
            }
            return extract<T>(read(linear, flatLeaf));
        }

        template<typename T>
        void store(std::uint64_t linear, std::size_t flatLeaf, T v)
        {
            const auto& leaf = schema().leaf(flatLeaf);
            if(scalarOf<T>() != leaf.type)
                throw std::invalid_argument("type mismatch: leaf is " + std::string(scalarName(leaf.type)));
            if(!mapping_->isComputed(flatLeaf) && !mapping_->hasMutableState())
            {
                const auto [nr, off] = mapping_->physicalOffset(linear, flatLeaf);
                storeUnaligned<T>(blobs_[nr].data() + off, v);
                return;
            }
            write(linear, flatLeaf, ScalarValue::of<T>(v));
        }

        /// Direct typed reference into the blob bytes. Requires a physical
        /// untraced leaf whose resolved address is naturally aligned.
        template<typename T>
        T& directRef(std::uint64_t linear, std::size_t flatLeaf)
        {
            const auto& leaf = schema().leaf(flatLeaf);
            if(scalarOf<T>() != leaf.type)
                throw std::invalid_argument("type mismatch: leaf is " + std::string(scalarName(leaf.type)));
            if(mapping_->isComputed(flatLeaf) || mapping_->hasMutableState())
                throw std::logic_error("computed leaf has no direct reference");
            const auto [nr, off] = mapping_->physicalOffset(linear, flatLeaf);
            std::byte* p = blobs_[nr].data() + off;
            if(reinterpret_cast<std::uintptr_t>(p) % alignof(T) != 0)
                throw std::logic_error("resolved address not aligned for direct reference");
            return *reinterpret_cast<T*>(p);
        }

        ProxyReference proxy(std::uint64_t linear, std::size_t flatLeaf)
        {
            return ProxyReference(*this, linear, flatLeaf);
        }

        /// Record handle at a linearized index.
        RecordRef at(std::uint64_t linear)
        {
            return RecordRef(*this, linear);
        }

        /// Record handle at a multidimensional index.
        RecordRef operator()(std::span<const std::uint64_t> index);

        RecordRef operator()(std::initializer_list<std::uint64_t> index)
        {
            return (*this)(std::span<const std::uint64_t>(index.begin(), index.size()));
        }

        std::uint64_t elementCount() const noexcept
        {
            return mapping_->elementCount();
        }

        /// True when the view's entire state is its blob bytes: fully
        /// static extents, no mapping runtime state, no mutable counters.
        bool isTriviallyRelocatable() const noexcept;

        /// Total owned bytes: blob bytes plus mapping runtime state.
        std::size_t stateBytes() const noexcept;

        std::size_t blobBytes() const noexcept;

    private:
        template<typename T>
        static T extract(const ScalarValue& v)
        {
            if constexpr(std::is_same_v<T, float> || std::is_same_v<T, double>)
                return static_cast<T>(v.asFloat());
            else if constexpr(std::is_same_v<T, bool>)
                return v.asBool();
            else if constexpr(std::is_signed_v<T>)
                return static_cast<T>(v.asSigned());
            else
                return static_cast<T>(v.asUnsigned());
        }

        MappingPtr mapping_;
        std::vector<Blob> blobs_;
    };

    template<typename T>
    T ProxyReference::get() const
    {
        return view_->load<T>(linear_, flat_);
    }

    template<typename T>
    void ProxyReference::set(T v)
    {
        view_->store<T>(linear_, flat_, v);
    }

    template<typename T>
    T RecordRef::get() const
    {
        return view_->load<T>(linear_, view_->schema().flatIndexOf(coord_));
    }

    template<typename T>
    void RecordRef::set(T v)
    {
        view_->store<T>(linear_, view_->schema().flatIndexOf(coord_), v);
    }

    /// Allocates a view over the mapping (zero-initialized blobs).
    inline View allocView(MappingPtr mapping)
    {
        return View(std::move(mapping));
    }

    /// Copies every (index, leaf) value from src to dst, which must share
    /// schema and extents ("incompatible views" otherwise). Equal fully
    /// physical untraced mappings copy blob by blob; anything else copies
    /// fieldwise, applying dst's projection rules.
    void copyView(const View& src, View& dst);
} // namespace lamina
