// SPDX-License-Identifier: Apache-2.0
#include <lamina/view.hpp>

#include <cstring>

namespace lamina
{
    // ============================================================================
    // ProxyReference
    // ============================================================================

    ScalarValue ProxyReference::value() const
    {
        return view_->read(linear_, flat_);
    }

    void ProxyReference::assign(const ScalarValue& v)
    {
        view_->write(linear_, flat_, v);
    }

    // ============================================================================
    // RecordRef
    // ============================================================================

    RecordRef::RecordRef(View& view, std::uint64_t linear, RecordCoord coord)
        : view_(&view)
        , linear_(linear)
        , coord_(std::move(coord))
    {
        if(view_->schema().nodeAt(coord_) == nullptr)
            throw std::invalid_argument("no such field: coordinate " + coord_.toString());
    }

    RecordRef RecordRef::operator()(std::string_view tag) const
    {
        const auto node = view_->schema().nodeAt(coord_);
        using Kind = RecordSchema::Node::Kind;
        if(node->kind == Kind::Record)
        {
            for(std::uint32_t i = 0; i < node->fields.size(); ++i)
                if(node->fields[i].tag == tag)
                    return RecordRef(*view_, linear_, coord_.child(i));
            throw std::invalid_argument("no such field: '" + std::string(tag) + "'");
        }
        if(node->kind == Kind::FixedArray)
        {
            // digit tags index array elements
            if(tag.empty() || tag.find_first_not_of("0123456789") != std::string_view::npos)
                throw std::invalid_argument("no such field: '" + std::string(tag) + "'");
            const std::uint64_t i = std::stoull(std::string(tag));
            if(i >= node->count)
                throw std::invalid_argument("no such field: '" + std::string(tag) + "'");
            return RecordRef(*view_, linear_, coord_.child(static_cast<std::uint32_t>(i)));
        }
        throw std::invalid_argument("no such field: '" + std::string(tag) + "'");
    }

    RecordRef RecordRef::operator[](std::uint32_t childIndex) const
    {
        const auto node = view_->schema().nodeAt(coord_);
        using Kind = RecordSchema::Node::Kind;
        const std::uint64_t count = node->kind == Kind::Record ? node->fields.size()
            : node->kind == Kind::FixedArray                   ? node->count
                                                               : 0;
        if(childIndex >= count)
            throw std::invalid_argument("no such field: child " + std::to_string(childIndex));
        return RecordRef(*view_, linear_, coord_.child(childIndex));
    }

    bool RecordRef::isLeaf() const
    {
        return view_->schema().nodeAt(coord_)->kind == RecordSchema::Node::Kind::Leaf;
    }

    ProxyReference RecordRef::ref() const
    {
        if(!isLeaf())
            throw std::invalid_argument("coordinate not a leaf: " + coord_.toString());
        return ProxyReference(*view_, linear_, view_->schema().flatIndexOf(coord_));
    }

    ScalarValue RecordRef::value() const
    {
        return ref().value();
    }

    void RecordRef::assign(const ScalarValue& v)
    {
        ref().assign(v);
    }

    // ============================================================================
    // View
    // ============================================================================

    View::View(MappingPtr mapping)
        : mapping_(std::move(mapping))
    {
        blobs_.reserve(mapping_->blobCount());
        for(std::size_t nr = 0; nr < mapping_->blobCount(); ++nr)
            blobs_.emplace_back(mapping_->blobSize(nr));
    }

    View::View(MappingPtr mapping, std::vector<Blob> blobs)
        : mapping_(std::move(mapping))
        , blobs_(std::move(blobs))
    {
        if(blobs_.size() != mapping_->blobCount())
            throw std::invalid_argument(
                "blob count mismatch: mapping declares " + std::to_string(mapping_->blobCount()) + ", got "
                + std::to_string(blobs_.size()));
        for(std::size_t nr = 0; nr < blobs_.size(); ++nr)
            if(blobs_[nr].size() != mapping_->blobSize(nr))
                throw std::invalid_argument(
                    "blob size mismatch: blob " + std::to_string(nr) + " declares "
                    + std::to_string(mapping_->blobSize(nr)) + ", got " + std::to_string(blobs_[nr].size()));
    }

    ScalarValue View::read(std::uint64_t linear, std::size_t flatLeaf) const
    {
        return mapping_->read(blobs_, linear, flatLeaf);
    }

    void View::write(std::uint64_t linear, std::size_t flatLeaf, const ScalarValue& v)
    {
        mapping_->write(blobs_, linear, flatLeaf, v);
    }

    ScalarValue View::read(std::span<const std::uint64_t> index, const RecordCoord& coord) const
    {
        return read(linearize(extents(), index), schema().flatIndexOf(coord));
    }

    void View::write(std::span<const std::uint64_t> index, const RecordCoord& coord, const ScalarValue& v)
    {
        write(linearize(extents(), index), schema().flatIndexOf(coord), v);
    }

    RecordRef View::operator()(std::span<const std::uint64_t> index)
    {
        return at(linearize(extents(), index));
    }

    bool View::isTriviallyRelocatable() const noexcept
    {
        return mapping_->extents().isFullyStatic() && !mapping_->hasMutableState()
            && mapping_->runtimeStateBytes() == 0;
    }

    std::size_t View::blobBytes() const noexcept
    {
        std::size_t total = 0;
        for(const auto& b : blobs_)
            total += b.size();
        return total;
    }

    std::size_t View::stateBytes() const noexcept
    {
        return blobBytes() + mapping_->runtimeStateBytes();
    }

    // ============================================================================
    // copyView
    // ============================================================================

    void copyView(const View& src, View& dst)
    {
        const Mapping& a = src.mapping();
        const Mapping& b = dst.mapping();
        if(!(a.schema() == b.schema()) || !(a.extents() == b.extents()))
            throw std::invalid_argument("incompatible views");

        const bool sameLayout = a.name() == b.name() && !a.hasMutableState() && !b.hasMutableState()
            && a.isFullyPhysical() && b.isFullyPhysical();
        if(sameLayout)
        {
            for(std::size_t nr = 0; nr < a.blobCount(); ++nr)
                std::memcpy(dst.blobs()[nr].data(), src.blobs()[nr].data(), a.blobSize(nr));
            return;
        }

        const std::uint64_t n = a.elementCount();
        const std::size_t leaves = a.schema().leafCount();
        for(std::uint64_t i = 0; i < n; ++i)
            for(std::size_t f = 0; f < leaves; ++f)
                dst.write(i, f, src.read(i, f));
    }
} // namespace lamina
