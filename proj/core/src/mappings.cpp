// SPDX-License-Identifier: Apache-2.0
#include <lamina/mappings.hpp>

#include <stdexcept>

namespace lamina
{
    namespace
    {
        void checkBounds(const Mapping& m, std::uint64_t linear, std::size_t flatLeaf)
        {
            if(linear >= m.elementCount())
                throw std::out_of_range("index out of range: element " + std::to_string(linear));
            if(flatLeaf >= m.schema().leafCount())
                throw std::out_of_range("index out of range: leaf " + std::to_string(flatLeaf));
        }
    } // namespace

    // ============================================================================
    // AoSMapping
    // ============================================================================

    AoSMapping::AoSMapping(RecordSchema schema, ArrayExtents extents, Variant variant)
        : Mapping(std::move(schema), std::move(extents))
        , variant_(variant)
        , recordSize_(variant == Variant::Packed ? schema_.sizePacked() : schema_.sizeAligned())
    {
        leafOffset_.reserve(schema_.leafCount());
        for(const auto& leaf : schema_.leaves())
            leafOffset_.push_back(variant == Variant::Packed ? leaf.offsetPacked : leaf.offsetAligned);
    }

    std::string AoSMapping::name() const
    {
        return variant_ == Variant::Packed ? "aos-packed" : "aos-aligned";
    }

    NrAndOffset AoSMapping::physicalOffset(std::uint64_t linear, std::size_t flatLeaf) const
    {
        checkBounds(*this, linear, flatLeaf);
        return offsetOf(linear, flatLeaf);
    }

    std::optional<NrAndOffset> AoSMapping::contiguousRun(std::uint64_t linear, std::size_t flatLeaf, std::uint64_t n)
        const
    {
        if(n <= 1 || recordSize_ == schema_.leaf(flatLeaf).size)
            return offsetOf(linear, flatLeaf);
        return std::nullopt;
    }

    // ============================================================================
    // SoAMapping
    // ============================================================================

    SoAMapping::SoAMapping(RecordSchema schema, ArrayExtents extents, Blobs blobs)
        : Mapping(std::move(schema), std::move(extents))
        , blobs_(blobs)
    {
        const std::size_t n = static_cast<std::size_t>(elementCount());
        std::size_t base = 0;
        leafSize_.reserve(schema_.leafCount());
        subarrayBase_.reserve(schema_.leafCount());
        for(const auto& leaf : schema_.leaves())
        {
            leafSize_.push_back(leaf.size);
            subarrayBase_.push_back(base);
            base += n * leaf.size;
        }
    }

    std::string SoAMapping::name() const
    {
        return blobs_ == Blobs::Single ? "soa-sb" : "soa-mb";
    }

    std::size_t SoAMapping::blobCount() const
    {
        return blobs_ == Blobs::Single ? 1 : schema_.leafCount();
    }

    std::size_t SoAMapping::blobSize(std::size_t nr) const
    {
        const std::size_t n = static_cast<std::size_t>(elementCount());
        if(blobs_ == Blobs::Single)
            return n * schema_.sizePacked();
        return n * leafSize_[nr];
    }

    NrAndOffset SoAMapping::physicalOffset(std::uint64_t linear, std::size_t flatLeaf) const
    {
        checkBounds(*this, linear, flatLeaf);
        return offsetOf(linear, flatLeaf);
    }

    std::optional<NrAndOffset> SoAMapping::contiguousRun(std::uint64_t linear, std::size_t flatLeaf, std::uint64_t)
        const
    {
        // leaf subarrays are contiguous by construction
        return offsetOf(linear, flatLeaf);
    }

    // ============================================================================
    // AoSoAMapping
    // ============================================================================

    AoSoAMapping::AoSoAMapping(RecordSchema schema, ArrayExtents extents, std::uint64_t laneCount)
        : Mapping(std::move(schema), std::move(extents))
        , laneCount_(laneCount)
        , blockSize_(schema_.sizePacked() * static_cast<std::size_t>(laneCount))
    {
        if(laneCount_ < 1)
            throw std::invalid_argument("lane count must be >= 1");
        laneOffset_.reserve(schema_.leafCount());
        leafSize_.reserve(schema_.leafCount());
        for(const auto& leaf : schema_.leaves())
        {
            laneOffset_.push_back(leaf.offsetPacked * static_cast<std::size_t>(laneCount));
            leafSize_.push_back(leaf.size);
        }
    }

    std::string AoSoAMapping::name() const
    {
        return "aosoa:" + std::to_string(laneCount_);
    }

    std::size_t AoSoAMapping::blobSize(std::size_t) const
    {
        const std::uint64_t blocks = (elementCount() + laneCount_ - 1) / laneCount_;
        return static_cast<std::size_t>(blocks) * blockSize_;
    }

    NrAndOffset AoSoAMapping::physicalOffset(std::uint64_t linear, std::size_t flatLeaf) const
    {
        checkBounds(*this, linear, flatLeaf);
        return offsetOf(linear, flatLeaf);
    }

    std::optional<NrAndOffset> AoSoAMapping::contiguousRun(std::uint64_t linear, std::size_t flatLeaf, std::uint64_t n)
        const
    {
        if(n <= 1 || schema_.sizePacked() == leafSize_[flatLeaf])
            return offsetOf(linear, flatLeaf);
        if(linear % laneCount_ + n <= laneCount_)
            return offsetOf(linear, flatLeaf);
        return std::nullopt;
    }

    // ============================================================================
    // OneMapping
    // ============================================================================

    OneMapping::OneMapping(RecordSchema schema, ArrayExtents extents)
        : Mapping(std::move(schema), std::move(extents))
    {
        if(elementCount() != 1)
            throw std::invalid_argument("one mapping requires a unit array extent");
    }

    std::string OneMapping::name() const
    {
        return "one";
    }

    NrAndOffset OneMapping::physicalOffset(std::uint64_t linear, std::size_t flatLeaf) const
    {
        checkBounds(*this, linear, flatLeaf);
        return offsetOf(linear, flatLeaf);
    }

    std::optional<NrAndOffset> OneMapping::contiguousRun(std::uint64_t linear, std::size_t flatLeaf, std::uint64_t n)
        const
    {
        if(n <= 1)
            return offsetOf(linear, flatLeaf);
        return std::nullopt;
    }

    // ============================================================================
    // SplitMapping
    // ============================================================================

    namespace
    {
        bool leafSelected(const RecordCoord& leafCoord, const std::vector<RecordCoord>& selectors)
        {
            for(const auto& s : selectors)
                if(s.isPrefixOf(leafCoord))
                    return true;
            return false;
        }

        RecordSchema::NodePtr filterNode(
            const RecordSchema& schema,
            const RecordSchema::NodePtr& node,
            const RecordCoord& coord,
            const std::vector<RecordCoord>& selectors,
            bool keep)
        {
            using Kind = RecordSchema::Node::Kind;
            switch(node->kind)
            {
            case Kind::Leaf:
                if(leafSelected(coord, selectors) == keep)
                    return node;
                return nullptr;
            case Kind::Record:
            {
                std::vector<std::pair<std::string, RecordSchema>> fields;
                for(std::size_t i = 0; i < node->fields.size(); ++i)
                {
                    auto child = filterNode(
                        schema,
                        node->fields[i].node,
                        coord.child(static_cast<std::uint32_t>(i)),
                        selectors,
                        keep);
                    if(child != nullptr)
                        fields.emplace_back(node->fields[i].tag, RecordSchema(std::move(child)));
                }
                if(fields.empty())
                    return nullptr;
                return RecordSchema::record(std::move(fields)).root();
            }
            case Kind::FixedArray:
            {
                std::vector<RecordSchema::NodePtr> kept(static_cast<std::size_t>(node->count));
                bool any = false;
                for(std::uint64_t i = 0; i < node->count; ++i)
                {
                    kept[i] = filterNode(schema, node->element, coord.child(static_cast<std::uint32_t>(i)), selectors, keep);
                    any = any || kept[i] != nullptr;
                }
                if(!any)
                    return nullptr;
                bool uniform = kept[0] != nullptr;
                for(std::uint64_t i = 1; uniform && i < node->count; ++i)
                    uniform = kept[i] != nullptr && RecordSchema(kept[i]) == RecordSchema(kept[0]);
                if(uniform)
                    return RecordSchema::fixedArray(node->count, RecordSchema(kept[0])).root();
                // partial selection breaks the array's homogeneity; surviving
                // elements become record fields e<k>
                std::vector<std::pair<std::string, RecordSchema>> fields;
                for(std::uint64_t i = 0; i < node->count; ++i)
                    if(kept[i] != nullptr)
                        fields.emplace_back("e" + std::to_string(i), RecordSchema(kept[i]));
                return RecordSchema::record(std::move(fields)).root();
            }
            }
            return nullptr;
        }
    } // namespace

    RecordSchema restrictSchema(const RecordSchema& schema, const std::vector<RecordCoord>& selectors, bool keep)
    {
        auto root = filterNode(schema, schema.root(), RecordCoord{}, selectors, keep);
        if(root == nullptr)
            return RecordSchema::record({});
        return RecordSchema(std::move(root));
    }

    SplitMapping::SplitMapping(
        RecordSchema schema,
        ArrayExtents extents,
        std::vector<RecordCoord> selectors,
        const MappingFactory& makeSelected,
        const MappingFactory& makeRest)
        : Mapping(std::move(schema), std::move(extents))
        , selectors_(std::move(selectors))
    {
        for(const auto& s : selectors_)
            if(schema_.nodeAt(s) == nullptr)
                throw std::invalid_argument("selector path invalid: coordinate " + s.toString());

        const RecordSchema schemaA = restrictSchema(schema_, selectors_, true);
        const RecordSchema schemaB = restrictSchema(schema_, selectors_, false);
        innerA_ = makeSelected(schemaA, extents_);
        innerB_ = makeRest(schemaB, extents_);
        if(innerA_ == nullptr || innerB_ == nullptr)
            throw std::invalid_argument("split requires both inner mappings");

        route_.reserve(schema_.leafCount());
        std::size_t nextA = 0;
        std::size_t nextB = 0;
        for(const auto& leaf : schema_.leaves())
        {
            const bool sel = leafSelected(leaf.coord, selectors_);
            route_.push_back(Route{sel, sel ? nextA++ : nextB++});
        }
        if(nextA != innerA_->schema().leafCount() || nextB != innerB_->schema().leafCount())
            throw std::logic_error("split leaf routing mismatch");
    }

    std::string SplitMapping::name() const
    {
        std::string paths;
        for(std::size_t i = 0; i < selectors_.size(); ++i)
        {
            if(i > 0)
                paths += ',';
            paths += schema_.pathOf(selectors_[i]);
        }
        return "split:" + paths + ":" + innerA_->name() + ":" + innerB_->name();
    }

    std::size_t SplitMapping::blobCount() const
    {
        return innerA_->blobCount() + innerB_->blobCount();
    }

    std::size_t SplitMapping::blobSize(std::size_t nr) const
    {
        const std::size_t nA = innerA_->blobCount();
        return nr < nA ? innerA_->blobSize(nr) : innerB_->blobSize(nr - nA);
    }

    bool SplitMapping::isComputed(std::size_t flatLeaf) const
    {
        const auto& r = route_[flatLeaf];
        return r.selected ? innerA_->isComputed(r.innerFlat) : innerB_->isComputed(r.innerFlat);
    }

    bool SplitMapping::hasMutableState() const
    {
        return innerA_->hasMutableState() || innerB_->hasMutableState();
    }

    NrAndOffset SplitMapping::physicalOffset(std::uint64_t linear, std::size_t flatLeaf) const
    {
        checkBounds(*this, linear, flatLeaf);
        const auto& r = route_[flatLeaf];
        if(r.selected)
            return innerA_->physicalOffset(linear, r.innerFlat);
        auto res = innerB_->physicalOffset(linear, r.innerFlat);
        res.nr += innerA_->blobCount();
        return res;
    }

    ScalarValue SplitMapping::read(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const
    {
        const auto& r = route_[flatLeaf];
        const std::size_t nA = innerA_->blobCount();
        if(r.selected)
            return innerA_->read(blobs.subspan(0, nA), linear, r.innerFlat);
        return innerB_->read(blobs.subspan(nA), linear, r.innerFlat);
    }

    void SplitMapping::write(std::span<Blob> blobs, std::uint64_t linear, std::size_t flatLeaf, const ScalarValue& v)
        const
    {
        const auto& r = route_[flatLeaf];
        const std::size_t nA = innerA_->blobCount();
        if(r.selected)
            innerA_->write(blobs.subspan(0, nA), linear, r.innerFlat, v);
        else
            innerB_->write(blobs.subspan(nA), linear, r.innerFlat, v);
    }

    void SplitMapping::accessRanges(std::uint64_t linear, std::size_t flatLeaf, std::vector<ByteRange>& out) const
    {
        const auto& r = route_[flatLeaf];
        if(r.selected)
        {
            innerA_->accessRanges(linear, r.innerFlat, out);
            return;
        }
        const std::size_t first = out.size();
        innerB_->accessRanges(linear, r.innerFlat, out);
        for(std::size_t i = first; i < out.size(); ++i)
            out[i].nr += innerA_->blobCount();
    }

    std::optional<NrAndOffset> SplitMapping::contiguousRun(std::uint64_t linear, std::size_t flatLeaf, std::uint64_t n)
        const
    {
        const auto& r = route_[flatLeaf];
        if(r.selected)
            return innerA_->contiguousRun(linear, r.innerFlat, n);
        auto run = innerB_->contiguousRun(linear, r.innerFlat, n);
        if(run)
            run->nr += innerA_->blobCount();
        return run;
    }

    std::size_t SplitMapping::runtimeStateBytes() const
    {
        return extents_.runtimeStateBytes() + innerA_->runtimeStateBytes() + innerB_->runtimeStateBytes();
    }
} // namespace lamina
