// SPDX-License-Identifier: Apache-2.0
#include <lamina/computed.hpp>

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

        std::size_t wordBytesOf(BitpackIntSoA::Word w) noexcept
        {
            return w == BitpackIntSoA::Word::U32 ? 4 : 8;
        }

        std::size_t packedBlobSize(std::uint64_t elementCount, unsigned bitsPerValue, std::size_t wordBytes)
        {
            const std::uint64_t totalBits = elementCount * bitsPerValue;
            const std::uint64_t wordBits = 8 * wordBytes;
            return static_cast<std::size_t>((totalBits + wordBits - 1) / wordBits) * wordBytes;
        }

        void appendBitRange(
            std::vector<ByteRange>& out,
            std::size_t nr,
            std::uint64_t bitOffset,
            unsigned bits)
        {
            // outward rounding to whole bytes
            out.push_back(ByteRange{
                nr,
                static_cast<std::size_t>(bitOffset / 8),
                static_cast<std::size_t>((bitOffset + bits + 7) / 8)});
        }
    } // namespace

    // ============================================================================
    // BitpackIntSoA
    // ============================================================================

    BitpackIntSoA::BitpackIntSoA(
        RecordSchema schema,
        ArrayExtents extents,
        std::vector<unsigned> bitsPerLeaf,
        Word word)
        : Mapping(std::move(schema), std::move(extents))
        , bits_(std::move(bitsPerLeaf))
        , word_(word)
    {
        if(bits_.size() != schema_.leafCount())
            throw std::invalid_argument("arity error: one bit count per leaf required");
        for(std::size_t f = 0; f < bits_.size(); ++f)
        {
            const auto& leaf = schema_.leaf(f);
            if(!isInteger(leaf.type))
                throw std::invalid_argument(
                    "bitpack-int requires integer leaves, got " + std::string(scalarName(leaf.type)));
            if(bits_[f] < 1 || bits_[f] > 8 * leaf.size)
                throw std::invalid_argument("bit count " + std::to_string(bits_[f]) + " out of range for leaf");
        }
    }

    BitpackIntSoA::BitpackIntSoA(RecordSchema schema, ArrayExtents extents, unsigned bits, Word word)
        : BitpackIntSoA(
            schema,
            std::move(extents),
            std::vector<unsigned>(schema.leafCount(), bits),
            word)
    {
    }

    std::string BitpackIntSoA::name() const
    {
        bool uniform = true;
        for(const auto b : bits_)
            uniform = uniform && b == bits_.front();
        if(uniform && !bits_.empty())
            return "bitpack-int:" + std::to_string(bits_.front());
        std::string out = "bitpack-int:";
        for(std::size_t i = 0; i < bits_.size(); ++i)
        {
            if(i > 0)
                out += ',';
            out += std::to_string(bits_[i]);
        }
        return out;
    }

    std::size_t BitpackIntSoA::blobSize(std::size_t nr) const
    {
        return packedBlobSize(elementCount(), bits_[nr], wordBytesOf(word_));
    }

    ScalarValue BitpackIntSoA::read(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const
    {
        checkBounds(*this, linear, flatLeaf);
        const unsigned b = bits_[flatLeaf];
        const std::uint64_t pattern = readBits(blobs[flatLeaf].data(), bitOffset(linear, flatLeaf), b);
        const Scalar type = schema_.leaf(flatLeaf).type;
        if(isSignedInt(type))
            return ScalarValue::ofSigned(type, unpackSigned(pattern, b));
        return ScalarValue::ofUnsigned(type, unpackUnsigned(pattern, b));
    }

    void BitpackIntSoA::write(std::span<Blob> blobs, std::uint64_t linear, std::size_t flatLeaf, const ScalarValue& v)
        const
    {
        checkBounds(*this, linear, flatLeaf);
        const Scalar type = schema_.leaf(flatLeaf).type;
        if(v.kind() != type)
            throw std::invalid_argument("type mismatch: leaf is " + std::string(scalarName(type)));
        const unsigned b = bits_[flatLeaf];
        const std::uint64_t pattern = isSignedInt(type) ? packInt(v.asSigned(), b) : packInt(v.asUnsigned(), b);
        writeBits(blobs[flatLeaf].data(), bitOffset(linear, flatLeaf), b, pattern);
    }

    void BitpackIntSoA::accessRanges(std::uint64_t linear, std::size_t flatLeaf, std::vector<ByteRange>& out) const
    {
        appendBitRange(out, flatLeaf, bitOffset(linear, flatLeaf), bits_[flatLeaf]);
    }

    // ============================================================================
    // BitpackFloatSoA
    // ============================================================================

    BitpackFloatSoA::BitpackFloatSoA(
        RecordSchema schema,
        ArrayExtents extents,
        std::vector<FloatBits> bitsPerLeaf,
        BitpackIntSoA::Word word)
        : Mapping(std::move(schema), std::move(extents))
        , bits_(std::move(bitsPerLeaf))
        , word_(word)
    {
        if(bits_.size() != schema_.leafCount())
            throw std::invalid_argument("arity error: one (exponent, mantissa) pair per leaf required");
        for(std::size_t f = 0; f < bits_.size(); ++f)
        {
            const auto& leaf = schema_.leaf(f);
            if(!isFloat(leaf.type))
                throw std::invalid_argument(
                    "bitpack-float requires float leaves, got " + std::string(scalarName(leaf.type)));
            if(bits_[f].expBits < 1 || 1 + bits_[f].expBits + bits_[f].manBits > 64)
                throw std::invalid_argument("float bit layout out of range");
        }
    }

    BitpackFloatSoA::BitpackFloatSoA(
        RecordSchema schema,
        ArrayExtents extents,
        unsigned expBits,
        unsigned manBits,
        BitpackIntSoA::Word word)
        : BitpackFloatSoA(
            schema,
            std::move(extents),
            std::vector<FloatBits>(schema.leafCount(), FloatBits{expBits, manBits}),
            word)
    {
    }

    std::string BitpackFloatSoA::name() const
    {
        bool uniform = true;
        for(const auto& b : bits_)
            uniform = uniform && b.expBits == bits_.front().expBits && b.manBits == bits_.front().manBits;
        if(uniform && !bits_.empty())
            return "bitpack-float:" + std::to_string(bits_.front().expBits) + ","
                + std::to_string(bits_.front().manBits);
        std::string out = "bitpack-float:";
        for(std::size_t i = 0; i < bits_.size(); ++i)
        {
            if(i > 0)
                out += ';';
            out += std::to_string(bits_[i].expBits) + "," + std::to_string(bits_[i].manBits);
        }
        return out;
    }

    std::size_t BitpackFloatSoA::blobSize(std::size_t nr) const
    {
        return packedBlobSize(elementCount(), storedWidth(nr), wordBytesOf(word_));
    }

    ScalarValue BitpackFloatSoA::read(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const
    {
        checkBounds(*this, linear, flatLeaf);
        const auto [e, m] = bits_[flatLeaf];
        const std::uint64_t pattern
            = readBits(blobs[flatLeaf].data(), bitOffset(linear, flatLeaf), storedWidth(flatLeaf));
        return ScalarValue::ofFloat(schema_.leaf(flatLeaf).type, floatDecode(pattern, e, m));
    }

    void BitpackFloatSoA::write(
        std::span<Blob> blobs,
        std::uint64_t linear,
        std::size_t flatLeaf,
        const ScalarValue& v) const
    {
        checkBounds(*this, linear, flatLeaf);
        const Scalar type = schema_.leaf(flatLeaf).type;
        if(v.kind() != type)
            throw std::invalid_argument("type mismatch: leaf is " + std::string(scalarName(type)));
        const auto [e, m] = bits_[flatLeaf];
        writeBits(
            blobs[flatLeaf].data(),
            bitOffset(linear, flatLeaf),
            storedWidth(flatLeaf),
            floatEncode(v.asFloat(), e, m));
    }

    void BitpackFloatSoA::accessRanges(std::uint64_t linear, std::size_t flatLeaf, std::vector<ByteRange>& out) const
    {
        appendBitRange(out, flatLeaf, bitOffset(linear, flatLeaf), storedWidth(flatLeaf));
    }

    // ============================================================================
    // ChangeTypeMapping
    // ============================================================================

    RecordSchema changeTypeSchema(
        const RecordSchema& schema,
        const std::vector<std::pair<LeafSelector, Scalar>>& changes,
        std::vector<Scalar>* outTypes)
    {
        std::vector<Scalar> types;
        types.reserve(schema.leafCount());
        for(const auto& leaf : schema.leaves())
            types.push_back(leaf.type);

        for(const auto& [selector, target] : changes)
        {
            if(const auto* type = std::get_if<Scalar>(&selector))
            {
                for(std::size_t f = 0; f < types.size(); ++f)
                    if(schema.leaf(f).type == *type)
                        types[f] = target;
            }
            else
            {
                const auto& coord = std::get<RecordCoord>(selector);
                if(schema.nodeAt(coord) == nullptr)
                    throw std::invalid_argument("no such field: coordinate " + coord.toString());
                const auto [first, last] = schema.leafRange(coord);
                for(std::size_t f = first; f < last; ++f)
                    types[f] = target;
            }
        }
        for(std::size_t f = 0; f < types.size(); ++f)
            if(!ScalarValue::convertible(schema.leaf(f).type, types[f]))
                throw std::invalid_argument(
                    "unsupported type change: " + std::string(scalarName(schema.leaf(f).type)) + " -> "
                    + std::string(scalarName(types[f])));

        // rebuild the tree with substituted leaf types
        std::size_t next = 0;
        const auto rebuild = [&](const auto& self, const RecordSchema::NodePtr& node) -> RecordSchema
        {
            using Kind = RecordSchema::Node::Kind;
            switch(node->kind)
            {
            case Kind::Leaf:
                return RecordSchema::leaf(types[next++]);
            case Kind::Record:
            {
                std::vector<std::pair<std::string, RecordSchema>> fields;
                for(const auto& fld : node->fields)
                    fields.emplace_back(fld.tag, self(self, fld.node));
                return RecordSchema::record(std::move(fields));
            }
            case Kind::FixedArray:
            {
                // element subtrees may receive different types per index
                std::vector<RecordSchema> elements;
                elements.reserve(static_cast<std::size_t>(node->count));
                for(std::uint64_t i = 0; i < node->count; ++i)
                    elements.push_back(self(self, node->element));
                bool uniform = true;
                for(const auto& e : elements)
                    uniform = uniform && e == elements.front();
                if(uniform)
                    return RecordSchema::fixedArray(node->count, elements.front());
                std::vector<std::pair<std::string, RecordSchema>> fields;
                for(std::uint64_t i = 0; i < node->count; ++i)
                    fields.emplace_back("e" + std::to_string(i), elements[i]);
                return RecordSchema::record(std::move(fields));
            }
            }
            return RecordSchema::leaf(Scalar::F64);
        };
        RecordSchema storage = rebuild(rebuild, schema.root());
        if(outTypes != nullptr)
            *outTypes = std::move(types);
        return storage;
    }

    ChangeTypeMapping::ChangeTypeMapping(
        RecordSchema schema,
        ArrayExtents extents,
        std::vector<std::pair<LeafSelector, Scalar>> changes,
        const MappingFactory& makeInner)
        : Mapping(std::move(schema), std::move(extents))
        , changes_(std::move(changes))
    {
        RecordSchema storage = changeTypeSchema(schema_, changes_, &storageType_);
        inner_ = makeInner(std::move(storage), extents_);
        if(inner_ == nullptr)
            throw std::invalid_argument("changetype requires an inner mapping");
    }

    std::string ChangeTypeMapping::name() const
    {
        std::string out = "changetype:";
        for(std::size_t i = 0; i < changes_.size(); ++i)
        {
            if(i > 0)
                out += ',';
            const auto& [selector, target] = changes_[i];
            if(const auto* type = std::get_if<Scalar>(&selector))
                out += scalarName(*type);
            else
                out += schema_.pathOf(std::get<RecordCoord>(selector));
            out += '=';
            out += scalarName(target);
        }
        return out + ":" + inner_->name();
    }

    std::size_t ChangeTypeMapping::blobCount() const
    {
        return inner_->blobCount();
    }

    std::size_t ChangeTypeMapping::blobSize(std::size_t nr) const
    {
        return inner_->blobSize(nr);
    }

    bool ChangeTypeMapping::isComputed(std::size_t flatLeaf) const
    {
        return storageType_[flatLeaf] != schema_.leaf(flatLeaf).type || inner_->isComputed(flatLeaf);
    }

    bool ChangeTypeMapping::hasMutableState() const
    {
        return inner_->hasMutableState();
    }

    NrAndOffset ChangeTypeMapping::physicalOffset(std::uint64_t linear, std::size_t flatLeaf) const
    {
        if(isComputed(flatLeaf))
            throw std::logic_error("computed leaf has no physical offset");
        return inner_->physicalOffset(linear, flatLeaf);
    }

    ScalarValue ChangeTypeMapping::read(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const
    {
        return inner_->read(blobs, linear, flatLeaf).convertTo(schema_.leaf(flatLeaf).type);
    }

    void ChangeTypeMapping::write(
        std::span<Blob> blobs,
        std::uint64_t linear,
        std::size_t flatLeaf,
        const ScalarValue& v) const
    {
        const Scalar type = schema_.leaf(flatLeaf).type;
        if(v.kind() != type)
            throw std::invalid_argument("type mismatch: leaf is " + std::string(scalarName(type)));
        inner_->write(blobs, linear, flatLeaf, v.convertTo(storageType_[flatLeaf]));
    }

    void ChangeTypeMapping::accessRanges(std::uint64_t linear, std::size_t flatLeaf, std::vector<ByteRange>& out)
        const
    {
        inner_->accessRanges(linear, flatLeaf, out);
    }

    std::optional<NrAndOffset> ChangeTypeMapping::contiguousRun(
        std::uint64_t linear,
        std::size_t flatLeaf,
        std::uint64_t n) const
    {
        if(isComputed(flatLeaf))
            return std::nullopt;
        return inner_->contiguousRun(linear, flatLeaf, n);
    }

    std::size_t ChangeTypeMapping::runtimeStateBytes() const
    {
        return extents_.runtimeStateBytes() + inner_->runtimeStateBytes();
    }

    // ============================================================================
    // BytesplitMapping
    // ============================================================================

    RecordSchema bytesplitSchema(const RecordSchema& schema)
    {
        const auto rebuild = [](const auto& self, const RecordSchema::NodePtr& node) -> RecordSchema
        {
            using Kind = RecordSchema::Node::Kind;
            switch(node->kind)
            {
            case Kind::Leaf:
                return RecordSchema::fixedArray(scalarSize(node->scalar), RecordSchema::leaf(Scalar::U8));
            case Kind::Record:
            {
                std::vector<std::pair<std::string, RecordSchema>> fields;
                for(const auto& fld : node->fields)
                    fields.emplace_back(fld.tag, self(self, fld.node));
                return RecordSchema::record(std::move(fields));
            }
            case Kind::FixedArray:
                return RecordSchema::fixedArray(node->count, self(self, node->element));
            }
            return RecordSchema::leaf(Scalar::U8);
        };
        return rebuild(rebuild, schema.root());
    }

    BytesplitMapping::BytesplitMapping(RecordSchema schema, ArrayExtents extents, const MappingFactory& makeInner)
        : Mapping(std::move(schema), std::move(extents))
    {
        explodedBase_.reserve(schema_.leafCount());
        for(const auto& leaf : schema_.leaves())
            explodedBase_.push_back(leaf.offsetPacked); // bytes preceding = exploded leaves preceding
        inner_ = makeInner(bytesplitSchema(schema_), extents_);
        if(inner_ == nullptr)
            throw std::invalid_argument("bytesplit requires an inner mapping");
    }

    std::string BytesplitMapping::name() const
    {
        return "bytesplit:" + inner_->name();
    }

    std::size_t BytesplitMapping::blobCount() const
    {
        return inner_->blobCount();
    }

    std::size_t BytesplitMapping::blobSize(std::size_t nr) const
    {
        return inner_->blobSize(nr);
    }

    bool BytesplitMapping::hasMutableState() const
    {
        return inner_->hasMutableState();
    }

    ScalarValue BytesplitMapping::read(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const
    {
        checkBounds(*this, linear, flatLeaf);
        const auto& leaf = schema_.leaf(flatLeaf);
        std::uint64_t bits = 0;
        for(std::size_t k = 0; k < leaf.size; ++k)
        {
            const ScalarValue byte = inner_->read(blobs, linear, explodedBase_[flatLeaf] + k);
            bits |= byte.asUnsigned() << (8 * k);
        }
        return ScalarValue::fromStorageBits(leaf.type, bits);
    }

    void BytesplitMapping::write(
        std::span<Blob> blobs,
        std::uint64_t linear,
        std::size_t flatLeaf,
        const ScalarValue& v) const
    {
        checkBounds(*this, linear, flatLeaf);
        const auto& leaf = schema_.leaf(flatLeaf);
        if(v.kind() != leaf.type)
            throw std::invalid_argument("type mismatch: leaf is " + std::string(scalarName(leaf.type)));
        const std::uint64_t bits = v.storageBits();
        for(std::size_t k = 0; k < leaf.size; ++k)
            inner_->write(
                blobs,
                linear,
                explodedBase_[flatLeaf] + k,
                ScalarValue::ofUnsigned(Scalar::U8, (bits >> (8 * k)) & 0xFF));
    }

    void BytesplitMapping::accessRanges(std::uint64_t linear, std::size_t flatLeaf, std::vector<ByteRange>& out) const
    {
        const auto& leaf = schema_.leaf(flatLeaf);
        for(std::size_t k = 0; k < leaf.size; ++k)
            inner_->accessRanges(linear, explodedBase_[flatLeaf] + k, out);
    }

    std::size_t BytesplitMapping::runtimeStateBytes() const
    {
        return extents_.runtimeStateBytes() + inner_->runtimeStateBytes();
    }

    // ============================================================================
    // NullMapping
    // ============================================================================

    NullMapping::NullMapping(RecordSchema schema, ArrayExtents extents)
        : Mapping(std::move(schema), std::move(extents))
    {
    }

    std::string NullMapping::name() const
    {
        return "null";
    }

    ScalarValue NullMapping::read(std::span<const Blob>, std::uint64_t linear, std::size_t flatLeaf) const
    {
        checkBounds(*this, linear, flatLeaf);
        return ScalarValue::zero(schema_.leaf(flatLeaf).type);
    }

    void NullMapping::write(std::span<Blob>, std::uint64_t linear, std::size_t flatLeaf, const ScalarValue& v) const
    {
        checkBounds(*this, linear, flatLeaf);
        if(v.kind() != schema_.leaf(flatLeaf).type)
            throw std::invalid_argument(
                "type mismatch: leaf is " + std::string(scalarName(schema_.leaf(flatLeaf).type)));
        // values are discarded
    }
} // namespace lamina
