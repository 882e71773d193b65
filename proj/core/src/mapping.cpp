// SPDX-License-Identifier: Apache-2.0
#include <lamina/mapping.hpp>

#include <stdexcept>

namespace lamina
{
    NrAndOffset Mapping::physicalOffset(std::uint64_t, std::size_t) const
    {
        throw std::logic_error("computed leaf has no physical offset");
    }

    void Mapping::checkPhysicalAccess(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const
    {
        if(linear >= elementCount())
            throw std::out_of_range("index out of range: element " + std::to_string(linear));
        if(flatLeaf >= schema_.leafCount())
            throw std::out_of_range("index out of range: leaf " + std::to_string(flatLeaf));
        if(blobs.size() != blobCount())
            throw std::logic_error("blob count mismatch");
    }

    ScalarValue Mapping::read(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const
    {
        const auto [nr, off] = physicalOffset(linear, flatLeaf);
        return ScalarValue::load(blobs[nr].data() + off, schema_.leaf(flatLeaf).type);
    }

    void Mapping::write(std::span<Blob> blobs, std::uint64_t linear, std::size_t flatLeaf, const ScalarValue& v) const
    {
        const auto [nr, off] = physicalOffset(linear, flatLeaf);
        const auto& leaf = schema_.leaf(flatLeaf);
        if(v.kind() != leaf.type)
            throw std::invalid_argument("type mismatch: leaf is " + std::string(scalarName(leaf.type)));
        v.store(blobs[nr].data() + off);
    }

    void Mapping::accessRanges(std::uint64_t linear, std::size_t flatLeaf, std::vector<ByteRange>& out) const
    {
        const auto [nr, off] = physicalOffset(linear, flatLeaf);
        out.push_back(ByteRange{nr, off, off + schema_.leaf(flatLeaf).size});
    }
} // namespace lamina
