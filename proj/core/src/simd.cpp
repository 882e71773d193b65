// SPDX-License-Identifier: Apache-2.0
#include <lamina/simd.hpp>

#include <cstring>
#include <stdexcept>

namespace lamina
{
    namespace
    {
        void checkRun(const View& view, std::uint64_t first, std::size_t flatLeaf, std::size_t n)
        {
            if(flatLeaf >= view.schema().leafCount())
                throw std::out_of_range("index out of range: leaf " + std::to_string(flatLeaf));
            if(first > view.elementCount() || view.elementCount() - first < n)
                throw std::out_of_range(
                    "index out of range: elements [" + std::to_string(first) + ", "
                    + std::to_string(first + n) + ")");
        }
    } // namespace

    SimdizedRecord::SimdizedRecord(RecordSchema schema, std::size_t width)
        : schema_(std::move(schema))
        , width_(width)
        , storage_(width * schema_.sizePacked())
    {
        if(width_ < 1)
            throw std::invalid_argument("batch width must be at least 1");
        base_.reserve(schema_.leafCount());
        for(const auto& leaf : schema_.leaves())
            base_.push_back(width_ * leaf.offsetPacked);
    }

    ScalarValue SimdizedRecord::lane(std::size_t flatLeaf, std::size_t k) const
    {
        const auto& leaf = schema_.leaf(flatLeaf);
        return ScalarValue::load(leafData(flatLeaf) + k * leaf.size, leaf.type);
    }

    void SimdizedRecord::setLane(std::size_t flatLeaf, std::size_t k, const ScalarValue& v)
    {
        const auto& leaf = schema_.leaf(flatLeaf);
        if(v.kind() != leaf.type)
            throw std::invalid_argument("type mismatch: leaf is " + std::string(scalarName(leaf.type)));
        v.store(leafData(flatLeaf) + k * leaf.size);
    }

    void loadLeafLanes(const View& view, std::uint64_t first, std::size_t flatLeaf, std::size_t n, std::byte* dst)
    {
        checkRun(view, first, flatLeaf, n);
        if(n == 0)
            return;
        const auto& leaf = view.schema().leaf(flatLeaf);
        if(const auto run = view.mapping().contiguousRun(first, flatLeaf, n))
        {
            std::memcpy(dst, view.blobs()[run->nr].data() + run->offset, n * leaf.size);
            return;
        }
        for(std::size_t k = 0; k < n; ++k)
            view.read(first + k, flatLeaf).store(dst + k * leaf.size);
    }

    void storeLeafLanes(View& view, std::uint64_t first, std::size_t flatLeaf, std::size_t n, const std::byte* src)
    {
        checkRun(view, first, flatLeaf, n);
        if(n == 0)
            return;
        const auto& leaf = view.schema().leaf(flatLeaf);
        if(const auto run = view.mapping().contiguousRun(first, flatLeaf, n))
        {
            std::memcpy(view.blobs()[run->nr].data() + run->offset, src, n * leaf.size);
            return;
        }
        for(std::size_t k = 0; k < n; ++k)
            view.write(first + k, flatLeaf, ScalarValue::load(src + k * leaf.size, leaf.type));
    }

    void loadSimd(const View& view, std::uint64_t first, SimdizedRecord& dst)
    {
        if(!(view.schema() == dst.schema()))
            throw std::invalid_argument("incompatible views");
        for(std::size_t f = 0; f < dst.schema().leafCount(); ++f)
            loadLeafLanes(view, first, f, dst.width(), dst.leafData(f));
    }

    void storeSimd(const SimdizedRecord& src, View& view, std::uint64_t first)
    {
        if(!(view.schema() == src.schema()))
            throw std::invalid_argument("incompatible views");
        for(std::size_t f = 0; f < src.schema().leafCount(); ++f)
            storeLeafLanes(view, first, f, src.width(), src.leafData(f));
    }

    void storeSimd(const SimdizedRecord& src, View& view, std::uint64_t first, const RecordCoord& subtree)
    {
        if(!(view.schema() == src.schema()))
            throw std::invalid_argument("incompatible views");
        const auto [firstLeaf, lastLeaf] = view.schema().leafRange(subtree);
        for(std::size_t f = firstLeaf; f < lastLeaf; ++f)
            storeLeafLanes(view, first, f, src.width(), src.leafData(f));
    }
} // namespace lamina
