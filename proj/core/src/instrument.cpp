// SPDX-License-Identifier: Apache-2.0
#include <lamina/instrument.hpp>

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace lamina
{
    std::uint64_t FieldAccessCounters::totalReads() const noexcept
    {
        return std::accumulate(reads.begin(), reads.end(), std::uint64_t{0});
    }

    std::uint64_t FieldAccessCounters::totalWrites() const noexcept
    {
        return std::accumulate(writes.begin(), writes.end(), std::uint64_t{0});
    }

    // ============================================================================
    // FieldAccessCount
    // ============================================================================

    FieldAccessCount::FieldAccessCount(MappingPtr inner)
        : Mapping(inner->schema(), inner->extents())
        , inner_(std::move(inner))
        , reads_(schema_.leafCount())
        , writes_(schema_.leafCount())
    {
    }

    std::string FieldAccessCount::name() const
    {
        return "field-access-count(" + inner_->name() + ")";
    }

    std::size_t FieldAccessCount::blobCount() const
    {
        return inner_->blobCount();
    }

    std::size_t FieldAccessCount::blobSize(std::size_t nr) const
    {
        return inner_->blobSize(nr);
    }

    bool FieldAccessCount::isComputed(std::size_t flatLeaf) const
    {
        return inner_->isComputed(flatLeaf);
    }

    NrAndOffset FieldAccessCount::physicalOffset(std::uint64_t linear, std::size_t flatLeaf) const
    {
        return inner_->physicalOffset(linear, flatLeaf);
    }

    ScalarValue FieldAccessCount::read(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const
    {
        const ScalarValue v = inner_->read(blobs, linear, flatLeaf);
        reads_[flatLeaf].fetch_add(1, std::memory_order_relaxed);
        return v;
    }

    void FieldAccessCount::write(
        std::span<Blob> blobs,
        std::uint64_t linear,
        std::size_t flatLeaf,
        const ScalarValue& v) const
    {
        inner_->write(blobs, linear, flatLeaf, v);
        writes_[flatLeaf].fetch_add(1, std::memory_order_relaxed);
    }

    void FieldAccessCount::accessRanges(std::uint64_t linear, std::size_t flatLeaf, std::vector<ByteRange>& out) const
    {
        inner_->accessRanges(linear, flatLeaf, out);
    }

    std::size_t FieldAccessCount::runtimeStateBytes() const
    {
        return extents_.runtimeStateBytes() + inner_->runtimeStateBytes() + counterBytes();
    }

    std::uint64_t FieldAccessCount::reads(std::size_t flatLeaf) const
    {
        return reads_[flatLeaf].load(std::memory_order_relaxed);
    }

    std::uint64_t FieldAccessCount::writes(std::size_t flatLeaf) const
    {
        return writes_[flatLeaf].load(std::memory_order_relaxed);
    }

    FieldAccessCounters FieldAccessCount::counters() const
    {
        FieldAccessCounters out;
        out.reads.reserve(reads_.size());
        out.writes.reserve(writes_.size());
        for(const auto& c : reads_)
            out.reads.push_back(c.load(std::memory_order_relaxed));
        for(const auto& c : writes_)
            out.writes.push_back(c.load(std::memory_order_relaxed));
        return out;
    }

    void FieldAccessCount::reset() const
    {
        for(auto& c : reads_)
            c.store(0, std::memory_order_relaxed);
        for(auto& c : writes_)
            c.store(0, std::memory_order_relaxed);
    }

    std::size_t FieldAccessCount::counterBytes() const noexcept
    {
        return 2 * schema_.leafCount() * sizeof(std::uint64_t);
    }

    // ============================================================================
    // Heatmap
    // ============================================================================

    Heatmap::Heatmap(MappingPtr inner, std::size_t granularity)
        : Mapping(inner->schema(), inner->extents())
        , inner_(std::move(inner))
        , granularity_(granularity)
    {
        if(granularity_ < 1)
            throw std::invalid_argument("heatmap granularity must be >= 1");
        blocks_.reserve(inner_->blobCount());
        for(std::size_t nr = 0; nr < inner_->blobCount(); ++nr)
        {
            const std::size_t size = inner_->blobSize(nr);
            blocks_.emplace_back((size + granularity_ - 1) / granularity_);
        }
    }

    std::string Heatmap::name() const
    {
        return "heatmap:" + std::to_string(granularity_) + "(" + inner_->name() + ")";
    }

    std::size_t Heatmap::blobCount() const
    {
        return inner_->blobCount();
    }

    std::size_t Heatmap::blobSize(std::size_t nr) const
    {
        return inner_->blobSize(nr);
    }

    bool Heatmap::isComputed(std::size_t flatLeaf) const
    {
        return inner_->isComputed(flatLeaf);
    }

    NrAndOffset Heatmap::physicalOffset(std::uint64_t linear, std::size_t flatLeaf) const
    {
        return inner_->physicalOffset(linear, flatLeaf);
    }

    void Heatmap::touch(std::uint64_t linear, std::size_t flatLeaf) const
    {
        std::vector<ByteRange> ranges;
        inner_->accessRanges(linear, flatLeaf, ranges);
        for(const auto& r : ranges)
        {
            if(r.begin >= r.end)
                continue;
            const std::size_t first = r.begin / granularity_;
            const std::size_t last = (r.end - 1) / granularity_;
            for(std::size_t b = first; b <= last; ++b)
                blocks_[r.nr][b].fetch_add(1, std::memory_order_relaxed);
        }
    }

    ScalarValue Heatmap::read(std::span<const Blob> blobs, std::uint64_t linear, std::size_t flatLeaf) const
    {
        const ScalarValue v = inner_->read(blobs, linear, flatLeaf);
        touch(linear, flatLeaf);
        return v;
    }

    void Heatmap::write(std::span<Blob> blobs, std::uint64_t linear, std::size_t flatLeaf, const ScalarValue& v)
        const
    {
        inner_->write(blobs, linear, flatLeaf, v);
        touch(linear, flatLeaf);
    }

    void Heatmap::accessRanges(std::uint64_t linear, std::size_t flatLeaf, std::vector<ByteRange>& out) const
    {
        inner_->accessRanges(linear, flatLeaf, out);
    }

    std::size_t Heatmap::runtimeStateBytes() const
    {
        return extents_.runtimeStateBytes() + inner_->runtimeStateBytes() + counterBytes();
    }

    std::uint64_t Heatmap::blockCounter(std::size_t nr, std::size_t block) const
    {
        return blocks_[nr][block].load(std::memory_order_relaxed);
    }

    std::uint64_t Heatmap::totalTouches() const
    {
        std::uint64_t total = 0;
        for(const auto& blob : blocks_)
            for(const auto& c : blob)
                total += c.load(std::memory_order_relaxed);
        return total;
    }

    void Heatmap::reset() const
    {
        for(auto& blob : blocks_)
            for(auto& c : blob)
                c.store(0, std::memory_order_relaxed);
    }

    std::size_t Heatmap::counterBytes() const noexcept
    {
        std::size_t blockTotal = 0;
        for(const auto& blob : blocks_)
            blockTotal += blob.size();
        return blockTotal * sizeof(std::uint64_t);
    }

    // ============================================================================
    // CSV reports
    // ============================================================================

    void writeFieldAccessCsv(std::ostream& os, const RecordSchema& schema, const FieldAccessCounters& counters)
    {
        os << "field,reads,writes,total\n";
        for(std::size_t f = 0; f < schema.leafCount(); ++f)
        {
            const std::uint64_t r = f < counters.reads.size() ? counters.reads[f] : 0;
            const std::uint64_t w = f < counters.writes.size() ? counters.writes[f] : 0;
            os << schema.leaf(f).path << ',' << r << ',' << w << ',' << (r + w) << '\n';
        }
        os << "TOTAL," << counters.totalReads() << ',' << counters.totalWrites() << ','
           << (counters.totalReads() + counters.totalWrites()) << '\n';
    }

    void writeHeatmapCsv(std::ostream& os, const Heatmap& heatmap)
    {
        for(std::size_t nr = 0; nr < heatmap.blobCount(); ++nr)
        {
            os << "# blob " << nr << '\n';
            os << "blockIndex,byteStart,count\n";
            for(std::size_t b = 0; b < heatmap.blockCount(nr); ++b)
                os << b << ',' << b * heatmap.granularity() << ',' << heatmap.blockCounter(nr, b) << '\n';
        }
    }
} // namespace lamina
