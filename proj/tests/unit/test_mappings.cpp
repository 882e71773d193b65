// SPDX-License-Identifier: Apache-2.0
#include "support/oracles.hpp"

#include <lamina/layout_spec.hpp>
#include <lamina/mappings.hpp>

#include <doctest.h>

#include <algorithm>
#include <memory>
#include <numeric>

using namespace lamina;

namespace
{
    RecordSchema particleSchema()
    {
        return RecordSchema::parse("Record{Pos: Record{x: f64, y: f64, z: f64}, Mass: f32}");
    }

    ArrayExtents extentsOf(std::uint64_t n)
    {
        return ArrayExtents(IndexType::I64, {n}, {});
    }

    // Brute-force check that every (index, leaf) resolves in bounds and that
    // distinct pairs occupy disjoint byte ranges.
    void checkDisjointAndTotal(const Mapping& m)
    {
        struct Range
        {
            std::size_t nr, begin, end;
        };
        std::vector<Range> ranges;
        const auto& schema = m.schema();
        for(std::uint64_t i = 0; i < m.elementCount(); ++i)
            for(std::size_t f = 0; f < schema.leafCount(); ++f)
            {
                const auto [nr, off] = m.physicalOffset(i, f);
                const std::size_t size = schema.leaf(f).size;
                REQUIRE(nr < m.blobCount());
                REQUIRE(off + size <= m.blobSize(nr));
                ranges.push_back({nr, off, off + size});
            }
        std::sort(ranges.begin(), ranges.end(), [](const Range& a, const Range& b) {
            return std::tie(a.nr, a.begin) < std::tie(b.nr, b.begin);
        });
        for(std::size_t k = 1; k < ranges.size(); ++k)
            if(ranges[k - 1].nr == ranges[k].nr)
                REQUIRE(ranges[k - 1].end <= ranges[k].begin);
    }
} // namespace

TEST_CASE("packed AoS resolves by record stride")
{
    const AoSMapping m(particleSchema(), extentsOf(10), AoSMapping::Variant::Packed);
    CHECK(m.name() == "aos-packed");
    CHECK(m.blobCount() == 1);
    CHECK(m.blobSize(0) == 280);
    CHECK(m.recordSize() == 28);
    CHECK(m.physicalOffset(2, 3) == NrAndOffset{0, 80});
    CHECK(m.physicalOffset(0, 0) == NrAndOffset{0, 0});
    CHECK(m.offsetOf(2, 3) == m.physicalOffset(2, 3));
    CHECK(m.isFullyPhysical());
    CHECK(!m.hasMutableState());
}

TEST_CASE("aligned AoS pads records to natural alignment")
{
    const AoSMapping m(particleSchema(), extentsOf(10), AoSMapping::Variant::Aligned);
    CHECK(m.name() == "aos-aligned");
    CHECK(m.recordSize() == 32);
    CHECK(m.blobSize(0) == 320);
    CHECK(m.physicalOffset(1, 0) == NrAndOffset{0, 32});
    checkDisjointAndTotal(m);
}

TEST_CASE("multi-blob SoA gives each leaf its own blob")
{
    const auto schema = RecordSchema::parse("Record{x: f64, y: f64}");
    const SoAMapping m(schema, extentsOf(100), SoAMapping::Blobs::MultiBlob);
    CHECK(m.name() == "soa-mb");
    CHECK(m.blobCount() == 2);
    CHECK(m.blobSize(0) == 800);
    CHECK(m.blobSize(1) == 800);
    CHECK(m.physicalOffset(5, 1) == NrAndOffset{1, 40});
    CHECK(m.physicalOffset(0, 0) == NrAndOffset{0, 0});
}

TEST_CASE("single-blob SoA concatenates subarrays in leaf order")
{
    const auto schema = RecordSchema::parse("Record{x: f64, y: f64}");
    const SoAMapping m(schema, extentsOf(100), SoAMapping::Blobs::Single);
    CHECK(m.name() == "soa-sb");
    CHECK(m.blobCount() == 1);
    CHECK(m.blobSize(0) == 1600);
    CHECK(m.subarrayBase(1) == 800);
    CHECK(m.physicalOffset(5, 1) == NrAndOffset{0, 840});
}

TEST_CASE("AoSoA blocks are field-major with packed lanes")
{
    const AoSoAMapping m(particleSchema(), extentsOf(10), 4);
    CHECK(m.name() == "aosoa:4");
    CHECK(m.laneCount() == 4);
    CHECK(m.blockSize() == 112);
    CHECK(m.blobSize(0) == 3 * 112);
    CHECK(m.physicalOffset(5, 1) == NrAndOffset{0, 152});
    CHECK(m.physicalOffset(0, 0) == NrAndOffset{0, 0});
    checkDisjointAndTotal(m);
}

TEST_CASE("lane count one degenerates to packed AoS")
{
    const auto schema = particleSchema();
    const AoSoAMapping blocked(schema, extentsOf(13), 1);
    const AoSMapping packed(schema, extentsOf(13), AoSMapping::Variant::Packed);
    for(std::uint64_t i = 0; i < 13; ++i)
        for(std::size_t f = 0; f < schema.leafCount(); ++f)
            CHECK(blocked.physicalOffset(i, f) == packed.physicalOffset(i, f));
}

TEST_CASE("One maps a single packed record instance")
{
    const auto schema = RecordSchema::parse("Record{a: u8, b: u32}");
    const OneMapping m(schema, ArrayExtents(IndexType::U64, {}, {}));
    CHECK(m.name() == "one");
    CHECK(m.blobCount() == 1);
    CHECK(m.blobSize(0) == 5);
    CHECK(m.physicalOffset(0, 1) == NrAndOffset{0, 1});
    CHECK(m.physicalOffset(0, 0) == NrAndOffset{0, 0});
    CHECK_THROWS_AS(OneMapping(schema, extentsOf(2)), std::invalid_argument);
}

TEST_CASE("Split routes selected subtrees to the first inner mapping")
{
    const auto schema = RecordSchema::parse(
        "Record{Pos: Record{x: f64, y: f64, z: f64}, Vel: Record{x: f64, y: f64, z: f64}, Mass: f64}");
    const auto ext = extentsOf(20);
    const MappingFactory soaMb = [](RecordSchema s, ArrayExtents e) {
        return std::make_shared<const SoAMapping>(std::move(s), std::move(e), SoAMapping::Blobs::MultiBlob);
    };
    const MappingFactory aosPacked = [](RecordSchema s, ArrayExtents e) {
        return std::make_shared<const AoSMapping>(std::move(s), std::move(e), AoSMapping::Variant::Packed);
    };
    const SplitMapping m(schema, ext, {schema.coordOf("Pos")}, soaMb, aosPacked);

    CHECK(m.blobCount() == 4);
    CHECK(m.blobSize(0) == 160);
    CHECK(m.blobSize(3) == 20 * 32);
    CHECK(m.isSelected(0));
    CHECK(m.isSelected(2));
    CHECK(!m.isSelected(3));
    CHECK(m.isFullyPhysical());

    // Selected leaves resolve inside the first inner mapping's blobs; the
    // rest shift by its blob count.
    CHECK(m.physicalOffset(5, 1) == NrAndOffset{1, 40});
    const AoSMapping rest(
        RecordSchema::parse("Record{Vel: Record{x: f64, y: f64, z: f64}, Mass: f64}"),
        ext,
        AoSMapping::Variant::Packed);
    for(std::uint64_t i = 0; i < 20; ++i)
    {
        const auto [nr, off] = m.physicalOffset(i, 3);
        CHECK(nr == 3);
        CHECK(off == rest.physicalOffset(i, 0).offset);
        const auto [nrM, offM] = m.physicalOffset(i, 6);
        CHECK(nrM == 3);
        CHECK(offM == rest.physicalOffset(i, 3).offset);
    }
    checkDisjointAndTotal(m);
}

TEST_CASE("Split selecting the whole record equals the inner mapping")
{
    const auto schema = particleSchema();
    const auto ext = extentsOf(9);
    const MappingFactory soaSb = [](RecordSchema s, ArrayExtents e) {
        return std::make_shared<const SoAMapping>(std::move(s), std::move(e), SoAMapping::Blobs::Single);
    };
    const SplitMapping split(schema, ext, {RecordCoord{}}, soaSb, soaSb);
    const SoAMapping plain(schema, ext, SoAMapping::Blobs::Single);
    REQUIRE(split.blobCount() >= 1);
    for(std::uint64_t i = 0; i < 9; ++i)
        for(std::size_t f = 0; f < schema.leafCount(); ++f)
            CHECK(split.physicalOffset(i, f) == plain.physicalOffset(i, f));
}

TEST_CASE("schema restriction keeps or drops selector subtrees")
{
    const auto schema = particleSchema();
    const std::vector<RecordCoord> sel{schema.coordOf("Pos")};
    CHECK(restrictSchema(schema, sel, true).toString() == "Record{Pos:Record{x:f64,y:f64,z:f64}}");
    CHECK(restrictSchema(schema, sel, false).toString() == "Record{Mass:f32}");

    const auto arr = RecordSchema::parse("Record{A: i32[3], B: u8}");
    const std::vector<RecordCoord> selElem{arr.coordOf("A.1")};
    const auto kept = restrictSchema(arr, selElem, true);
    CHECK(kept.leafCount() == 1);
    const auto rest = restrictSchema(arr, selElem, false);
    CHECK(rest.leafCount() == 3);
    CHECK(rest.toString().find("e0") != std::string::npos);
}

TEST_CASE("packed blob bytes sum to element count times record size")
{
    const auto schema = particleSchema();
    for(const char* name : {"aos-packed", "soa-sb", "soa-mb", "aosoa:4"})
    {
        const auto m = parseLayout(name, schema, extentsOf(16));
        const auto sizes = m->blobSizes();
        const auto total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
        CHECK(total == 16 * schema.sizePacked());
    }
    const auto aligned = parseLayout("aos-aligned", schema, extentsOf(16));
    CHECK(aligned->blobSize(0) == 16 * schema.sizeAligned());
}

TEST_CASE("every physical mapping is disjoint and total on random shapes")
{
    std::mt19937 rng(42);
    for(int trial = 0; trial < 40; ++trial)
    {
        const auto schema = oracle::randomSchema(rng, 10, 3);
        const auto ext = oracle::randomExtents(rng, 64);
        for(const char* name : {"aos-packed", "aos-aligned", "soa-sb", "soa-mb", "aosoa:4"})
            checkDisjointAndTotal(*parseLayout(name, schema, ext));
        if(ext.elementCount() == 1)
            checkDisjointAndTotal(*parseLayout("one", schema, ext));
    }
}

TEST_CASE("physical offset rejects out-of-range access")
{
    const AoSMapping m(particleSchema(), extentsOf(4), AoSMapping::Variant::Packed);
    CHECK_THROWS_WITH_AS(m.physicalOffset(4, 0), doctest::Contains("index out of range"), std::out_of_range);
    CHECK_THROWS_WITH_AS(m.physicalOffset(0, 9), doctest::Contains("index out of range"), std::out_of_range);
}
