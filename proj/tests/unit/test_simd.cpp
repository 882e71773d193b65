// SPDX-License-Identifier: Apache-2.0
#include "support/oracles.hpp"

#include <lamina/layout_spec.hpp>
#include <lamina/simd.hpp>
#include <lamina/view.hpp>

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <type_traits>
#include <vector>

using namespace lamina;

namespace
{
    const RecordSchema& particleSchema()
    {
        static const RecordSchema schema = RecordSchema::parse(
            "Record{Pos: Record{x: f64, y: f64, z: f64}, Vel: Record{x: f64, y: f64, z: f64}, Mass: f64}");
        return schema;
    }

    ArrayExtents extentsOf(std::uint64_t n)
    {
        return ArrayExtents(IndexType::I64, {n}, {});
    }

    View filledView(const char* layout, const RecordSchema& schema, std::uint64_t n, std::uint64_t saltBase)
    {
        View view(parseLayout(layout, schema, extentsOf(n)));
        for(std::uint64_t i = 0; i < n; ++i)
            for(std::size_t f = 0; f < schema.leafCount(); ++f)
                view.write(i, f, oracle::scalarSample(schema.leaf(f).type, saltBase + i * schema.leafCount() + f));
        return view;
    }
} // namespace

static_assert(std::is_same_v<SimdN<double, 1>, double>);
static_assert(std::is_same_v<SimdN<float, 1>, float>);
static_assert(std::is_same_v<SimdN<float, 4>, SimdBatch<float, 4>>);
static_assert(simdWidthOf<double> == 1);
static_assert(simdWidthOf<SimdBatch<double, 8>> == 8);

TEST_CASE("batch arithmetic is lanewise")
{
    SimdBatch<double, 4> a;
    SimdBatch<double, 4> b;
    for(std::size_t i = 0; i < 4; ++i)
    {
        a[i] = 1.5 * static_cast<double>(i + 1);
        b[i] = 0.25 + static_cast<double>(i);
    }
    const auto sum = a + b;
    const auto dif = a - b;
    const auto mul = a * b;
    const auto div = a / b;
    const auto rt = sqrt(a);
    for(std::size_t i = 0; i < 4; ++i)
    {
        CHECK(sum[i] == a[i] + b[i]);
        CHECK(dif[i] == a[i] - b[i]);
        CHECK(mul[i] == a[i] * b[i]);
        CHECK(div[i] == a[i] / b[i]);
        CHECK(rt[i] == std::sqrt(a[i]));
    }

    auto acc = a;
    acc += b;
    CHECK(acc == sum);
    acc -= b;
    CHECK(acc == a);
    acc *= b;
    CHECK(acc == mul);

    const SimdBatch<float, 3> bc(2.5F);
    for(std::size_t i = 0; i < 3; ++i)
        CHECK(bc[i] == 2.5F);
}

TEST_CASE("broadcast and lane extraction work for both value forms")
{
    const auto s = simdBroadcast<SimdN<double, 1>>(3.25);
    CHECK(s == 3.25);
    CHECK(laneOf(s, 0) == 3.25);

    const auto v = simdBroadcast<SimdN<double, 4>>(3.25);
    for(std::size_t i = 0; i < 4; ++i)
        CHECK(laneOf(v, i) == 3.25);
}

TEST_CASE("simdized record stores each leaf batch contiguously")
{
    const auto& schema = particleSchema();
    SimdizedRecord rec(schema, 4);
    CHECK(rec.width() == 4);
    CHECK(rec.schema() == schema);
    for(std::size_t f = 0; f < schema.leafCount(); ++f)
        CHECK(rec.leafData(f) - rec.leafData(0) == static_cast<std::ptrdiff_t>(4 * schema.leaf(f).offsetPacked));

    rec.setLane(1, 2, ScalarValue::ofFloat(Scalar::F64, 6.5));
    CHECK(rec.lane(1, 2) == ScalarValue::ofFloat(Scalar::F64, 6.5));
    CHECK(rec.get<double>(1, 2) == 6.5);
    rec.set<double>(6, 0, 0.125);
    CHECK(rec.lane(6, 0).asFloat() == 0.125);

    const SimdizedRecord narrow(schema, 1);
    CHECK(narrow.width() == 1);
    CHECK_THROWS_AS(SimdizedRecord(schema, 0), std::invalid_argument);
}

TEST_CASE("leaf lane transfer agrees between contiguous and funnel paths")
{
    const auto& schema = particleSchema();
    const auto contiguous = filledView("soa-mb", schema, 12, 100);
    const auto strided = filledView("aos-packed", schema, 12, 100);

    std::vector<std::byte> a(4 * sizeof(double));
    std::vector<std::byte> b(4 * sizeof(double));
    for(std::size_t f = 0; f < schema.leafCount(); ++f)
    {
        loadLeafLanes(contiguous, 3, f, 4, a.data());
        loadLeafLanes(strided, 3, f, 4, b.data());
        CHECK(std::memcmp(a.data(), b.data(), a.size()) == 0);
    }

    CHECK_THROWS_AS(loadLeafLanes(contiguous, 10, 0, 4, a.data()), std::out_of_range);
    View sink(parseLayout("soa-mb", schema, extentsOf(12)));
    CHECK_THROWS_AS(storeLeafLanes(sink, 11, 0, 2, a.data()), std::out_of_range);
}

TEST_CASE("batch load and store equal N scalar accesses on every mapping")
{
    const auto& schema = particleSchema();
    const std::vector<const char*> layouts
        = {"aos-packed",
           "aos-aligned",
           "soa-sb",
           "soa-mb",
           "aosoa:4",
           "split:Pos:soa-mb:aos-packed",
           "bytesplit:soa-mb",
           "changetype:Mass=f32:soa-sb",
           "bitpack-float:8,23"};
    for(const char* layout : layouts)
    {
        CAPTURE(layout);
        const auto src = filledView(layout, schema, 12, 500);
        for(const std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{4}, std::size_t{8}})
            for(const std::uint64_t first : {std::uint64_t{0}, std::uint64_t{3}})
            {
                SimdizedRecord rec(schema, n);
                loadSimd(src, first, rec);
                for(std::size_t f = 0; f < schema.leafCount(); ++f)
                    for(std::size_t k = 0; k < n; ++k)
                        CHECK(rec.lane(f, k) == src.read(first + k, f));

                View dst(parseLayout(layout, schema, extentsOf(12)));
                storeSimd(rec, dst, first);
                for(std::size_t f = 0; f < schema.leafCount(); ++f)
                    for(std::size_t k = 0; k < n; ++k)
                        CHECK(dst.read(first + k, f) == src.read(first + k, f));
            }
    }
}

TEST_CASE("integer leaves batch exactly through bit-packed storage")
{
    const auto schema = RecordSchema::parse("Record{a: i32, b: Record{c: u16, d: i64}}");
    const auto src = filledView("bitpack-int:11", schema, 12, 900);
    SimdizedRecord rec(schema, 8);
    loadSimd(src, 2, rec);
    View dst(parseLayout("bitpack-int:11", schema, extentsOf(12)));
    storeSimd(rec, dst, 2);
    for(std::size_t f = 0; f < schema.leafCount(); ++f)
        for(std::size_t k = 0; k < 8; ++k)
            CHECK(dst.read(2 + k, f) == src.read(2 + k, f));
}

TEST_CASE("subtree store touches only the selected leaves")
{
    const auto& schema = particleSchema();
    auto view = filledView("aosoa:4", schema, 12, 40);
    std::vector<ScalarValue> before;
    for(std::uint64_t i = 0; i < 12; ++i)
        for(std::size_t f = 0; f < schema.leafCount(); ++f)
            before.push_back(view.read(i, f));

    SimdizedRecord rec(schema, 4);
    loadSimd(view, 4, rec);
    for(std::size_t f = 3; f < 6; ++f) // the Vel leaves
        for(std::size_t k = 0; k < 4; ++k)
            rec.set<double>(f, k, static_cast<double>(f * 10 + k));
    for(std::size_t f = 0; f < 3; ++f) // poison Pos lanes; they must not land
        for(std::size_t k = 0; k < 4; ++k)
            rec.set<double>(f, k, -1.0);

    storeSimd(rec, view, 4, schema.coordOf("Vel"));

    for(std::uint64_t i = 0; i < 12; ++i)
        for(std::size_t f = 0; f < schema.leafCount(); ++f)
        {
            const bool written = i >= 4 && i < 8 && f >= 3 && f < 6;
            if(written)
                CHECK(view.read(i, f).asFloat() == static_cast<double>(f * 10 + (i - 4)));
            else
                CHECK(view.read(i, f) == before[i * schema.leafCount() + f]);
        }
}

TEST_CASE("typed leaf batches move values and reject wrong types")
{
    const auto& schema = particleSchema();
    auto view = filledView("soa-sb", schema, 12, 300);

    SimdN<double, 4> batch{};
    loadLeafSimd<double, 4>(view, 1, 6, batch);
    for(std::size_t k = 0; k < 4; ++k)
        CHECK(batch[k] == view.load<double>(1 + k, 6));

    for(std::size_t k = 0; k < 4; ++k)
        batch[k] = 0.5 + static_cast<double>(k);
    storeLeafSimd<double, 4>(batch, view, 1, 6);
    for(std::size_t k = 0; k < 4; ++k)
        CHECK(view.load<double>(1 + k, 6) == 0.5 + static_cast<double>(k));

    SimdN<double, 1> one{};
    loadLeafSimd<double, 1>(view, 2, 6, one);
    CHECK(one == view.load<double>(2, 6));
    storeLeafSimd<double, 1>(7.75, view, 2, 6);
    CHECK(view.load<double>(2, 6) == 7.75);

    SimdN<float, 4> wrong{};
    CHECK_THROWS_WITH_AS(
        (loadLeafSimd<float, 4>(view, 0, 6, wrong)), doctest::Contains("type mismatch"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        (storeLeafSimd<float, 4>(wrong, view, 0, 6)), doctest::Contains("type mismatch"), std::invalid_argument);
}

TEST_CASE("batch stores through bit-packed integers truncate per lane")
{
    const auto schema = RecordSchema::parse("Record{v: u16}");
    View view(parseLayout("bitpack-int:4", schema, extentsOf(4)));
    SimdN<std::uint16_t, 4> batch{};
    batch[0] = 19;
    batch[1] = 3;
    batch[2] = 255;
    batch[3] = 16;
    storeLeafSimd<std::uint16_t, 4>(batch, view, 0, 0);
    CHECK(view.load<std::uint16_t>(0, 0) == 3);
    CHECK(view.load<std::uint16_t>(1, 0) == 3);
    CHECK(view.load<std::uint16_t>(2, 0) == 15);
    CHECK(view.load<std::uint16_t>(3, 0) == 0);
}

TEST_CASE("simdized transfer rejects a schema mismatch")
{
    const auto other = RecordSchema::parse("Record{x: f64}");
    const auto view = filledView("aos-packed", particleSchema(), 4, 0);
    SimdizedRecord rec(other, 2);
    CHECK_THROWS_WITH_AS(loadSimd(view, 0, rec), "incompatible views", std::invalid_argument);
    View sink(parseLayout("aos-packed", particleSchema(), extentsOf(4)));
    CHECK_THROWS_WITH_AS(storeSimd(rec, sink, 0), "incompatible views", std::invalid_argument);
}
