// SPDX-License-Identifier: Apache-2.0
#include "support/oracles.hpp"

#include <lamina/layout_spec.hpp>
#include <lamina/view.hpp>
#include <lamina/view_io.hpp>

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

using namespace lamina;
namespace fs = std::filesystem;

namespace
{
    struct TempDir
    {
        fs::path path;

        TempDir()
        {
            std::mt19937_64 rng(std::random_device{}());
            path = fs::temp_directory_path() / ("lamina-io-" + std::to_string(rng()));
            fs::create_directories(path);
        }

        ~TempDir()
        {
            std::error_code ec;
            fs::remove_all(path, ec);
        }
    };

    View makeFilled(const char* layout, const RecordSchema& schema, const ArrayExtents& extents, std::uint64_t salt)
    {
        View view(parseLayout(layout, schema, extents));
        for(std::uint64_t i = 0; i < extents.elementCount(); ++i)
            for(std::size_t f = 0; f < schema.leafCount(); ++f)
            {
                view.write(i, f, oracle::scalarSample(schema.leaf(f).type, salt));
                ++salt;
            }
        return view;
    }

    void checkRestoredEquals(const View& restored, const View& original)
    {
        REQUIRE(restored.blobs().size() == original.blobs().size());
        for(std::size_t nr = 0; nr < original.blobs().size(); ++nr)
        {
            REQUIRE(restored.blobs()[nr].size() == original.blobs()[nr].size());
            CHECK(
                std::memcmp(
                    restored.blobs()[nr].data(), original.blobs()[nr].data(), original.blobs()[nr].size())
                == 0);
        }
        CHECK(restored.schema() == original.schema());
        CHECK(restored.extents() == original.extents());
        CHECK(restored.mapping().name() == original.mapping().name());
    }
} // namespace

TEST_CASE("dump and restore round-trips bytes, schema and extents")
{
    const auto schema = RecordSchema::parse("Record{Pos: Record{x: f64, y: f64}, Flags: u8, Count: i32}");
    TempDir dir;
    for(const char* layout : {"aos-packed", "soa-mb", "aosoa:4", "bytesplit:soa-sb", "split:Pos:soa-mb:aos-packed"})
    {
        CAPTURE(layout);
        const auto original = makeFilled(layout, schema, ArrayExtents(IndexType::I32, {6}, {}), 50);
        const auto stem = dir.path / "plain";
        writeViewDump(original, stem);
        const View restored = readViewDump(stem);
        checkRestoredEquals(restored, original);
    }
}

TEST_CASE("dynamic extent values survive the sidecar")
{
    const auto schema = RecordSchema::parse("Record{x: f64, n: u16}");
    const auto extents = ArrayExtents::parse("u32:[2,dyn,3]", std::vector<std::uint64_t>{5});
    TempDir dir;
    const auto original = makeFilled("soa-sb", schema, extents, 7);
    const auto stem = dir.path / "dyn";
    writeViewDump(original, stem);
    const View restored = readViewDump(stem);
    checkRestoredEquals(restored, original);
    CHECK(restored.extents().elementCount() == 30);
}

TEST_CASE("restore rejects missing and damaged dumps")
{
    const auto schema = RecordSchema::parse("Record{x: f64}");
    TempDir dir;

    CHECK_THROWS_WITH_AS(
        readViewDump(dir.path / "absent"), doctest::Contains("cannot read"), std::runtime_error);

    const auto original = makeFilled("soa-mb", schema, ArrayExtents(IndexType::I64, {4}, {}), 3);
    const auto stem = dir.path / "dump";
    writeViewDump(original, stem);

    SUBCASE("truncated blob file")
    {
        fs::resize_file(fs::path(stem.string() + ".blob0.bin"), 8);
        CHECK_THROWS_WITH_AS(readViewDump(stem), doctest::Contains("truncated"), std::runtime_error);
    }

    SUBCASE("missing blob file")
    {
        fs::remove(fs::path(stem.string() + ".blob0.bin"));
        CHECK_THROWS_WITH_AS(readViewDump(stem), doctest::Contains("cannot read"), std::runtime_error);
    }

    SUBCASE("sidecar blob size disagrees with the mapping")
    {
        std::ifstream in(stem.string() + ".meta");
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        in.close();
        const auto pos = text.find("blob0-size=32");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, std::strlen("blob0-size=32"), "blob0-size=16");
        std::ofstream out(stem.string() + ".meta", std::ios::trunc);
        out << text;
        out.close();
        CHECK_THROWS_WITH_AS(readViewDump(stem), doctest::Contains("blob size mismatch"), std::runtime_error);
    }

    SUBCASE("sidecar missing a field")
    {
        std::ofstream out(stem.string() + ".meta", std::ios::trunc);
        out << "schema=Record{x:f64}\n";
        out.close();
        CHECK_THROWS_WITH_AS(readViewDump(stem), doctest::Contains("missing field"), std::runtime_error);
    }
}
