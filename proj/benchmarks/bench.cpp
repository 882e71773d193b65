// SPDX-License-Identifier: Apache-2.0
#include <nbody/accessors.hpp>
#include <nbody/kernel.hpp>
#include <nbody/steps.hpp>

#include <lamina/layout_spec.hpp>
#include <lamina/simd.hpp>
#include <lamina/view.hpp>

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <string>
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

    /// Same deterministic draw order as the n-body CLI: positions and
    /// masses uniform in [0,1), velocities zero.
    void initParticles(View& view, std::uint64_t n, std::uint64_t seed)
    {
        std::mt19937_64 gen(seed);
        const auto uniform = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
        for(std::uint64_t i = 0; i < n; ++i)
        {
            view.write(i, nbody::kPosX, ScalarValue::of<double>(uniform()));
            view.write(i, nbody::kPosY, ScalarValue::of<double>(uniform()));
            view.write(i, nbody::kPosZ, ScalarValue::of<double>(uniform()));
            view.write(i, nbody::kVelX, ScalarValue::of<double>(0));
            view.write(i, nbody::kVelY, ScalarValue::of<double>(0));
            view.write(i, nbody::kVelZ, ScalarValue::of<double>(0));
            view.write(i, nbody::kMass, ScalarValue::of<double>(uniform()));
        }
    }

    std::vector<nbody::ManualParticle<double>> initManual(std::uint64_t n, std::uint64_t seed)
    {
        std::mt19937_64 gen(seed);
        const auto uniform = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
        std::vector<nbody::ManualParticle<double>> ps(n);
        for(auto& p : ps)
        {
            p.posX = uniform();
            p.posY = uniform();
            p.posZ = uniform();
            p.velX = p.velY = p.velZ = 0;
            p.mass = uniform();
        }
        return ps;
    }

    // ------------------------------------------------------------------------
    // mapping arithmetic
    // ------------------------------------------------------------------------

    /// Resolve the physical offset of every leaf of every element.
    void offsetResolve(benchmark::State& state, const std::string& layout)
    {
        constexpr std::uint64_t n = 4096;
        const auto mapping = parseLayout(layout, particleSchema(), extentsOf(n));
        std::uint64_t sink = 0;
        for(auto _ : state)
        {
            for(std::uint64_t i = 0; i < n; ++i)
                for(std::size_t f = 0; f < nbody::kLeafCount; ++f)
                {
                    const auto [nr, off] = mapping->physicalOffset(i, f);
                    sink += nr + off;
                }
            benchmark::DoNotOptimize(sink);
        }
        state.SetItemsProcessed(state.iterations() * n * nbody::kLeafCount);
    }

    /// Read every leaf of every element through the type-erased funnel.
    void scalarFunnel(benchmark::State& state, const std::string& layout)
    {
        constexpr std::uint64_t n = 4096;
        View view(parseLayout(layout, particleSchema(), extentsOf(n)));
        initParticles(view, n, 1);
        double sink = 0;
        for(auto _ : state)
        {
            for(std::uint64_t i = 0; i < n; ++i)
                for(std::size_t f = 0; f < nbody::kLeafCount; ++f)
                    sink += view.read(i, f).asFloat();
            benchmark::DoNotOptimize(sink);
        }
        state.SetItemsProcessed(state.iterations() * n * nbody::kLeafCount);
    }

    /// Load and store full 8-wide simdized records across the view.
    void simdLoadStore(benchmark::State& state, const std::string& layout)
    {
        constexpr std::uint64_t n = 4096;
        constexpr std::size_t w = 8;
        View view(parseLayout(layout, particleSchema(), extentsOf(n)));
        initParticles(view, n, 1);
        SimdizedRecord rec(particleSchema(), w);
        for(auto _ : state)
        {
            for(std::uint64_t i = 0; i < n; i += w)
            {
                loadSimd(view, i, rec);
                storeSimd(rec, view, i);
            }
            benchmark::DoNotOptimize(view.blobs()[0].data());
        }
        state.SetItemsProcessed(state.iterations() * n * nbody::kLeafCount);
    }

    /// Round trip one u32 leaf through a packed bit stream vs native width.
    void bitpackRoundTrip(benchmark::State& state, const std::string& layout)
    {
        constexpr std::uint64_t n = 16384;
        static const RecordSchema schema = RecordSchema::parse("Record{v: u32}");
        View view(parseLayout(layout, schema, extentsOf(n)));
        std::uint64_t sink = 0;
        for(auto _ : state)
        {
            for(std::uint64_t i = 0; i < n; ++i)
                view.write(i, 0, ScalarValue::of<std::uint32_t>(static_cast<std::uint32_t>(i & 0x3ff)));
            for(std::uint64_t i = 0; i < n; ++i)
                sink += view.read(i, 0).asUnsigned();
            benchmark::DoNotOptimize(sink);
        }
        state.SetItemsProcessed(state.iterations() * n * 2);
    }

    // ------------------------------------------------------------------------
    // n-body update step
    // ------------------------------------------------------------------------

    constexpr std::uint64_t kNBodyN = 1024;

    void nbodyManualAoS(benchmark::State& state)
    {
        auto ps = initManual(kNBodyN, 1);
        for(auto _ : state)
        {
            nbody::manualAoSUpdate(ps);
            benchmark::DoNotOptimize(ps.data());
        }
        state.SetItemsProcessed(state.iterations() * kNBodyN * kNBodyN);
    }

    void nbodyManualSoA(benchmark::State& state)
    {
        const auto src = initManual(kNBodyN, 1);
        nbody::ManualSoA<double> ps;
        for(const auto& p : src)
        {
            ps.posX.push_back(p.posX);
            ps.posY.push_back(p.posY);
            ps.posZ.push_back(p.posZ);
            ps.velX.push_back(p.velX);
            ps.velY.push_back(p.velY);
            ps.velZ.push_back(p.velZ);
            ps.mass.push_back(p.mass);
        }
        for(auto _ : state)
        {
            nbody::manualSoAUpdate(ps);
            benchmark::DoNotOptimize(ps.posX.data());
        }
        state.SetItemsProcessed(state.iterations() * kNBodyN * kNBodyN);
    }

    template<std::size_t W>
    void nbodyAffine(benchmark::State& state, const std::string& layout)
    {
        View view(parseLayout(layout, particleSchema(), extentsOf(kNBodyN)));
        initParticles(view, kNBodyN, 1);
        const nbody::AffineAccessor<double> acc(view);
        for(auto _ : state)
        {
            nbody::updateStep<double, W>(view, acc, kNBodyN);
            benchmark::DoNotOptimize(view.blobs()[0].data());
        }
        state.SetItemsProcessed(state.iterations() * kNBodyN * kNBodyN);
    }

    void nbodyAoSoANested(benchmark::State& state)
    {
        View view(parseLayout("aosoa:8", particleSchema(), extentsOf(kNBodyN)));
        initParticles(view, kNBodyN, 1);
        const auto& m = dynamic_cast<const AoSoAMapping&>(view.mapping());
        const nbody::AoSoAAccessor<double> acc(view, m);
        for(auto _ : state)
        {
            nbody::updateStepNested<double, 8>(view, acc, kNBodyN);
            benchmark::DoNotOptimize(view.blobs()[0].data());
        }
        state.SetItemsProcessed(state.iterations() * kNBodyN * kNBodyN);
    }
} // namespace

int main(int argc, char** argv)
{
    for(const char* layout : {"aos-packed", "aos-aligned", "soa-sb", "soa-mb", "aosoa:8"})
        benchmark::RegisterBenchmark((std::string("offsetResolve/") + layout).c_str(), offsetResolve, layout);
    for(const char* layout : {"aos-packed", "aos-aligned", "soa-sb", "soa-mb", "aosoa:8", "bytesplit:soa-mb"})
        benchmark::RegisterBenchmark((std::string("scalarFunnel/") + layout).c_str(), scalarFunnel, layout);
    for(const char* layout : {"aos-packed", "soa-mb", "aosoa:8"})
        benchmark::RegisterBenchmark((std::string("simdLoadStore/") + layout).c_str(), simdLoadStore, layout);
    for(const char* layout : {"soa-mb", "bitpack-int:11", "bitpack-int:32"})
        benchmark::RegisterBenchmark((std::string("bitpackRoundTrip/") + layout).c_str(), bitpackRoundTrip, layout);

    benchmark::RegisterBenchmark("nbodyUpdate/manual-aos", nbodyManualAoS);
    benchmark::RegisterBenchmark("nbodyUpdate/manual-soa", nbodyManualSoA);
    benchmark::RegisterBenchmark("nbodyUpdate/aos-packed/w1", nbodyAffine<1>, "aos-packed");
    benchmark::RegisterBenchmark("nbodyUpdate/soa-mb/w1", nbodyAffine<1>, "soa-mb");
    benchmark::RegisterBenchmark("nbodyUpdate/soa-mb/w8", nbodyAffine<8>, "soa-mb");
    benchmark::RegisterBenchmark("nbodyUpdate/aosoa:8/w8-nested", nbodyAoSoANested);

    benchmark::Initialize(&argc, argv);
    if(benchmark::ReportUnrecognizedArguments(argc, argv))
        return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
