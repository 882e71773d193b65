// SPDX-License-Identifier: Apache-2.0
#include "runner.hpp"

#include "steps.hpp"

#include <lamina/instrument.hpp>
#include <lamina/layout_spec.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <type_traits>

namespace nbody
{
    namespace
    {
        struct InitValue
        {
            double posX, posY, posZ, mass;
        };

        /// Deterministic initial conditions: positions and masses uniform in
        /// [0,1), velocities zero. Draw order is fixed, so every layout and
        /// precision sees the same underlying doubles.
        std::vector<InitValue> drawInitValues(std::uint64_t seed, std::uint64_t n)
        {
            std::mt19937_64 gen(seed);
            const auto uniform = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
            std::vector<InitValue> values(n);
            for(auto& v : values)
            {
                v.posX = uniform();
                v.posY = uniform();
                v.posZ = uniform();
                v.mass = uniform();
            }
            return values;
        }

        template<typename T>
        void initView(lamina::View& view, const std::vector<InitValue>& values)
        {
            for(std::uint64_t i = 0; i < values.size(); ++i)
            {
                view.write(i, kPosX, lamina::ScalarValue::of<T>(static_cast<T>(values[i].posX)));
                view.write(i, kPosY, lamina::ScalarValue::of<T>(static_cast<T>(values[i].posY)));
                view.write(i, kPosZ, lamina::ScalarValue::of<T>(static_cast<T>(values[i].posZ)));
                view.write(i, kVelX, lamina::ScalarValue::of<T>(T{0}));
                view.write(i, kVelY, lamina::ScalarValue::of<T>(T{0}));
                view.write(i, kVelZ, lamina::ScalarValue::of<T>(T{0}));
                view.write(i, kMass, lamina::ScalarValue::of<T>(static_cast<T>(values[i].mass)));
            }
        }

        /// Sum of all position components, accumulated in double in index
        /// order.
        double checksumView(const lamina::View& view, std::uint64_t n)
        {
            double sum = 0;
            for(std::uint64_t i = 0; i < n; ++i)
            {
                sum += view.read(i, kPosX).asFloat();
                sum += view.read(i, kPosY).asFloat();
                sum += view.read(i, kPosZ).asFloat();
            }
            return sum;
        }

        double median(std::vector<double> samples)
        {
            std::sort(samples.begin(), samples.end());
            const std::size_t mid = samples.size() / 2;
            if(samples.size() % 2 == 1)
                return samples[mid];
            return (samples[mid - 1] + samples[mid]) / 2;
        }

        double now()
        {
            return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
        }

        void writeCsv(const BenchConfig& cfg, double updateSecs, double moveSecs, double checksum)
        {
            std::ostringstream rows;
            rows.precision(17);
            rows << "layout,phase,simd_width,seconds_per_step,checksum\n";
            rows << cfg.layout << ",update," << cfg.simdWidth << ',' << updateSecs << ',' << checksum << '\n';
            rows << cfg.layout << ",move," << cfg.simdWidth << ',' << moveSecs << ',' << checksum << '\n';
            std::cout << rows.str();
            if(!cfg.csvPath.empty())
            {
                std::ofstream out(cfg.csvPath);
                if(!out)
                    throw std::runtime_error("cannot write " + cfg.csvPath);
                out << rows.str();
            }
        }

        int usageError(const std::string& message)
        {
            std::cerr << "error: " << message << '\n';
            return 2;
        }

        enum class AccessorKind
        {
            Affine,
            AoSoA,
            AoSoANested,
            Funnel
        };

        template<typename T, std::size_t W>
        void runUpdate(lamina::View& view, AccessorKind kind, std::uint64_t n)
        {
            switch(kind)
            {
            case AccessorKind::Affine:
            {
                const AffineAccessor<T> acc(view);
                updateStep<T, W>(view, acc, n);
                return;
            }
            case AccessorKind::AoSoA:
            {
                const auto& m = dynamic_cast<const lamina::AoSoAMapping&>(view.mapping());
                const AoSoAAccessor<T> acc(view, m);
                updateStep<T, W>(view, acc, n);
                return;
            }
            case AccessorKind::AoSoANested:
            {
                const auto& m = dynamic_cast<const lamina::AoSoAMapping&>(view.mapping());
                const AoSoAAccessor<T> acc(view, m);
                updateStepNested<T, W>(view, acc, n);
                return;
            }
            case AccessorKind::Funnel:
            {
                const FunnelAccessor<T> acc(view);
                updateStep<T, W>(view, acc, n);
                return;
            }
            }
        }

        template<typename T, std::size_t W>
        void runStep(lamina::View& view, AccessorKind kind, std::uint64_t n, bool update)
        {
            if(update)
                runUpdate<T, W>(view, kind, n);
            else
                moveStep<T, W>(view, n);
        }

        template<typename T>
        void runStepWidth(lamina::View& view, AccessorKind kind, std::size_t width, std::uint64_t n, bool update)
        {
            switch(width)
            {
            case 1:
                runStep<T, 1>(view, kind, n, update);
                return;
            case 2:
                runStep<T, 2>(view, kind, n, update);
                return;
            case 4:
                runStep<T, 4>(view, kind, n, update);
                return;
            case 8:
                runStep<T, 8>(view, kind, n, update);
                return;
            case 16:
                runStep<T, 16>(view, kind, n, update);
                return;
            default:
                throw std::invalid_argument("unsupported simd width");
            }
        }

        void accumulate(lamina::FieldAccessCounters& total, const lamina::FieldAccessCounters& delta)
        {
            total.reads.resize(delta.reads.size(), 0);
            total.writes.resize(delta.writes.size(), 0);
            for(std::size_t f = 0; f < delta.reads.size(); ++f)
                total.reads[f] += delta.reads[f];
            for(std::size_t f = 0; f < delta.writes.size(); ++f)
                total.writes[f] += delta.writes[f];
        }

        void accumulateBlocks(
            std::vector<std::vector<std::uint64_t>>& total,
            const lamina::Heatmap& heatmap)
        {
            total.resize(heatmap.blobCount());
            for(std::size_t nr = 0; nr < heatmap.blobCount(); ++nr)
            {
                total[nr].resize(heatmap.blockCount(nr), 0);
                for(std::size_t b = 0; b < heatmap.blockCount(nr); ++b)
                    total[nr][b] += heatmap.blockCounter(nr, b);
            }
        }

        void writeFieldsReport(
            const std::filesystem::path& path,
            const lamina::RecordSchema& schema,
            const lamina::FieldAccessCounters& counters)
        {
            std::ofstream out(path);
            if(!out)
                throw std::runtime_error("cannot write " + path.string());
            lamina::writeFieldAccessCsv(out, schema, counters);
        }

        void writeHeatmapReport(
            const std::filesystem::path& path,
            std::size_t granularity,
            const std::vector<std::vector<std::uint64_t>>& blocks)
        {
            std::ofstream out(path);
            if(!out)
                throw std::runtime_error("cannot write " + path.string());
            for(std::size_t nr = 0; nr < blocks.size(); ++nr)
            {
                out << "# blob " << nr << '\n';
                out << "blockIndex,byteStart,count\n";
                for(std::size_t b = 0; b < blocks[nr].size(); ++b)
                    out << b << ',' << b * granularity << ',' << blocks[nr][b] << '\n';
            }
        }

        template<typename T>
        int runManual(const BenchConfig& cfg)
        {
            if(cfg.simdWidth != 1)
                return usageError("manual baselines support --simd-width 1 only");
            if(cfg.traceFields || cfg.heatmapGranularity != 0)
                return usageError("manual baselines have no mapping to instrument");
            const bool aos = cfg.layout == "manual-aos";
            const auto values = drawInitValues(cfg.seed, cfg.n);

            std::vector<ManualParticle<T>> aosData;
            ManualSoA<T> soaData;
            if(aos)
            {
                aosData.resize(cfg.n);
                for(std::uint64_t i = 0; i < cfg.n; ++i)
                    aosData[i] = ManualParticle<T>{
                        static_cast<T>(values[i].posX),
                        static_cast<T>(values[i].posY),
                        static_cast<T>(values[i].posZ),
                        T{0},
                        T{0},
                        T{0},
                        static_cast<T>(values[i].mass)};
            }
            else
            {
                for(auto* v : {&soaData.posX, &soaData.posY, &soaData.posZ, &soaData.velX, &soaData.velY,
                               &soaData.velZ, &soaData.mass})
                    v->resize(cfg.n);
                for(std::uint64_t i = 0; i < cfg.n; ++i)
                {
                    soaData.posX[i] = static_cast<T>(values[i].posX);
                    soaData.posY[i] = static_cast<T>(values[i].posY);
                    soaData.posZ[i] = static_cast<T>(values[i].posZ);
                    soaData.mass[i] = static_cast<T>(values[i].mass);
                }
            }

            // warmup on a copy, then measure from the pristine state
            {
                auto aosCopy = aosData;
                auto soaCopy = soaData;
                if(aos)
                {
                    manualAoSUpdate(aosCopy);
                    manualAoSMove(aosCopy);
                }
                else
                {
                    manualSoAUpdate(soaCopy);
                    manualSoAMove(soaCopy);
                }
            }

            std::vector<double> updateTimes, moveTimes;
            for(std::uint64_t s = 0; s < cfg.steps; ++s)
            {
                double t0 = now();
                aos ? manualAoSUpdate(aosData) : manualSoAUpdate(soaData);
                double t1 = now();
                aos ? manualAoSMove(aosData) : manualSoAMove(soaData);
                double t2 = now();
                updateTimes.push_back(t1 - t0);
                moveTimes.push_back(t2 - t1);
            }

            double checksum = 0;
            if(aos)
                for(const auto& p : aosData)
                {
                    checksum += static_cast<double>(p.posX);
                    checksum += static_cast<double>(p.posY);
                    checksum += static_cast<double>(p.posZ);
                }
            else
                for(std::uint64_t i = 0; i < cfg.n; ++i)
                {
                    checksum += static_cast<double>(soaData.posX[i]);
                    checksum += static_cast<double>(soaData.posY[i]);
                    checksum += static_cast<double>(soaData.posZ[i]);
                }

            writeCsv(cfg, median(updateTimes), median(moveTimes), checksum);
            return 0;
        }

        template<typename T>
        int runView(const BenchConfig& cfg)
        {
            const lamina::RecordSchema schema = lamina::RecordSchema::parse(
                std::is_same_v<T, float>
                    ? "Record{Pos: Record{x: f32, y: f32, z: f32}, Vel: Record{x: f32, y: f32, z: f32}, Mass: f32}"
                    : "Record{Pos: Record{x: f64, y: f64, z: f64}, Vel: Record{x: f64, y: f64, z: f64}, Mass: f64}");
            const lamina::ArrayExtents extents(lamina::IndexType::I64, {cfg.n}, {});

            lamina::MappingPtr mapping;
            try
            {
                mapping = lamina::parseLayout(cfg.layout, schema, extents);
            }
            catch(const std::exception& e)
            {
                return usageError("invalid layout '" + cfg.layout + "': " + e.what());
            }

            std::shared_ptr<const lamina::FieldAccessCount> trace;
            std::shared_ptr<const lamina::Heatmap> heatmap;
            if(cfg.traceFields)
            {
                trace = std::make_shared<const lamina::FieldAccessCount>(mapping);
                mapping = trace;
            }
            if(cfg.heatmapGranularity != 0)
            {
                heatmap = std::make_shared<const lamina::Heatmap>(mapping, cfg.heatmapGranularity);
                mapping = heatmap;
            }

            AccessorKind kind = AccessorKind::Funnel;
            if(trace == nullptr && heatmap == nullptr)
            {
                if(dynamic_cast<const lamina::AoSMapping*>(mapping.get()) != nullptr
                   || dynamic_cast<const lamina::SoAMapping*>(mapping.get()) != nullptr)
                    kind = AccessorKind::Affine;
                else if(dynamic_cast<const lamina::AoSoAMapping*>(mapping.get()) != nullptr)
                    kind = cfg.aosoaNested ? AccessorKind::AoSoANested : AccessorKind::AoSoA;
            }
            if(cfg.aosoaNested && kind != AccessorKind::AoSoANested)
                return usageError("--aosoa-nested requires an uninstrumented aosoa:<L> layout");

            const auto values = drawInitValues(cfg.seed, cfg.n);
            lamina::View view(mapping);
            initView<T>(view, values);

            // warmup on a separate uninstrumented view of the same layout;
            // instrumented runs warm up through the funnel path they measure
            {
                lamina::View warm(lamina::parseLayout(cfg.layout, schema, extents));
                initView<T>(warm, values);
                runStepWidth<T>(warm, kind, cfg.simdWidth, cfg.n, true);
                runStepWidth<T>(warm, kind, cfg.simdWidth, cfg.n, false);
            }

            if(trace != nullptr)
                trace->reset();
            if(heatmap != nullptr)
                heatmap->reset();

            lamina::FieldAccessCounters updateCounters, moveCounters;
            std::vector<std::vector<std::uint64_t>> updateBlocks, moveBlocks;
            std::vector<double> updateTimes, moveTimes;
            for(std::uint64_t s = 0; s < cfg.steps; ++s)
            {
                const double t0 = now();
                runStepWidth<T>(view, kind, cfg.simdWidth, cfg.n, true);
                const double t1 = now();
                updateTimes.push_back(t1 - t0);
                if(trace != nullptr)
                {
                    accumulate(updateCounters, trace->counters());
                    trace->reset();
                }
                if(heatmap != nullptr)
                {
                    accumulateBlocks(updateBlocks, *heatmap);
                    heatmap->reset();
                }

                const double t2 = now();
                runStepWidth<T>(view, kind, cfg.simdWidth, cfg.n, false);
                const double t3 = now();
                moveTimes.push_back(t3 - t2);
                if(trace != nullptr)
                {
                    accumulate(moveCounters, trace->counters());
                    trace->reset();
                }
                if(heatmap != nullptr)
                {
                    accumulateBlocks(moveBlocks, *heatmap);
                    heatmap->reset();
                }
            }

            const double checksum = checksumView(view, cfg.n);
            writeCsv(cfg, median(updateTimes), median(moveTimes), checksum);

            const std::filesystem::path reportDir(cfg.reportDir);
            if(trace != nullptr)
            {
                writeFieldsReport(reportDir / "fields_update.csv", schema, updateCounters);
                writeFieldsReport(reportDir / "fields_move.csv", schema, moveCounters);
            }
            if(heatmap != nullptr)
            {
                writeHeatmapReport(reportDir / "heatmap_update.csv", cfg.heatmapGranularity, updateBlocks);
                writeHeatmapReport(reportDir / "heatmap_move.csv", cfg.heatmapGranularity, moveBlocks);
            }
            return 0;
        }
    } // namespace

    int runBenchmark(const BenchConfig& cfg)
    {
        if(cfg.n < 1)
            return usageError("--n must be >= 1");
        if(cfg.steps < 1)
            return usageError("--steps must be >= 1");
        if(cfg.simdWidth != 1 && cfg.simdWidth != 2 && cfg.simdWidth != 4 && cfg.simdWidth != 8
           && cfg.simdWidth != 16)
            return usageError("--simd-width must be one of 1, 2, 4, 8, 16");
        if(cfg.n % cfg.simdWidth != 0)
            return usageError("--n must be a multiple of --simd-width");
        if(cfg.precision != "f32" && cfg.precision != "f64")
            return usageError("--precision must be f32 or f64");

        try
        {
            if(cfg.layout == "manual-aos" || cfg.layout == "manual-soa")
                return cfg.precision == "f32" ? runManual<float>(cfg) : runManual<double>(cfg);
            return cfg.precision == "f32" ? runView<float>(cfg) : runView<double>(cfg);
        }
        catch(const std::exception& e)
        {
            std::cerr << "error: " << e.what() << '\n';
            return 1;
        }
    }
} // namespace nbody
