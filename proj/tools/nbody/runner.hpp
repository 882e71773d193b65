// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

namespace nbody
{
    struct BenchConfig
    {
        std::string layout = "aos-packed"; // layout grammar name, or manual-aos / manual-soa
        std::uint64_t n = 16384;
        std::uint64_t steps = 5;
        std::size_t simdWidth = 1;
        std::string precision = "f64";
        std::uint64_t seed = 42;
        bool traceFields = false;
        std::size_t heatmapGranularity = 0; // 0 disables the heatmap
        bool aosoaNested = false;
        std::string csvPath; // empty writes CSV to stdout only
        std::string reportDir = ".";
    };

    /// Runs the benchmark; returns the process exit code (0 ok, 2 usage
    /// error). CSV rows: layout,phase,simd_width,seconds_per_step,checksum.
    int runBenchmark(const BenchConfig& cfg);
} // namespace nbody
