// SPDX-License-Identifier: Apache-2.0
#include "runner.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv)
{
    nbody::BenchConfig cfg;
    CLI::App app{"All-pairs n-body benchmark over exchangeable memory layouts"};
    app.add_option("--layout", cfg.layout, "Layout name (layout grammar, or manual-aos / manual-soa)");
    app.add_option("--n", cfg.n, "Number of particles (default 16384)");
    app.add_option("--steps", cfg.steps, "Simulation steps (default 5)");
    app.add_option("--simd-width", cfg.simdWidth, "Batch width: 1, 2, 4, 8 or 16 (default 1)");
    app.add_option("--precision", cfg.precision, "Floating point precision: f32 or f64 (default f64)");
    app.add_option("--seed", cfg.seed, "Random seed for initial conditions (default 42)");
    app.add_flag("--trace-fields", cfg.traceFields, "Count per-field reads and writes, report per phase");
    app.add_option("--heatmap", cfg.heatmapGranularity, "Count per-block storage accesses at this byte granularity");
    app.add_flag("--aosoa-nested", cfg.aosoaNested, "Traverse aosoa blocks with nested block/lane loops");
    app.add_option("--csv", cfg.csvPath, "Write the timing CSV to this path (always printed to stdout)");
    app.add_option("--report-dir", cfg.reportDir, "Directory for instrumentation reports (default .)");

    try
    {
        app.parse(argc, argv);
    }
    catch(const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return nbody::runBenchmark(cfg);
}
