#include <benchmark/benchmark.h>

// The distribution's static benchmark_main archive is LTO bytecode from a
// different compiler release, so the entry point is provided here.
BENCHMARK_MAIN();
