#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pdmatch/diagram.hpp"

namespace pdm {

inline constexpr const char* kBenchHeader = "algorithm,engine,n,q,delta,seconds,peak_bytes,result,seed";

struct BenchRecord {
    std::string algorithm;  // "bottleneck" or "wasserstein"
    std::string engine;     // "geometric", "nongeometric", "lazyheap" or "masses"
    std::size_t n = 0;
    double q = 0.0;  // infinity for the bottleneck distance
    double delta = 0.0;
    double seconds = 0.0;
    std::uint64_t peak_bytes = 0;
    double result = 0.0;
    std::uint64_t seed = 0;

    friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);
/// Throws ParseError (with the line number) on malformed rows.
std::vector<BenchRecord> parse_bench_csv(std::istream& in);

struct BenchConfig {
    std::vector<std::size_t> sizes;
    int reps = 10;
    std::vector<double> qs{1.0};
    std::vector<std::string> engines{"geometric", "nongeometric", "lazyheap", "masses"};
    double delta = 0.01;
    double scale = 100.0;
    std::int64_t k = 1;
    std::uint64_t seed = 1;
};

struct TimedRun {
    double seconds = 0.0;
    double result = 0.0;
};

/// Runs one distance computation and measures its wall time only.
/// algorithm "bottleneck" is the delta-approximate search (upper end of the
/// interval); engines "geometric"/"nongeometric". algorithm "wasserstein"
/// takes engines "geometric"/"lazyheap"/"masses".
TimedRun time_distance(const std::string& algorithm, const std::string& engine, const PersistenceDiagram& x,
                       const PersistenceDiagram& y, double q, double delta);

/// Generates `reps` instance pairs per size and times every applicable
/// (algorithm, engine, q) combination on each. Progress goes to `log` if given.
std::vector<BenchRecord> run_bench(const BenchConfig& config, std::ostream* log = nullptr);

/// Peak resident set size of this process, or 0 when unavailable.
std::uint64_t peak_memory_bytes();

/// Least-squares slope of log(seconds) against log(n).
double fit_exponent(const std::vector<std::pair<double, double>>& n_seconds);

}  // namespace pdm
