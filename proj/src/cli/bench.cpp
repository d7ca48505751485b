#include "pdmatch/bench.hpp"

#include <sys/resource.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "pdmatch/auction.hpp"
#include "pdmatch/bottleneck.hpp"
#include "pdmatch/errors.hpp"
#include "pdmatch/generate.hpp"
#include "pdmatch/masses.hpp"

namespace pdm {

namespace {

std::string format_q(double q)
{
    return std::isinf(q) ? std::string("inf") : format_double(q);
}

template <class T>
T parse_field(std::string_view field, std::size_t line)
{
    T value{};
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || end != field.data() + field.size())
        throw ParseError(line, "malformed number '" + std::string(field) + "'");
    return value;
}

bool is_bottleneck_engine(const std::string& engine) { return engine == "geometric" || engine == "nongeometric"; }
bool is_wasserstein_engine(const std::string& engine)
{
    return engine == "geometric" || engine == "lazyheap" || engine == "masses";
}

}  // namespace

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records)
{
    out << kBenchHeader << '\n';
    for (const BenchRecord& r : records) {
        out << r.algorithm << ',' << r.engine << ',' << r.n << ',' << format_q(r.q) << ',' << format_double(r.delta)
            << ',' << format_double(r.seconds) << ',' << r.peak_bytes << ',' << format_double(r.result) << ','
            << r.seed << '\n';
    }
}

std::vector<BenchRecord> parse_bench_csv(std::istream& in)
{
    std::vector<BenchRecord> records;
    std::string text;
    std::size_t line = 0;
    bool header = true;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.empty()) continue;
        if (header) {
            if (text != kBenchHeader) throw ParseError(line, "unexpected CSV header");
            header = false;
            continue;
        }
        std::vector<std::string_view> fields;
        std::string_view rest(text);
        for (;;) {
            const auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != 9) throw ParseError(line, "expected 9 fields");
        BenchRecord r;
        r.algorithm = std::string(fields[0]);
        r.engine = std::string(fields[1]);
        r.n = parse_field<std::size_t>(fields[2], line);
        r.q = fields[3] == "inf" ? std::numeric_limits<double>::infinity() : parse_field<double>(fields[3], line);
        r.delta = parse_field<double>(fields[4], line);
        r.seconds = parse_field<double>(fields[5], line);
        r.peak_bytes = parse_field<std::uint64_t>(fields[6], line);
        r.result = parse_field<double>(fields[7], line);
        r.seed = parse_field<std::uint64_t>(fields[8], line);
        records.push_back(std::move(r));
    }
    if (header) throw ParseError(line, "missing CSV header");
    return records;
}

TimedRun time_distance(const std::string& algorithm, const std::string& engine, const PersistenceDiagram& x,
                       const PersistenceDiagram& y, double q, double delta)
{
    using clock = std::chrono::steady_clock;
    TimedRun run;
    const auto start = clock::now();
    if (algorithm == "bottleneck") {
        BottleneckOptions options;
        if (engine == "geometric") options.engine = BottleneckEngine::Geometric;
        else if (engine == "nongeometric") options.engine = BottleneckEngine::NonGeometric;
        else throw InvalidParameter("unknown bottleneck engine '" + engine + "'");
        run.result = approx_bottleneck(x, y, delta, options).upper;
    } else if (algorithm == "wasserstein") {
        if (engine == "masses") {
            run.result = wasserstein_masses(x, y, q, delta);
        } else {
            AuctionOptions options;
            if (engine == "geometric") options.engine = AuctionEngine::Geometric;
            else if (engine == "lazyheap") options.engine = AuctionEngine::LazyHeap;
            else throw InvalidParameter("unknown wasserstein engine '" + engine + "'");
            run.result = wasserstein(x, y, q, delta, options);
        }
    } else {
        throw InvalidParameter("unknown algorithm '" + algorithm + "'");
    }
    run.seconds = std::chrono::duration<double>(clock::now() - start).count();
    return run;
}

std::vector<BenchRecord> run_bench(const BenchConfig& config, std::ostream* log)
{
    if (config.reps < 1) throw InvalidParameter("reps must be >= 1");
    for (const auto& engine : config.engines)
        if (!is_bottleneck_engine(engine) && !is_wasserstein_engine(engine))
            throw InvalidParameter("unknown engine '" + engine + "'");

    std::vector<BenchRecord> records;
    for (const std::size_t n : config.sizes) {
        for (int rep = 0; rep < config.reps; ++rep) {
            const std::uint64_t seed = config.seed * 1000003ULL + n * 1009ULL + static_cast<std::uint64_t>(rep);
            const auto x = gen_massed(n, config.scale, config.k, 2 * seed);
            const auto y = gen_massed(n, config.scale, config.k, 2 * seed + 1);
            const auto record = [&](const std::string& algorithm, const std::string& engine, double q) {
                const TimedRun run = time_distance(algorithm, engine, x, y, q, config.delta);
                BenchRecord r{algorithm, engine, n, q, config.delta, run.seconds,
                              peak_memory_bytes(), run.result, seed};
                if (log)
                    *log << algorithm << ' ' << engine << " n=" << n << " q=" << format_q(q) << " rep=" << rep
                         << " " << format_double(run.seconds) << "s\n";
                records.push_back(std::move(r));
            };
            for (const auto& engine : config.engines)
                if (is_bottleneck_engine(engine))
                    record("bottleneck", engine, std::numeric_limits<double>::infinity());
            for (const double q : config.qs)
                for (const auto& engine : config.engines)
                    if (is_wasserstein_engine(engine)) record("wasserstein", engine, q);
        }
    }
    return records;
}

std::uint64_t peak_memory_bytes()
{
    rusage usage{};
    if (getrusage(RUSAGE_SELF, &usage) != 0) return 0;
    return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024ULL;
}

double fit_exponent(const std::vector<std::pair<double, double>>& n_seconds)
{
    if (n_seconds.size() < 2) throw InvalidParameter("fitting an exponent needs at least two sizes");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [n, t] : n_seconds) {
        if (!(n > 0.0) || !(t > 0.0)) throw InvalidParameter("sizes and times must be positive");
        const double lx = std::log(n);
        const double ly = std::log(t);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const auto m = static_cast<double>(n_seconds.size());
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) throw InvalidParameter("fitting an exponent needs two distinct sizes");
    return (m * sxy - sx * sy) / denom;
}

}  // namespace pdm
