#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pdmatch/auction.hpp"
#include "pdmatch/bench.hpp"
#include "pdmatch/bottleneck.hpp"
#include "pdmatch/errors.hpp"
#include "pdmatch/generate.hpp"
#include "pdmatch/masses.hpp"

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

pdm::PersistenceDiagram load(const std::string& path)
{
    try {
        return pdm::read_diagram_file(path);
    } catch (const pdm::ParseError& e) {
        throw std::runtime_error(path + ":" + std::to_string(e.line()) + ": " + e.message());
    }
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bottleneck and Wasserstein distances between persistence diagrams"};
    app.require_subcommand(1);

    std::string file_a, file_b;
    double delta = 0.01;

    auto* bottleneck = app.add_subcommand("bottleneck", "bottleneck distance");
    bool exact = false;
    std::string b_engine = "geometric";
    bottleneck->add_option("fileA", file_a)->required();
    bottleneck->add_option("fileB", file_b)->required();
    bottleneck->add_option("--delta", delta, "relative error")->check(CLI::Range(0.0, 1.0));
    bottleneck->add_flag("--exact", exact, "refine to the exact distance");
    bottleneck->add_option("--engine", b_engine)->check(CLI::IsMember({"geometric", "nongeometric"}));

    auto* wasserstein = app.add_subcommand("wasserstein", "q-Wasserstein distance");
    double q = 1.0;
    std::string w_engine = "geometric";
    std::optional<std::uint64_t> w_seed;
    wasserstein->add_option("fileA", file_a)->required();
    wasserstein->add_option("fileB", file_b)->required();
    wasserstein->add_option("--q", q, "exponent, >= 1");
    wasserstein->add_option("--delta", delta, "relative error")->check(CLI::Range(0.0, 1.0));
    wasserstein->add_option("--engine", w_engine)->check(CLI::IsMember({"geometric", "lazyheap", "masses"}));
    wasserstein->add_option("--seed", w_seed, "shuffle the bidder order with this seed");

    auto* gen = app.add_subcommand("gen", "generate a random diagram");
    std::size_t gen_n = 0;
    double gen_s = 100.0;
    std::int64_t gen_k = 1;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--n", gen_n, "number of points")->required();
    gen->add_option("--s", gen_s, "scale");
    gen->add_option("--k", gen_k, "average mass");
    gen->add_option("--seed", gen_seed);
    gen->add_option("-o", gen_out, "output file")->required();

    auto* bench = app.add_subcommand("bench", "time the engines on generated instances");
    pdm::BenchConfig config;
    std::string bench_out;
    bench->add_option("--sizes", config.sizes, "comma-separated sizes")->required()->delimiter(',');
    bench->add_option("--reps", config.reps);
    bench->add_option("--q", config.qs, "comma-separated exponents")->delimiter(',');
    bench->add_option("--engines", config.engines, "geometric,nongeometric,lazyheap,masses")
        ->delimiter(',')
        ->check(CLI::IsMember({"geometric", "nongeometric", "lazyheap", "masses"}));
    bench->add_option("--delta", config.delta)->check(CLI::Range(0.0, 1.0));
    bench->add_option("--s", config.scale);
    bench->add_option("--k", config.k);
    bench->add_option("--seed", config.seed);
    bench->add_option("-o", bench_out, "output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (*bottleneck) {
            const auto x = load(file_a);
            const auto y = load(file_b);
            pdm::BottleneckOptions options;
            options.engine = b_engine == "geometric" ? pdm::BottleneckEngine::Geometric
                                                     : pdm::BottleneckEngine::NonGeometric;
            const double d = exact ? pdm::exact_bottleneck(x, y, delta, options)
                                   : pdm::approx_bottleneck(x, y, delta, options).upper;
            std::cout << pdm::format_double(d) << '\n';
        } else if (*wasserstein) {
            const auto x = load(file_a);
            const auto y = load(file_b);
            double d;
            if (w_engine == "masses") {
                pdm::MassAuctionOptions options;
                if (w_seed) options.seed = *w_seed;
                d = pdm::wasserstein_masses(x, y, q, delta, options);
            } else {
                pdm::AuctionOptions options;
                options.engine = w_engine == "geometric" ? pdm::AuctionEngine::Geometric : pdm::AuctionEngine::LazyHeap;
                options.shuffle_seed = w_seed;
                d = pdm::wasserstein(x, y, q, delta, options);
            }
            std::cout << pdm::format_double(d) << '\n';
        } else if (*gen) {
            const auto diagram = pdm::gen_massed(gen_n, gen_s, gen_k, gen_seed);
            auto out = open_output(gen_out);
            pdm::write_diagram(out, diagram);
        } else if (*bench) {
            const auto records = pdm::run_bench(config, &std::cerr);
            auto out = open_output(bench_out);
            pdm::write_bench_csv(out, records);
        }
    } catch (const pdm::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
