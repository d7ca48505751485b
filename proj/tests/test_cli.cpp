#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pdmatch/bench.hpp"
#include "pdmatch/errors.hpp"
#include "pdmatch/generate.hpp"

using namespace pdm;

namespace {

struct Outcome {
    int status = -1;
    std::string out;
};

Outcome run(const std::string& args)
{
    const std::string command = std::string(PDMATCH_CLI) + " " + args + " 2>/dev/null";
    Outcome result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    std::size_t got;
    while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, got);
    const int raw = pclose(pipe);
    result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return result;
}

std::filesystem::path scratch()
{
    static const auto dir = [] {
        auto d = std::filesystem::temp_directory_path() / ("pdmatch-test-" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& text)
{
    const auto path = scratch() / name;
    std::ofstream(path) << text;
    return path.string();
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("generator statistics")
{
    const double s = 100.0;
    const auto d = gen_normal(20000, s, 7);
    REQUIRE(d.size() == 20000);
    double persistence = 0.0;
    double midpoint = 0.0;
    for (const auto& p : d.points()) {
        CHECK(p.birth <= p.death);
        CHECK(p.mass == 1);
        persistence += p.death - p.birth;
        midpoint += (p.birth + p.death) / 2;
    }
    persistence /= 20000.0;
    midpoint /= 20000.0;
    const double expect = s * std::sqrt(2.0 / std::numbers::pi);
    CHECK(std::abs(persistence - expect) < 0.1 * expect);
    CHECK(std::abs(midpoint - s / 2) < 0.05 * s);

    const auto massed = gen_massed(20000, s, 10, 8);
    double mean = 0.0;
    for (const auto& p : massed.points()) {
        CHECK(p.mass >= 5);
        CHECK(p.mass <= 15);
        mean += static_cast<double>(p.mass);
    }
    mean /= 20000.0;
    CHECK(std::abs(mean - 10.0) < 0.5);
    const auto unit = gen_massed(500, s, 1, 9);
    for (const auto& p : unit.points()) CHECK(p.mass == 1);

    CHECK(gen_normal(100, s, 3) == gen_normal(100, s, 3));
    CHECK_FALSE(gen_normal(100, s, 3) == gen_normal(100, s, 4));
    CHECK_THROWS_AS(gen_massed(0, s, 1, 1), InvalidParameter);
    CHECK_THROWS_AS(gen_massed(10, 0.0, 1, 1), InvalidParameter);
    CHECK_THROWS_AS(gen_massed(10, s, 0, 1), InvalidParameter);
}

TEST_CASE("bench CSV round trip")
{
    std::vector<BenchRecord> records{
        {"bottleneck", "geometric", 1000, std::numeric_limits<double>::infinity(), 0.01, 0.125, 1 << 20, 3.5, 7},
        {"wasserstein", "masses", 20, 2.0, 0.05, 1e-5, 0, 0.1, 1234567890123ULL},
    };
    std::ostringstream out;
    write_bench_csv(out, records);
    CHECK(out.str().rfind(kBenchHeader, 0) == 0);
    CHECK(out.str().find(",inf,") != std::string::npos);
    std::istringstream in(out.str());
    CHECK(parse_bench_csv(in) == records);

    std::istringstream bad(std::string(kBenchHeader) + "\nwasserstein,geometric,ten,1,0.01,1,1,1,1\n");
    try {
        parse_bench_csv(bad);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("fit_exponent recovers a power law")
{
    std::vector<std::pair<double, double>> pts;
    for (const double n : {100.0, 1000.0, 10000.0}) pts.emplace_back(n, 3e-7 * std::pow(n, 1.5));
    CHECK(fit_exponent(pts) == doctest::Approx(1.5).epsilon(1e-9));
    CHECK_THROWS(fit_exponent({{10.0, 1.0}}));
}

TEST_CASE("time_distance runs every engine")
{
    const auto x = gen_normal(30, 100, 1);
    const auto y = gen_normal(30, 100, 2);
    const auto a = time_distance("bottleneck", "geometric", x, y, 0.0, 0.01);
    const auto b = time_distance("bottleneck", "nongeometric", x, y, 0.0, 0.01);
    CHECK(a.result == b.result);
    CHECK(a.seconds >= 0.0);
    const auto w1 = time_distance("wasserstein", "geometric", x, y, 1.0, 0.01);
    const auto w2 = time_distance("wasserstein", "lazyheap", x, y, 1.0, 0.01);
    const auto w3 = time_distance("wasserstein", "masses", x, y, 1.0, 0.01);
    CHECK(w1.result == w2.result);
    CHECK(w3.result == doctest::Approx(w1.result).epsilon(0.011));
    CHECK_THROWS_AS(time_distance("wasserstein", "nongeometric", x, y, 1.0, 0.01), InvalidParameter);
}

TEST_CASE("command line")
{
    const auto a = write_file("a.txt", "0 2\n");
    const auto b = write_file("b.txt", "0 4\n");
    const auto broken = write_file("broken.txt", "1 2\n5 3\n");

    SUBCASE("distances")
    {
        const auto exact = run("bottleneck " + a + " " + b + " --exact");
        CHECK(exact.status == 0);
        CHECK(exact.out == "2\n");
        const auto approx = run("bottleneck " + a + " " + b + " --engine nongeometric");
        CHECK(approx.status == 0);
        const double v = std::stod(approx.out);
        CHECK(v >= 2.0);
        CHECK(v < 2.02);
        const auto same = run("wasserstein " + a + " " + a);
        CHECK(same.status == 0);
        CHECK(same.out == "0\n");
        for (const std::string engine : {"geometric", "lazyheap", "masses"}) {
            const auto w = run("wasserstein " + a + " " + b + " --q 2 --engine " + engine);
            CHECK(w.status == 0);
            const double d = std::stod(w.out);
            CHECK(d >= 2.0);
            CHECK(d < 2.02);
        }
    }
    SUBCASE("errors")
    {
        CHECK(run("wasserstein " + broken + " " + a).status == 1);
        CHECK(run("wasserstein " + a + " " + (scratch() / "missing.txt").string()).status == 1);
        CHECK(run("wasserstein " + a + " " + b + " --q 0.5").status == 2);
        CHECK(run("wasserstein " + a + " " + b + " --delta 2").status == 2);
        CHECK(run("bottleneck " + a + " " + b + " --bogus").status == 2);
        CHECK(run("").status != 0);
    }
    SUBCASE("gen is deterministic")
    {
        const auto one = (scratch() / "g1.txt").string();
        const auto two = (scratch() / "g2.txt").string();
        CHECK(run("gen --n 200 --s 50 --k 3 --seed 11 -o " + one).status == 0);
        CHECK(run("gen --n 200 --s 50 --k 3 --seed 11 -o " + two).status == 0);
        const auto text = slurp(one);
        CHECK_FALSE(text.empty());
        CHECK(text == slurp(two));
        CHECK(parse_diagram(text) == gen_massed(200, 50, 3, 11));
        CHECK(run("gen --n 0 -o " + one).status == 2);
    }
    SUBCASE("bench writes a CSV")
    {
        const auto csv = (scratch() / "bench.csv").string();
        CHECK(run("bench --sizes 10,20 --reps 2 --q 1,2 -o " + csv).status == 0);
        std::ifstream in(csv);
        const auto records = parse_bench_csv(in);
        // Per size and rep: 2 bottleneck engines + 3 auction engines x 2 exponents.
        CHECK(records.size() == 2 * 2 * (2 + 3 * 2));
    }
}
