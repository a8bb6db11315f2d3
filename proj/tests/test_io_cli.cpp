#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "jumpga/cli.hpp"
#include "jumpga/error.hpp"
#include "jumpga/experiments.hpp"
#include "jumpga/io.hpp"

using namespace jumpga;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("jumpga_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
        ++count;
    }
    return count;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, sep)) {
        out.push_back(cell);
    }
    return out;
}

cli::CliInvocation parse(std::vector<std::string> args, cli::Environment env = {}) {
    return cli::parse_cli(args, env);
}

TelemetrySeries small_series() {
    experiments::Figure1Config c;
    c.params.n = 30;
    c.params.k = 3;
    c.params.mu = 6;
    c.params.p_c = 1.0;
    c.params.seed = 4;
    c.replicates = 1;
    c.max_iterations = 5000;
    return experiments::run_figure1(c).front().series;
}

} // namespace

TEST_CASE("format_number") {
    CHECK(io::format_number(0.5) == "0.5");
    CHECK(io::format_number(1.0 / 3.0) == "0.333333333");
    CHECK(io::format_number(1e-12) == "1e-12");
    CHECK(io::format_number(123456789012.0) == "1.23456789e+11");
    CHECK(io::format_number(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("figure1 csv") {
    TelemetrySeries empty;
    CHECK(io::figure1_csv(empty, 2) == "iteration,d0,d2,d4\n");

    const TelemetrySeries s = small_series();
    const std::string csv = io::figure1_csv(s, 3);
    std::stringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "iteration,d0,d2,d4,d6");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        const auto cells = split(line, ',');
        REQUIRE(cells.size() == 5);
        double sum = 0.0;
        for (std::size_t i = 1; i < cells.size(); ++i) {
            sum += std::stod(cells[i]);
        }
        REQUIRE(sum == doctest::Approx(1.0).epsilon(1e-8));
        ++rows;
    }
    CHECK(rows == s.size());
    CHECK(csv.find('\r') == std::string::npos);
    CHECK_THROWS_AS(io::figure1_csv(s, 4), UsageError);
}

TEST_CASE("csv files are byte-identical on rewrite") {
    const fs::path dir = scratch("csv");
    const TelemetrySeries s = small_series();
    io::write_series_csv(s, 3, dir / "a.csv");
    io::write_series_csv(small_series(), 3, dir / "nested" / "b.csv");
    CHECK(slurp(dir / "a.csv") == slurp(dir / "nested" / "b.csv"));
    CHECK(slurp(dir / "a.csv") == io::figure1_csv(s, 3));
    fs::remove_all(dir);
}

TEST_CASE("unwritable paths raise IoError") {
    const fs::path dir = scratch("unwritable");
    io::write_file(dir / "file", "x");
    CHECK_THROWS_AS(io::write_file(dir / "file" / "child.csv", "y"), IoError);
    CHECK_THROWS_AS(io::write_file(dir, "z"), IoError);
    fs::remove_all(dir);
}

TEST_CASE("other csv schemas") {
    const std::vector<io::RunRow> rows = {{0, 7, 10, 30, "optimum_found"}, {1, 7, 50, 70, "max_iterations"}};
    CHECK(io::runs_csv(rows) ==
          "replicate,seed,iterations,evaluations,stop_reason\n0,7,10,30,optimum_found\n1,7,50,70,max_iterations\n");
    CHECK(io::transitions_csv({}) == "event,y,trials,p_plus,p_minus,stderr_plus,stderr_minus,bound,satisfied\n");
}

TEST_CASE("figure1 svg") {
    SUBCASE("single snapshot has one x tick") {
        TelemetrySeries s;
        const std::vector<double> row = {1.0, 0.0, 0.0};
        s.append(0, row);
        const std::string svg = io::figure1_svg(s, 2);
        CHECK(occurrences(svg, "y=\"418.00\" text-anchor=\"middle\"") == 1);
        CHECK(occurrences(svg, "<polyline") == 3);
    }
    SUBCASE("figure-1a parameters give six distance lines") {
        experiments::Figure1Config c;
        c.params.n = 100;
        c.params.k = 5;
        c.params.mu = 20;
        c.params.p_c = 1.0;
        c.params.chi = 1.0;
        c.params.seed = 7;
        c.replicates = 1;
        c.max_iterations = 20000;
        const TelemetrySeries s = experiments::run_figure1(c).front().series;
        const std::string svg = io::figure1_svg(s, 5);
        CHECK(occurrences(svg, "<polyline") == 6);
        for (const char* label : {">d=0<", ">d=2<", ">d=4<", ">d=6<", ">d=8<", ">d=10<"}) {
            CHECK(occurrences(svg, label) == 1);
        }
        CHECK(occurrences(svg, "y=\"418.00\" text-anchor=\"middle\"") == 5);
        CHECK(svg == io::figure1_svg(s, 5));
        const fs::path dir = scratch("svg");
        io::render_svg(s, 5, dir / "a.svg");
        io::render_svg(s, 5, dir / "b.svg");
        CHECK(slurp(dir / "a.svg") == slurp(dir / "b.svg"));
        fs::remove_all(dir);
    }
}

TEST_CASE("parse_cli") {
    SUBCASE("figure-1a parameter set") {
        const auto inv = parse({"figure1", "--n", "100", "--k", "5", "--mu", "20", "--pc", "1", "--chi", "1", "--seed", "7"});
        CHECK(inv.subcommand == cli::Subcommand::Figure1);
        CHECK(inv.value("n") == "100");
        CHECK(inv.value("k") == "5");
        CHECK(inv.value("mu") == "20");
        CHECK(std::stod(inv.value("pc")) == 1.0);
        CHECK(inv.seed == 7);
        CHECK(inv.overrides.size() == 6);
    }
    SUBCASE("no arguments prints usage with status 2") {
        try {
            parse({});
            FAIL("expected HelpRequested");
        } catch (const cli::HelpRequested& h) {
            CHECK(h.exit_code == 2);
            CHECK(h.text.find("figure1") != std::string::npos);
        }
    }
    SUBCASE("bounds on the default grid") {
        const auto inv = parse({"bounds", "--grid", "default"});
        CHECK(inv.subcommand == cli::Subcommand::Bounds);
        CHECK(inv.value("grid") == "default");
    }
    SUBCASE("malformed input is a usage error") {
        CHECK_THROWS_AS(parse({"nonsense"}), UsageError);
        CHECK_THROWS_AS(parse({"run", "--n"}), UsageError);
        CHECK_THROWS_AS(parse({"run", "--n", "abc"}), UsageError);
        CHECK_THROWS_AS(parse({"run", "--bogus", "1"}), UsageError);
        CHECK_THROWS_AS(parse({"bounds", "--grid", "elsewhere"}), UsageError);
    }
    SUBCASE("flag beats environment beats config beats default") {
        const fs::path dir = scratch("config");
        io::write_file(dir / "c.ini", "[run]\nn = 64\nmu = 6\noutput-dir = from_config\n");
        cli::Environment env;
        env.output_dir = "from_env";
        const auto inv = parse({"run", "--config", (dir / "c.ini").string(), "--mu", "9"}, env);
        CHECK(inv.value("n") == "64");
        CHECK(inv.value("mu") == "9");
        CHECK(inv.output_dir == fs::path("from_env"));
        CHECK(inv.value("k") == "3");
        const auto no_env = parse({"run", "--config", (dir / "c.ini").string()});
        CHECK(no_env.output_dir == fs::path("from_config"));

        io::write_file(dir / "bad_key.ini", "[run]\nbogus = 1\n");
        CHECK_THROWS_AS(parse({"run", "--config", (dir / "bad_key.ini").string()}), UsageError);
        io::write_file(dir / "bad_section.ini", "[elsewhere]\nn = 5\n");
        CHECK_THROWS_AS(parse({"run", "--config", (dir / "bad_section.ini").string()}), UsageError);
        fs::remove_all(dir);
    }
    SUBCASE("resolved config reproduces the invocation") {
        const fs::path dir = scratch("resolved");
        const auto inv = parse({"compare", "--n", "30", "--replicates", "4", "--output-dir", dir.string()});
        io::write_file(dir / "again.ini", cli::resolved_config(inv));
        const auto again = parse({"compare", "--config", (dir / "again.ini").string()});
        CHECK(again.settings == inv.settings);
        fs::remove_all(dir);
    }
}

TEST_CASE("main_entry exit codes and outputs") {
    const fs::path dir = scratch("main");
    std::ostringstream out;
    std::ostringstream err;
    auto call = [&](std::vector<std::string> args) {
        args.insert(args.begin(), "jumpga");
        std::vector<const char*> argv;
        for (const auto& a : args) {
            argv.push_back(a.c_str());
        }
        return cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    };
    CHECK(call({}) == 2);
    CHECK(call({"run", "--k", "0"}) == 2);
    CHECK(call({"oracle", "--n", "12", "--k", "4", "--trials", "2000", "--output-dir", dir.string()}) == 0);
    CHECK(err.str().find("warning") != std::string::npos);
    CHECK(fs::exists(dir / "oracle.csv"));
    CHECK(fs::exists(dir / "config.resolved"));
    CHECK(call({"run", "--n", "20", "--k", "2", "--mu", "4", "--replicates", "3", "--output-dir", (dir / "run").string()}) ==
          0);
    const std::string runs = slurp(dir / "run" / "runs.csv");
    CHECK(runs.rfind("replicate,seed,iterations,evaluations,stop_reason\n", 0) == 0);
    CHECK(occurrences(runs, "\n") == 4);
    fs::remove_all(dir);
}
