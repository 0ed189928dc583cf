#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "trigspline/cli.hpp"

namespace fs = std::filesystem;

namespace {

const char* kPaperCsv = "2\n1\n3\n2\n4\n1\n3\n1\n3\n";

struct CaptureStdout {
    std::ostringstream buffer;
    std::streambuf* saved;
    CaptureStdout() : saved(std::cout.rdbuf(buffer.rdbuf())) {}
    ~CaptureStdout() { std::cout.rdbuf(saved); }
};

fs::path fresh_dir(const char* name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run(std::vector<std::string> args) { return trigspline::cli::run(args); }

} // namespace

TEST_CASE("nodes subcommand prints N angles") {
    CaptureStdout capture;
    REQUIRE(run({"nodes", "--N", "9", "--I", "1"}) == 0);
    const std::string text = capture.buffer.str();
    REQUIRE(std::count(text.begin(), text.end(), '\n') == 9);
    REQUIRE(text.rfind("0.349065850399", 0) == 0); // pi/9
}

TEST_CASE("fit then eval round trip") {
    const fs::path dir = fresh_dir("trigspline_cli_fit");
    write_file(dir / "data.csv", kPaperCsv);
    REQUIRE(run({"fit", "--in", (dir / "data.csv").string(), "--N", "9", "--I", "0",
                 "--kind", "v3", "--r", "3", "--M", "200", "--out",
                 (dir / "spline.json").string()}) == 0);
    REQUIRE(fs::exists(dir / "spline.json"));
    REQUIRE(!fs::exists(dir / "spline.json.tmp"));

    {
        CaptureStdout capture;
        REQUIRE(run({"eval", "--spline", (dir / "spline.json").string(), "--t", "0",
                     "--t", "3.14"}) == 0);
        const std::string text = capture.buffer.str();
        REQUIRE(std::count(text.begin(), text.end(), '\n') == 2);
        REQUIRE(text.rfind("2\n", 0) == 0); // node value at t=0
    }

    SECTION("derivative order past r-1 exits with code 1") {
        REQUIRE(run({"eval", "--spline", (dir / "spline.json").string(), "--t", "1.0",
                     "--deriv", "3"}) == 1);
    }
}

TEST_CASE("sample subcommand writes a curve") {
    const fs::path dir = fresh_dir("trigspline_cli_sample");
    write_file(dir / "data.csv", kPaperCsv);
    REQUIRE(run({"sample", "--in", (dir / "data.csv").string(), "--N", "9", "--I", "0",
                 "--kind", "v2", "--r", "2", "--M", "500", "--count", "64", "--out",
                 (dir / "curve.csv").string()}) == 0);
    const std::string text = read_file(dir / "curve.csv");
    REQUIRE(std::count(text.begin(), text.end(), '\n') == 65);
    REQUIRE(text.rfind("t,value\n", 0) == 0);
}

TEST_CASE("compare subcommand") {
    const fs::path dir = fresh_dir("trigspline_cli_compare");
    write_file(dir / "data.csv", kPaperCsv);

    SECTION("abs-sinc vs power-law at even order is tiny") {
        CaptureStdout capture;
        REQUIRE(run({"compare", "--in", (dir / "data.csv").string(), "--N", "9", "--I",
                     "0", "--kind", "v2", "--r", "4", "--against", "v3"}) == 0);
        const double deviation = std::stod(capture.buffer.str());
        REQUIRE(deviation <= 1e-9);
    }

    SECTION("order-3 build against the cubic oracle") {
        CaptureStdout capture;
        REQUIRE(run({"compare", "--in", (dir / "data.csv").string(), "--N", "9", "--I",
                     "0", "--kind", "v3", "--r", "3", "--M", "200", "--against",
                     "cubic"}) == 0);
        REQUIRE(std::stod(capture.buffer.str()) <= 1e-7);
    }

    SECTION("quadratic oracle requires the half-step grid") {
        REQUIRE(run({"compare", "--in", (dir / "data.csv").string(), "--N", "9", "--I",
                     "0", "--kind", "v1", "--r", "2", "--against", "quadratic"}) == 1);
    }

    SECTION("against the bare trigonometric polynomial") {
        CaptureStdout capture;
        REQUIRE(run({"compare", "--in", (dir / "data.csv").string(), "--N", "9", "--I",
                     "1", "--kind", "v3", "--r", "6", "--against", "trigpoly"}) == 0);
        const double deviation = std::stod(capture.buffer.str());
        REQUIRE(deviation > 0.0);
        REQUIRE(deviation < 1.0);
    }

    SECTION("order-1 build against the linear oracle") {
        CaptureStdout capture;
        REQUIRE(run({"compare", "--in", (dir / "data.csv").string(), "--N", "9", "--I",
                     "0", "--kind", "v3", "--r", "1", "--M", "20000", "--against",
                     "linear"}) == 0);
        REQUIRE(std::stod(capture.buffer.str()) < 1e-4);
    }
}

TEST_CASE("sample needs a spline source") {
    REQUIRE(run({"sample", "--out", "unused.csv"}) == 1);
}

TEST_CASE("paper-example emits the full deterministic dataset") {
    const fs::path dir_a = fresh_dir("trigspline_cli_example_a");
    const fs::path dir_b = fresh_dir("trigspline_cli_example_b");
    // Small count keeps the unit suite fast; the acceptance suite runs the
    // default configuration.
    REQUIRE(run({"paper-example", "--out", dir_a.string(), "--count", "64",
                 "--curve-M", "2000"}) == 0);
    REQUIRE(run({"paper-example", "--out", dir_b.string(), "--count", "64",
                 "--curve-M", "2000"}) == 0);

    std::vector<std::string> expected;
    for (int indicator : {0, 1}) {
        expected.push_back("trig_poly_I" + std::to_string(indicator) + ".csv");
        for (int r : {1, 2, 3}) {
            expected.push_back("spline_v1_r" + std::to_string(r) + "_I" +
                               std::to_string(indicator) + ".csv");
        }
        for (int r : {2, 4, 6}) {
            expected.push_back("deviation_v1_v3_r" + std::to_string(r) + "_I" +
                               std::to_string(indicator) + ".csv");
        }
    }
    REQUIRE(expected.size() == 14);
    std::size_t found = 0;
    for (const auto& entry : fs::directory_iterator(dir_a)) {
        if (entry.is_regular_file()) {
            ++found;
        }
    }
    REQUIRE(found == 14);
    for (const auto& name : expected) {
        CAPTURE(name);
        REQUIRE(fs::exists(dir_a / name));
        REQUIRE(read_file(dir_a / name) == read_file(dir_b / name));
    }
}

TEST_CASE("argument errors exit with code 2") {
    REQUIRE(run({"frobnicate"}) == 2);
    REQUIRE(run({"nodes"}) == 2);                       // missing --N
    REQUIRE(run({"nodes", "--N", "9", "--I", "7"}) == 2);
    REQUIRE(run({"fit", "--in", "x.csv", "--N", "9", "--out", "y.json", "--M", "10",
                 "--tol", "1e-9"}) == 2);               // M and tol exclude each other
    REQUIRE(run({}) == 2);
}

TEST_CASE("runtime failures exit with code 1 and leave no partial output") {
    const fs::path dir = fresh_dir("trigspline_cli_fail");
    write_file(dir / "data.csv", kPaperCsv);

    SECTION("missing input file") {
        REQUIRE(run({"fit", "--in", (dir / "absent.csv").string(), "--N", "9", "--out",
                     (dir / "out.json").string()}) == 1);
        REQUIRE(!fs::exists(dir / "out.json"));
    }
    SECTION("even N is rejected by the library") {
        write_file(dir / "eight.csv", "1\n2\n3\n4\n5\n6\n7\n8\n");
        REQUIRE(run({"fit", "--in", (dir / "eight.csv").string(), "--N", "8", "--out",
                     (dir / "out.json").string()}) == 1);
    }
    SECTION("unwritable output leaves nothing behind") {
        REQUIRE(run({"sample", "--in", (dir / "data.csv").string(), "--N", "9",
                     "--M", "50", "--count", "16", "--out",
                     (dir / "no_such_dir" / "curve.csv").string()}) == 1);
        REQUIRE(!fs::exists(dir / "no_such_dir"));
    }
}

TEST_CASE("help exits cleanly") {
    CaptureStdout capture;
    REQUIRE(run({"--help"}) == 0);
    REQUIRE(capture.buffer.str().find("paper-example") != std::string::npos);
}
