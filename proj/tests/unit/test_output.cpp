#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gnflow/output.hpp"

using namespace gnflow;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("gnflow_output_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("output") {

TEST_CASE("seventeen digits round trip")
{
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("fields header")
{
    const std::string h = fields_header(512, 64.0, 0.1);
    CHECK(h.size() == 32);
    CHECK(h.rfind("GNFLOW1 n=512 L=64 t=0.1", 0) == 0);
    CHECK(h.back() == ' ');
    const std::string long_t = fields_header(1048576, 123.456789, 1.0 / 3.0);
    CHECK(long_t.size() == 32);
    CHECK(long_t.rfind("GNFLOW1 n=1048576 L=", 0) == 0);
    CHECK(fields_filename(0.1) == "fields_0.100000.f64");
}

TEST_CASE("fields round trip")
{
    const fs::path dir = scratch("fields");
    fs::create_directories(dir);
    const std::vector<double> a{1.0, -2.0, 0.125, 3.0e-310};
    const std::vector<double> b{4.0, 5.0, 6.0, 7.0};
    write_fields(dir / "f.f64", 10.0, 0.5, {a, b});
    CHECK(fs::file_size(dir / "f.f64") == 32 + 8 * 8);
    const FieldsFile f = read_fields(dir / "f.f64");
    CHECK(f.header == fields_header(4, 10.0, 0.5));
    std::vector<double> both = a;
    both.insert(both.end(), b.begin(), b.end());
    CHECK(f.values == both);
    // little-endian layout
    const std::string raw = slurp(dir / "f.f64");
    CHECK(static_cast<unsigned char>(raw[32 + 7]) == 0x3f);
    CHECK(static_cast<unsigned char>(raw[32 + 6]) == 0xf0);
    fs::remove_all(dir);
}

TEST_CASE("csv writer and failure sentinel")
{
    const fs::path dir = scratch("csv");
    fs::create_directories(dir);
    {
        CsvWriter w(dir / "t.csv", {"t", "x"});
        const double row[] = {0.0, 0.1};
        w.row(row);
        w.failed("DiffeoLost", 1.5);
    }
    CHECK(slurp(dir / "t.csv") == "t,x\n0,0.10000000000000001\nFAILED DiffeoLost t=1.5\n");
    fs::remove_all(dir);
}

TEST_CASE("lock sentinel is exclusive")
{
    const fs::path dir = scratch("lock");
    {
        OutputLock first(dir);
        CHECK(fs::exists(dir / ".lock"));
        CHECK_THROWS_AS(OutputLock{dir}, OutputLocked);
    }
    CHECK_FALSE(fs::exists(dir / ".lock"));
    CHECK_NOTHROW(OutputLock{dir});
    fs::remove_all(dir);
}

}  // TEST_SUITE
