#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "phasespace/error.hpp"
#include "phasespace/io.hpp"
#include "phasespace/version.hpp"
#include "support.hpp"

using namespace phasespace;
using namespace testing;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream o;
  o << f.rdbuf();
  return o.str();
}

std::string scratch(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / ("phasespace_io_" + std::string(name));
  std::filesystem::remove_all(dir);
  return dir.string();
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("numbers print with seventeen significant digits") {
    CHECK(io::format_number(1.0) == "1.0000000000000000e+00");
    CHECK(io::format_number(-0.1) == "-1.0000000000000001e-01");
    CHECK(std::stod(io::format_number(pi)) == pi);
    CHECK(io::parse_format("json") == io::Format::json);
    CHECK_THROWS_AS(io::parse_format("xml"), InvalidArgument);
  }

  TEST_CASE("csv layout") {
    io::Table t{{"a", "b"}, {{1.0, 2.0}, {3.5, -4.0}}};
    const auto text = io::render_csv({{"kind", "demo"}}, t);
    CHECK(text.find('\r') == std::string::npos);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    REQUIRE(line.rfind("# ", 0) == 0);
    const auto header = io::json::parse(line.substr(2));
    CHECK(header["kind"] == "demo");
    CHECK(header["library"] == kLibraryName);
    CHECK(header["version"] == kVersion);
    std::getline(in, line);
    CHECK(line == "a,b");
    std::getline(in, line);
    CHECK(line == "1.0000000000000000e+00,2.0000000000000000e+00");
    int rows = 1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 2);
    CHECK(text.back() == '\n');
  }

  TEST_CASE("json layout") {
    io::Table t{{"x"}, {{0.25}, {std::nan("")}}};
    const auto doc = io::json::parse(io::render_json({{"kind", "demo"}}, t));
    CHECK(doc["header"]["version"] == kVersion);
    CHECK(doc["columns"][0] == "x");
    CHECK(doc["rows"][0][0].get<double>() == 0.25);
    CHECK(doc["rows"][1][0].is_null());
  }

  TEST_CASE("written files are byte-identical across runs") {
    const auto g = make_phase_grid(64, 8.0, 1.0);
    const auto W = wigner_from_pure(hermite_eigenstate(1, kUnits, g.q), g);
    const auto dir = scratch("determinism");
    const auto a = slurp(io::write_table(dir + "/a", "w", io::Format::csv, {{"n", 1}}, io::field_table(W.field)));
    const auto b = slurp(io::write_table(dir + "/b", "w", io::Format::csv, {{"n", 1}}, io::field_table(W.field)));
    CHECK(a == b);
    CHECK(a.find('\r') == std::string::npos);
    const auto tab = io::field_table(W.field);
    CHECK(tab.rows.size() == g.size());
    CHECK(tab.columns == std::vector<std::string>{"q", "p", "re", "im"});
    const auto j = slurp(io::write_table(dir, "w", io::Format::json, {{"n", 1}}, tab));
    CHECK(io::json::parse(j)["rows"].size() == g.size());
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("state tables") {
    const Grid1D q = Grid1D::symmetric(16, 4.0);
    const auto phi = hermite_eigenstate(0, kUnits, q);
    const auto t = io::wavefunction_table(phi, "q");
    CHECK(t.columns.front() == "q");
    CHECK(t.rows.size() == q.n);
    CHECK(io::density_table(pure(phi)).rows.size() == q.n * q.n);
    const auto gj = io::grid_json(make_phase_grid(16, 4.0, 1.0));
    CHECK(gj["q"]["n"] == 16);
    CHECK(gj["hbar"] == 1.0);
  }
}
