#include "phasespace/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "phasespace/error.hpp"
#include "phasespace/version.hpp"

namespace phasespace::io {

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw InvalidArgument("unknown format '" + s + "' (csv or json)");
}

const char* extension(Format f) { return f == Format::csv ? ".csv" : ".json"; }

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

namespace {

json stamped(json header) {
  header["library"] = kLibraryName;
  header["version"] = kVersion;
  return header;
}

}  // namespace

std::string render_csv(const json& header, const Table& table) {
  std::string out = "# " + stamped(header).dump() + "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const json& header, const Table& table) {
  // Numbers go through the same %.16e text as the CSV so both are bit-stable.
  std::string out = "{\"header\":" + stamped(header).dump() + ",\"columns\":" + json(table.columns).dump() + ",\"rows\":[";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (r) out += ',';
    out += '[';
    for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
      if (c) out += ',';
      const double v = table.rows[r][c];
      out += std::isfinite(v) ? format_number(v) : "null";
    }
    out += ']';
  }
  out += "]}\n";
  return out;
}

std::string write_file(const std::string& dir, const std::string& name, const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, "cannot create output directory '" + dir + "': " + ec.message());
  const auto path = (std::filesystem::path(dir) / name).string();
  std::ofstream f(path, std::ios::binary);
  require(f.good(), "cannot write '" + path + "'");
  f << text;
  require(f.good(), "write to '" + path + "' failed");
  return path;
}

std::string write_table(const std::string& dir, const std::string& stem, Format format, json header,
                        const Table& table) {
  return write_file(dir, stem + extension(format),
                    format == Format::csv ? render_csv(header, table) : render_json(header, table));
}

json grid_json(const Grid1D& g) { return {{"n", g.n}, {"min", g.min}, {"step", g.step}}; }

json grid_json(const PhaseSpaceGrid& g) { return {{"q", grid_json(g.q)}, {"p", grid_json(g.p)}, {"hbar", g.hbar}}; }

Table field_table(const ComplexField2D& f) {
  Table t{{"q", f.domain == Domain::qp ? "p" : "y", "re", "im"}, {}};
  t.rows.reserve(f.values.size());
  const auto y = f.grid.ygrid();
  for (std::size_t i = 0; i < f.rows(); ++i) {
    for (std::size_t j = 0; j < f.cols(); ++j) {
      const double second = f.domain == Domain::qp ? f.grid.p.at(j) : y.at(j);
      t.rows.push_back({f.grid.q.at(i), second, f(i, j).real(), f(i, j).imag()});
    }
  }
  return t;
}

Table wavefunction_table(const PositionWavefunction& phi, const char* coord) {
  Table t{{coord, "re", "im"}, {}};
  for (std::size_t k = 0; k < phi.values.size(); ++k) {
    t.rows.push_back({phi.grid.at(k), phi.values[k].real(), phi.values[k].imag()});
  }
  return t;
}

Table density_table(const DensityMatrix& rho) {
  Table t{{"i", "j", "re", "im"}, {}};
  for (Eigen::Index i = 0; i < rho.rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.rho.cols(); ++j) {
      t.rows.push_back({static_cast<double>(i), static_cast<double>(j), rho.rho(i, j).real(), rho.rho(i, j).imag()});
    }
  }
  return t;
}

}  // namespace phasespace::io
