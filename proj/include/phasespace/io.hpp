#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "phasespace/grid.hpp"
#include "phasespace/states.hpp"

namespace phasespace::io {

using json = nlohmann::ordered_json;

enum class Format { csv, json };

Format parse_format(const std::string& s);
const char* extension(Format f);

/// %.16e: 17 significant digits, scientific.
std::string format_number(double v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// CSV: first line "# " + compact JSON header, then the column names, then
/// rows; LF endings. JSON: {"header", "columns", "rows"}. The header gets
/// the library name and version added. Returns the path written.
std::string write_table(const std::string& dir, const std::string& stem, Format format, json header,
                        const Table& table);

/// Writes `text` to dir/name, creating dir; binary mode, so LF stays LF.
std::string write_file(const std::string& dir, const std::string& name, const std::string& text);

std::string render_csv(const json& header, const Table& table);
std::string render_json(const json& header, const Table& table);

json grid_json(const PhaseSpaceGrid& g);
json grid_json(const Grid1D& g);

Table field_table(const ComplexField2D& f);                                   // q, p, re, im
Table wavefunction_table(const PositionWavefunction& phi, const char* coord);  // coord, re, im
Table density_table(const DensityMatrix& rho);                                // i, j, re, im

}  // namespace phasespace::io
