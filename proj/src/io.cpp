#include "nch/io.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nch {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string records_to_csv(std::span<const DiagnosticsRecord> records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const DiagnosticsRecord& r : records) {
    out += std::to_string(r.step);
    for (double v : {r.time, r.mass, r.energy, r.entropy, r.production, r.energy_increment,
                     r.theta_min, r.theta_max}) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += std::to_string(r.newton_iterations);
    out += ',';
    out += format_double(r.final_residual);
    out += '\n';
  }
  return out;
}

void write_csv(std::span<const DiagnosticsRecord> records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << records_to_csv(records);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::vector<DiagnosticsRecord> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("'" + path + "' does not start with the diagnostics header");
  std::vector<DiagnosticsRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 11) throw std::runtime_error("malformed CSV row in '" + path + "': " + line);
    auto num = [&](int k) { return std::strtod(cells[k].c_str(), nullptr); };
    DiagnosticsRecord r;
    r.step = std::stoi(cells[0]);
    r.time = num(1);
    r.mass = num(2);
    r.energy = num(3);
    r.entropy = num(4);
    r.production = num(5);
    r.energy_increment = num(6);
    r.theta_min = num(7);
    r.theta_max = num(8);
    r.newton_iterations = std::stoi(cells[9]);
    r.final_residual = num(10);
    records.push_back(r);
  }
  return records;
}

void write_vtk_snapshot(const Mesh& mesh, const State& state, const std::string& path) {
  const auto n = static_cast<std::size_t>(mesh.num_nodes());
  if (state.phi.size() != n || state.mu.size() != n || state.theta.size() != n)
    throw std::invalid_argument("state does not match mesh for VTK output");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "# vtk DataFile Version 2.0\n";
  out << "nch snapshot t=" << format_double(state.time) << "\n";
  out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << n << " double\n";
  for (const Vec2& p : mesh.nodes()) out << format_double(p[0]) << ' ' << format_double(p[1]) << " 0\n";
  const int ne = mesh.num_elements();
  out << "CELLS " << ne << ' ' << 4 * ne << '\n';
  for (const auto& el : mesh.elements()) out << "3 " << el[0] << ' ' << el[1] << ' ' << el[2] << '\n';
  out << "CELL_TYPES " << ne << '\n';
  for (int e = 0; e < ne; ++e) out << "5\n";
  out << "POINT_DATA " << n << '\n';
  auto scalars = [&](const char* name, const NodalField& f) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : f) out << format_double(v) << '\n';
  };
  scalars("phi", state.phi);
  scalars("mu", state.mu);
  scalars("theta", state.theta);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace nch
