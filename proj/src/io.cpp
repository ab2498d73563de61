#include "limitfrac/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace limitfrac {

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void write_cell_array(std::ostream& out, const char* name, const std::vector<double>& data,
                      std::size_t n) {
  out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
  for (std::size_t i = 0; i < n; ++i) out << format_real(i < data.size() ? data[i] : 0.0) << '\n';
}

}  // namespace

void write_vtk(const Mesh& mesh, const ScalarField& u, const ScalarField& v,
               const IndicatorSet& indicators, std::ostream& out) {
  u.require_bound(mesh);
  v.require_bound(mesh);
  const std::size_t nv = mesh.num_vertices();
  const std::size_t nt = mesh.num_triangles();
  out << "# vtk DataFile Version 3.0\nlimitfrac\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nv << " double\n";
  for (const auto& p : mesh.vertices()) out << format_real(p.x) << ' ' << format_real(p.y) << " 0\n";
  out << "CELLS " << nt << ' ' << 4 * nt << '\n';
  for (const auto& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << nt << '\n';
  for (std::size_t t = 0; t < nt; ++t) out << "5\n";
  out << "POINT_DATA " << nv << '\n';
  out << "SCALARS u double 1\nLOOKUP_TABLE default\n";
  for (std::size_t i = 0; i < nv; ++i) out << format_real(u[i]) << '\n';
  out << "SCALARS v double 1\nLOOKUP_TABLE default\n";
  for (std::size_t i = 0; i < nv; ++i) out << format_real(v[i]) << '\n';
  out << "CELL_DATA " << nt << '\n';
  write_cell_array(out, "eta", indicators.eta, nt);
  write_cell_array(out, "eta_u", indicators.eta_u, nt);
  write_cell_array(out, "eta_v", indicators.eta_v, nt);
}

void write_vtk(const Mesh& mesh, const ScalarField& u, const ScalarField& v,
               const IndicatorSet& indicators, const std::string& path) {
  auto out = open_out(path);
  write_vtk(mesh, u, v, indicators, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_energy_csv(const std::vector<EnergyRow>& log, std::ostream& out) {
  out << "step,time,bulk,surface,total,dofs,elements,estimator\n";
  for (const auto& r : log) {
    out << r.step << ',' << format_real(r.time) << ',' << format_real(r.bulk) << ','
        << format_real(r.surface) << ',' << format_real(r.total) << ',' << r.dofs << ','
        << r.elements << ',' << format_real(r.estimator) << '\n';
  }
}

void write_energy_csv(const std::vector<EnergyRow>& log, const std::string& path) {
  if (log.empty()) throw std::invalid_argument("energy log is empty");
  auto out = open_out(path);
  write_energy_csv(log, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace limitfrac
