#include "scat1d/csv_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace scat1d {

std::string format_double(double v) {
  if (v == 0.0) return "0";  // normalize negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // no platform newline translation
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

void put_row(std::ofstream& out, const std::vector<double>& vals) {
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out << ',';
    out << format_double(vals[i]);
  }
  out << '\n';
}

}  // namespace

void write_scattering_csv(const ScatteringData& data, const std::string& path) {
  auto out = open_out(path);
  out << "k,ReT,ImT,ReR1,ImR1,ReR2,ImR2\n";
  for (std::size_t i = 0; i < data.k_grid.size(); ++i)
    put_row(out, {data.k_grid[i], data.T[i].real(), data.T[i].imag(),
                  data.R1[i].real(), data.R1[i].imag(), data.R2[i].real(),
                  data.R2[i].imag()});
}

void write_bound_states_csv(const std::vector<double>& kappas,
                            const std::string& path) {
  auto out = open_out(path);
  out << "kappa,energy\n";
  for (double k : kappas) put_row(out, {k, -k * k});
}

void write_grid_function_csv(const GridFunction& f, const std::string& path) {
  auto out = open_out(path);
  out << "x,Re,Im\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    put_row(out, {f.grid[i], f[i].real(), f[i].imag()});
}

void write_k_function_csv(const KFunction& g, const std::string& path) {
  auto out = open_out(path);
  out << "k,Re,Im\n";
  for (std::size_t j = 0; j < g.size(); ++j)
    put_row(out, {g.grid.nodes[j], g[j].real(), g[j].imag()});
}

void write_matrix_csv(const std::vector<cplx>& values, std::size_t rows,
                      std::size_t cols, const std::vector<double>& row_coords,
                      const std::vector<double>& col_coords,
                      const std::string& path) {
  if (values.size() != rows * cols || row_coords.size() != rows ||
      col_coords.size() != cols)
    throw std::invalid_argument("write_matrix_csv: shape mismatch");
  auto out = open_out(path);
  out << "coord";
  for (double c : col_coords) out << ",Re@" << format_double(c);
  for (double c : col_coords) out << ",Im@" << format_double(c);
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    out << format_double(row_coords[i]);
    for (std::size_t j = 0; j < cols; ++j)
      out << ',' << format_double(values[i * cols + j].real());
    for (std::size_t j = 0; j < cols; ++j)
      out << ',' << format_double(values[i * cols + j].imag());
    out << '\n';
  }
}

void write_trace_csv(const EvolutionTrace& trace, const std::string& path) {
  auto out = open_out(path);
  out << "t,x,Reu,Imu\n";
  for (std::size_t s = 0; s < trace.states.size(); ++s) {
    const GridFunction& u = trace.states[s];
    for (std::size_t i = 0; i < u.size(); ++i)
      put_row(out, {trace.times[s], u.grid[i], u[i].real(), u[i].imag()});
  }
}

void write_trace_diagnostics_csv(const EvolutionTrace& trace,
                                 const std::string& path) {
  auto out = open_out(path);
  out << "t,mass,energy,supnorm,left_mass,right_mass\n";
  for (const StepDiagnostics& d : trace.diagnostics)
    put_row(out, {d.t, d.mass, d.energy, d.supnorm, d.left_mass, d.right_mass});
}

void write_wave_table_bundle(const DistortedWaveTable& table, const std::string& dir,
                             const std::string& stem) {
  const auto xs = table.x.points();
  const std::vector<double>& ks = table.k.nodes;
  write_matrix_csv(table.psi, ks.size(), xs.size(), ks, xs,
                   dir + "/" + stem + "_psi.csv");
  ScatteringData sd;
  sd.k_grid = ks;
  sd.T = table.T;
  sd.R1 = table.R1;
  sd.R2 = table.R2;
  write_scattering_csv(sd, dir + "/" + stem + "_coefficients.csv");
  std::vector<ManifestEntry> entries{{stem + "_psi.csv", ""},
                                     {stem + "_coefficients.csv", ""}};
  write_manifest(entries, dir + "/" + stem + "_manifest.csv");
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_manifest(const std::vector<ManifestEntry>& entries,
                    const std::string& path) {
  auto out = open_out(path);
  out << "file,config_hash\n";
  for (const ManifestEntry& e : entries)
    out << e.path << ',' << e.config_hash << '\n';
}

}  // namespace scat1d
