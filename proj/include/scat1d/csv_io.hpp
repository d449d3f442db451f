#pragma once

// Plot-ready CSV emission.  All numbers print with %.17g so identical inputs
// produce byte-identical files.

#include <string>
#include <vector>

#include "scat1d/delta_scattering.hpp"
#include "scat1d/dynamics.hpp"
#include "scat1d/grid.hpp"
#include "scat1d/jost.hpp"
#include "scat1d/spectral.hpp"

namespace scat1d {

std::string format_double(double v);

// columns k,ReT,ImT,ReR1,ImR1,ReR2,ImR2
void write_scattering_csv(const ScatteringData& data, const std::string& path);
// columns kappa,energy
void write_bound_states_csv(const std::vector<double>& kappas, const std::string& path);
// columns x,Re,Im
void write_grid_function_csv(const GridFunction& f, const std::string& path);
// columns k,Re,Im
void write_k_function_csv(const KFunction& g, const std::string& path);
// matrix with a leading header row of column coordinates and a leading
// column of row coordinates; complex parts side by side (Re block, Im block)
void write_matrix_csv(const std::vector<cplx>& values, std::size_t rows,
                      std::size_t cols, const std::vector<double>& row_coords,
                      const std::vector<double>& col_coords, const std::string& path);
// long format t,x,Reu,Imu
void write_trace_csv(const EvolutionTrace& trace, const std::string& path);
// t,mass,energy,supnorm,left_mass,right_mass
void write_trace_diagnostics_csv(const EvolutionTrace& trace, const std::string& path);
// distorted-wave bundle: one file per field plus a manifest
void write_wave_table_bundle(const DistortedWaveTable& table, const std::string& dir,
                             const std::string& stem);

// FNV-1a of a string (config hashes in manifests)
std::string fnv1a_hex(const std::string& text);

struct ManifestEntry {
  std::string path;
  std::string config_hash;
};
void write_manifest(const std::vector<ManifestEntry>& entries, const std::string& path);

}  // namespace scat1d
