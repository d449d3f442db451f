// Command-line front end: wires potential configs to the solver modules and
// emits plot-ready CSV tables plus verification reports.

#include <CLI11.hpp>

#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "scat1d/config.hpp"
#include "scat1d/csv_io.hpp"
#include "scat1d/delta_scattering.hpp"
#include "scat1d/dynamics.hpp"
#include "scat1d/jost.hpp"
#include "scat1d/spectral.hpp"
#include "scat1d/verification.hpp"
#include "scat1d/wave_operators.hpp"

namespace fs = std::filesystem;
using namespace scat1d;
using std::numbers::pi;

namespace {

struct CommonArgs {
  std::string potential_path;
  double xmax = 40.0;
  double dx = 0.05;
  double kmin = 1e-3;
  double kmax = 8.0;
  double dk = 0.0;  // 0: derived as pi/(4 xmax)
  std::string out_dir;
  unsigned seed = 20260801;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool need_potential) {
  auto* p = cmd->add_option("--potential", a.potential_path,
                            "potential configuration file (JSON)");
  if (need_potential) p->required();
  cmd->add_option("--xmax", a.xmax, "half-width of the spatial grid");
  cmd->add_option("--dx", a.dx, "spatial grid spacing");
  cmd->add_option("--kmin", a.kmin, "excluded window half-width around k = 0");
  cmd->add_option("--kmax", a.kmax, "wavenumber band edge");
  cmd->add_option("--dk", a.dk, "wavenumber spacing (default pi/(4 xmax))");
  cmd->add_option("--out", a.out_dir, "output directory (default $SCAT1D_OUT or .)");
  cmd->add_option("--seed", a.seed, "random seed for test families");
}

std::string resolve_out(const CommonArgs& a) {
  std::string dir = a.out_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("SCAT1D_OUT")) dir = env;
  }
  if (dir.empty()) dir = ".";
  fs::create_directories(dir);
  return dir;
}

PotentialSpec load_spec(const CommonArgs& a) {
  if (a.potential_path.empty()) return PotentialSpec{};
  return load_potential_file(a.potential_path);
}

std::string config_hash(const CommonArgs& a, const PotentialSpec& spec) {
  std::ostringstream ss;
  ss << potential_to_json(spec) << a.xmax << ',' << a.dx << ',' << a.kmin << ','
     << a.kmax << ',' << a.dk << ',' << a.seed;
  return fnv1a_hex(ss.str());
}

KGrid make_kgrid(const CommonArgs& a) {
  const double dk = a.dk > 0.0 ? a.dk : pi / (4.0 * a.xmax);
  return KGrid::symmetric_band(a.kmin, a.kmax, dk);
}

int cmd_scatter(const CommonArgs& a, double rt_tol) {
  const PotentialSpec spec = load_spec(a);
  const std::string out = resolve_out(a);
  const std::string hash = config_hash(a, spec);
  const auto ks = default_k_grid(std::max(a.kmin, 1e-3), 1e3, 2048);

  ScatteringData data;
  if (spec.pure_delta()) {
    data = scattering_coeffs(spec, ks);
  } else {
    data = mixed_scattering(spec, ks).data;
  }
  write_scattering_csv(data, out + "/scattering.csv");
  write_bound_states_csv(data.bound_state_kappas, out + "/bound_states.csv");

  // unitarity residual and <k>-scaled (RT-assume) report
  double unit_res = 0.0, rt_sup = 0.0;
  for (std::size_t i = 0; i < data.k_grid.size(); ++i) {
    unit_res = std::max(unit_res,
                        std::abs(std::norm(data.T[i]) + std::norm(data.R1[i]) - 1.0));
    const double kb = std::sqrt(1.0 + data.k_grid[i] * data.k_grid[i]);
    rt_sup = std::max(rt_sup, kb * std::max(std::abs(data.R1[i]),
                                            std::abs(data.T[i] - 1.0)));
  }
  std::ofstream rep(out + "/scatter_report.txt", std::ios::binary);
  rep << "unitarity_max_residual " << format_double(unit_res) << "\n"
      << "rt_scaled_sup " << format_double(rt_sup) << "\n"
      << "bound_states " << data.bound_state_kappas.size() << "\n";
  write_manifest({{"scattering.csv", hash},
                  {"bound_states.csv", hash},
                  {"scatter_report.txt", hash}},
                 out + "/manifest.csv");
  std::cout << "scatter: unitarity residual " << unit_res << ", "
            << data.bound_state_kappas.size() << " bound state(s)\n";
  return unit_res <= rt_tol ? 0 : 1;
}

int cmd_jost(const CommonArgs& a) {
  const PotentialSpec spec = load_spec(a);
  const std::string out = resolve_out(a);
  const std::string hash = config_hash(a, spec);

  UniformGrid x = UniformGrid::symmetric(std::min(a.xmax, 6.0), std::min(a.dx, 0.02));
  const auto kg = uniform_k_grid(std::min(a.kmax * 4.0, 64.0), 256);
  const JostSolution jost = solve_jost(spec, kg, x);
  write_matrix_csv(jost.m1, jost.nk(), jost.nx(), jost.k, x.points(),
                   out + "/m1.csv");
  write_matrix_csv(jost.m2, jost.nk(), jost.nx(), jost.k, x.points(),
                   out + "/m2.csv");

  const B1Result br = b1_from_m1(jost);
  write_matrix_csv(br.kernel.values, br.kernel.x.n, br.kernel.y.size(),
                   br.kernel.x.points(), br.kernel.y, out + "/b1.csv");

  const KnSeries kn = kn_series(spec, x, std::min<std::size_t>(x.n, 200), 4);
  const KernelBoundReport kb = verify_kernel_bounds(spec, br.kernel);
  double sing = 0.0;
  for (const DeltaTerm& d : spec.deltas) sing = std::max(sing, std::abs(d.location));
  const MBoundReport mb = verify_m_bounds(spec, jost, sing + 0.25);

  std::ofstream rep(out + "/jost_report.txt", std::ios::binary);
  rep << "richardson_m1 " << format_double(jost.richardson_m1) << "\n"
      << "aliasing_warning " << (br.aliasing_warning ? 1 : 0) << "\n"
      << "K_tail_sup " << format_double(kn.tail_sup) << "\n"
      << "C_b1 " << format_double(kb.c_b1) << "\n"
      << "C_b1_prime " << format_double(kb.c_b1_prime) << "\n"
      << "C_m1 " << format_double(mb.c_m1) << " vacuous " << mb.m1_vacuous << "\n"
      << "C_m2 " << format_double(mb.c_m2) << " vacuous " << mb.m2_vacuous << "\n"
      << "compact_sup_m " << format_double(mb.compact_sup_m) << "\n"
      << "compact_sup_dk_m " << format_double(mb.compact_sup_dkm) << "\n";
  write_manifest({{"m1.csv", hash},
                  {"m2.csv", hash},
                  {"b1.csv", hash},
                  {"jost_report.txt", hash}},
                 out + "/manifest.csv");
  std::cout << "jost: C_b1 " << kb.c_b1 << ", C_b1' " << kb.c_b1_prime << "\n";
  return 0;
}

int cmd_waveop(const CommonArgs& a, std::size_t family) {
  const PotentialSpec spec = load_spec(a);
  const std::string out = resolve_out(a);
  const std::string hash = config_hash(a, spec);

  const UniformGrid x = UniformGrid::symmetric(a.xmax, a.dx);
  const SpectralDecomposition d = build_decomposition(spec, make_kgrid(a), x);
  auto fam = probe_family(x, 0.7, 0.75 * a.kmax, family, a.seed);
  double worst_iso = 0.0, worst_wsw = 0.0, worst_wws = 0.0, worst_int = 0.0;
  for (auto& f0 : fam) {
    GridFunction f = band_limit(d, f0);
    const double n = norm_l2(f);
    for (auto& v : f.values) v /= n;
    const GridFunction wf = apply_wplus(d, f);
    worst_iso = std::max(worst_iso, std::abs(norm_l2(wf) - 1.0));
    worst_wsw = std::max(worst_wsw, norm_l2(apply_wplus_star(d, wf) - f));
    worst_wws = std::max(
        worst_wws,
        norm_l2(apply_wplus(d, apply_wplus_star(d, f)) - pc_project(d, f).pcf));
    worst_int = std::max(
        worst_int, intertwining_check(d, f, [](double lam) {
          return std::exp(std::complex<double>{0.0, -lam});
        }));
  }

  // p-sweep of the empirical Sobolev ratio
  std::ofstream sweep(out + "/sobolev_ratio.csv", std::ios::binary);
  sweep << "p,ratio,family_size\n";
  for (double p : {1.5, 2.0, 3.0, 4.0})
    sweep << format_double(p) << ','
          << format_double(sobolev_ratio(d, p, fam)) << ',' << fam.size() << '\n';

  std::ofstream rep(out + "/waveop_report.txt", std::ios::binary);
  rep << "isometry_dev " << format_double(worst_iso) << "\n"
      << "wsw_minus_id " << format_double(worst_wsw) << "\n"
      << "wws_minus_pc " << format_double(worst_wws) << "\n"
      << "intertwining " << format_double(worst_int) << "\n";
  write_manifest({{"sobolev_ratio.csv", hash}, {"waveop_report.txt", hash}},
                 out + "/manifest.csv");
  std::cout << "waveop: |W*Wf-f| " << worst_wsw << ", |WW*f-Pcf| " << worst_wws
            << "\n";
  return 0;
}

int cmd_evolve(const CommonArgs& a, const std::string& mode, double t_final,
               double dt, double sigma, int sign, double strength, double q,
               double L) {
  const std::string out = resolve_out(a);

  if (mode == "linear") {
    const PotentialSpec spec = load_spec(a);
    const std::string hash = config_hash(a, spec);
    if (!spec.pure_delta())
      throw std::runtime_error("evolve --mode linear: pure-delta specs only");
    UniformGrid g = UniformGrid::symmetric(12.0, 0.02);
    GridFunction f(g);
    for (std::size_t i = 0; i < g.n; ++i)
      f[i] = std::exp(-0.5 * g[i] * g[i] / (0.75 * 0.75));
    const double n = norm_l2(f);
    for (auto& v : f.values) v /= n;
    std::vector<double> ts;
    for (double t = 1.0; t <= t_final + 1e-9; t *= 2.2) ts.push_back(t);
    DecayOptions dopts;
    dopts.kmax = a.kmax;
    dopts.dk = 1e-3;
    const DecayReport rep = dispersive_decay_study(spec, f, ts, dopts);
    std::ofstream o1(out + "/decay.csv", std::ios::binary);
    o1 << "t,supnorm\n";
    for (const DecayPoint& p : rep.points)
      o1 << format_double(p.t) << ',' << format_double(p.supnorm) << '\n';
    std::ofstream o2(out + "/decay_report.txt", std::ios::binary);
    o2 << "slope " << format_double(rep.slope) << "\n"
       << "sup_sqrt_t_scaled " << format_double(rep.sup_scaled) << "\n";
    write_manifest({{"decay.csv", hash}, {"decay_report.txt", hash}},
                   out + "/manifest.csv");
    std::cout << "evolve linear: decay slope " << rep.slope << "\n";
    return 0;
  }

  if (mode == "nls") {
    const PotentialSpec spec = load_spec(a);
    const std::string hash = config_hash(a, spec);
    const UniformGrid x = UniformGrid::symmetric(a.xmax, a.dx);
    const SpectralDecomposition d = build_decomposition(spec, make_kgrid(a), x);
    GridFunction u0(x);
    for (std::size_t i = 0; i < x.n; ++i)
      u0[i] = 0.3 * std::exp(-0.5 * (x[i] + 6.0) * (x[i] + 6.0) / 9.0) *
              std::exp(std::complex<double>{0.0, -2.0 * x[i]});
    NLSConfig cfg;
    cfg.sigma = sigma;
    cfg.sign = sign;
    cfg.strength = strength;
    cfg.dt = dt;
    cfg.t_final = t_final;
    cfg.record_every = std::max<std::size_t>(1, static_cast<std::size_t>(0.1 / dt));
    cfg.linear_step = LinearStep::GridEigen;
    const EvolutionTrace tr = nls_solve(d, u0, cfg);
    write_trace_csv(tr, out + "/evolution.csv");
    write_trace_diagnostics_csv(tr, out + "/evolution_diagnostics.csv");
    write_manifest({{"evolution.csv", hash}, {"evolution_diagnostics.csv", hash}},
                   out + "/manifest.csv");
    const double drift =
        std::abs(tr.diagnostics.back().mass - tr.diagnostics[1].mass) /
        tr.diagnostics[1].mass;
    std::cout << "evolve nls: steps " << tr.times.size() << ", relative mass change "
              << drift << (tr.blowup ? " [blow-up signal]" : "") << "\n";
    return 0;
  }

  if (mode == "doublewell") {
    NLSConfig cfg;
    cfg.sigma = sigma;
    cfg.sign = sign;
    cfg.strength = strength;
    cfg.dt = dt;
    cfg.t_final = t_final;
    cfg.record_every = 5;
    cfg.linear_step = LinearStep::GridEigen;
    const DoubleWellResult dw =
        double_well_demo(q, L, cfg, WellRecipe::OneWell, 30.0, 4.0);
    std::ofstream o1(out + "/well_masses.csv", std::ios::binary);
    o1 << "t,left_mass,right_mass\n";
    for (std::size_t s = 0; s < dw.trace.diagnostics.size(); ++s)
      o1 << format_double(dw.trace.diagnostics[s].t) << ','
         << format_double(dw.trace.diagnostics[s].left_mass) << ','
         << format_double(dw.trace.diagnostics[s].right_mass) << '\n';
    write_trace_diagnostics_csv(dw.trace, out + "/well_diagnostics.csv");
    std::ofstream o2(out + "/beat_report.txt", std::ios::binary);
    o2 << "beat_period_linear " << format_double(dw.beat_period_linear) << "\n"
       << "beat_period_measured " << format_double(dw.beat_period_measured) << "\n";
    const std::string hash = fnv1a_hex(std::to_string(q) + "," + std::to_string(L) +
                                       "," + std::to_string(a.seed));
    write_manifest({{"well_masses.csv", hash},
                    {"well_diagnostics.csv", hash},
                    {"beat_report.txt", hash}},
                   out + "/manifest.csv");
    std::cout << "double well: beat measured " << dw.beat_period_measured
              << " vs linear " << dw.beat_period_linear << "\n";
    return 0;
  }

  throw std::runtime_error("evolve: unknown mode '" + mode + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D Schrodinger scattering, spectral and wave-operator toolkit"};
  app.require_subcommand(1);

  CommonArgs sc_args, jo_args, wo_args, ev_args, va_args;
  double rt_tol = 1e-10;
  std::size_t family = 20;
  std::string ev_mode = "nls";
  double t_final = 2.0, dt = 0.01, sigma = 1.0, strength = 1.0, q = 2.0, L = 0.5;
  int sign = +1;
  bool quick = false, no_determinism = false;

  auto* sc = app.add_subcommand("scatter", "transmission/reflection tables");
  add_common(sc, sc_args, true);
  sc->add_option("--tol-unitarity", rt_tol, "unitarity residual gate");

  auto* jo = app.add_subcommand("jost", "Jost solutions, B1 kernel, bound reports");
  add_common(jo, jo_args, true);

  auto* wo = app.add_subcommand("waveop", "wave-operator identity and ratio studies");
  add_common(wo, wo_args, true);
  wo->add_option("--family", family, "probe family size");

  auto* ev = app.add_subcommand("evolve", "linear/NLS evolution and demos");
  add_common(ev, ev_args, false);
  ev->add_option("--mode", ev_mode, "linear | nls | doublewell");
  ev->add_option("--t-final", t_final, "final time");
  ev->add_option("--dt", dt, "time step");
  ev->add_option("--sigma", sigma, "nonlinearity exponent");
  ev->add_option("--sign", sign, "+1 defocusing, -1 focusing");
  ev->add_option("--strength", strength, "nonlinear coupling (0 = linear)");
  ev->add_option("--q", q, "double-well depth parameter");
  ev->add_option("--L", L, "double-well half-separation");

  auto* va = app.add_subcommand("verify-all", "run the acceptance criteria");
  add_common(va, va_args, false);
  va->add_flag("--quick", quick, "reduced grids (smoke/determinism run)");
  va->add_flag("--no-determinism", no_determinism,
               "skip the self-invoking determinism criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (sc->parsed()) return cmd_scatter(sc_args, rt_tol);
    if (jo->parsed()) return cmd_jost(jo_args);
    if (wo->parsed()) return cmd_waveop(wo_args, family);
    if (ev->parsed())
      return cmd_evolve(ev_args, ev_mode, t_final, dt, sigma, sign, strength, q, L);
    if (va->parsed()) {
      VerifyOptions opts;
      opts.seed = va_args.seed;
      opts.quick = quick;
      opts.out_dir = resolve_out(va_args);
      if (!no_determinism) opts.cli_path = fs::canonical("/proc/self/exe").string();
      const auto results = run_acceptance(opts);
      return print_report(results) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
