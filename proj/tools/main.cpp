// Command-line workbench: simulation, charge reports, bracket tables, the
// exact algebra, conformal group actions, field-dependent transforms,
// energy-momentum diagnostics and the full verification suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <random>

#include "cfluid/acceptance.hpp"
#include "cfluid/bargmann.hpp"
#include "cfluid/conformal_matrix.hpp"
#include "cfluid/dynamics.hpp"
#include "cfluid/emtensor.hpp"
#include "cfluid/io.hpp"
#include "cfluid/liealg.hpp"
#include "cfluid/poisson.hpp"
#include "cfluid/schrodinger.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cfluid;

namespace {

struct GridArgs {
  std::size_t n = 512;
  double L = 40.0;
};

struct PotentialArgs {
  std::string kind = "free";  // free | membrane | conformal | power-law
  double c = 0.0;
  double omega = 0.0;
};

Potential make_potential(const PotentialArgs& a) {
  if (a.kind == "free") return Potential::free();
  if (a.kind == "membrane") return Potential::membrane(a.c);
  if (a.kind == "conformal") return Potential::conformal(a.c);
  if (a.kind == "power-law") return Potential::power_law(a.c, a.omega);
  throw Error("unknown potential kind: " + a.kind);
}

FieldPair make_initial(const std::string& preset, const GridArgs& g) {
  if (preset == "standard") return standard_datum(g.n, g.L);
  if (preset == "unit-background") return unit_background_datum(g.n, g.L);
  throw Error("unknown initial-condition preset: " + preset);
}

void write_report(const fs::path& out_dir, const std::string& name,
                  const json& report) {
  fs::create_directories(out_dir);
  io::write_text_atomic(out_dir / (name + ".json"), report.dump(2) + "\n");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int run_simulate(const std::string& preset, const GridArgs& grid,
                 const PotentialArgs& pot_args, double dt, double t_final,
                 std::size_t stride, const fs::path& out) {
  const Potential pot = make_potential(pot_args);
  FieldPair initial = make_initial(preset, grid);
  FieldMap2D traj = evolve(initial, pot, EvolveOptions{dt, t_final, stride, true});
  io::save_trajectory(out, traj, pot, dt, stride);
  std::printf("wrote %zu slices to %s\n", traj.slice_count(),
              out.string().c_str());
  return 0;
}

int run_charges(const fs::path& traj_dir, const fs::path& out) {
  Potential pot;
  FieldMap2D traj = io::load_trajectory(traj_dir, &pot);
  auto rows = conservation_report(traj, pot);

  std::string csv = "generator,initial,final,max_drift\n";
  json items = json::array();
  for (const auto& r : rows) {
    csv += std::string(generator_name(r.g)) + "," + fmt(r.initial) + "," +
           fmt(r.final_value) + "," + fmt(r.max_drift) + "\n";
    items.push_back({{"generator", std::string(generator_name(r.g))},
                     {"initial", r.initial},
                     {"final", r.final_value},
                     {"max_drift", r.max_drift}});
  }
  fs::create_directories(out);
  io::write_text_atomic(out / "charges.csv", csv);
  write_report(out, "charges", json{{"rows", items}});
  for (const auto& r : rows)
    std::printf("%-6s Q0=%+.9e drift=%.3e\n",
                std::string(generator_name(r.g)).c_str(), r.initial,
                r.max_drift);
  return 0;
}

int run_brackets(const PotentialArgs& pot_args, const std::string& state_name,
                 unsigned seed, double t, const fs::path& out) {
  const Potential pot = make_potential(pot_args);
  Grid1D grid(512, 40.0);
  FieldPair state = standard_datum();
  state.t = t;
  if (state_name == "random") {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> center(-4.0, 4.0), width(0.7, 1.2),
        amp(0.2, 0.6), sign01(0.0, 1.0);
    auto bumps = [&](bool signedamp) {
      std::vector<std::array<double, 3>> b;
      for (int i = 0; i < 3; ++i)
        b.push_back({amp(rng) * (signedamp && sign01(rng) < 0.5 ? -1.0 : 1.0),
                     center(rng), width(rng)});
      return b;
    };
    auto rsum = bumps(false), tsum = bumps(true);
    auto eval = [](const std::vector<std::array<double, 3>>& bs, double x) {
      double v = 0.0;
      for (const auto& b : bs)
        v += b[0] * std::exp(-0.5 * (x - b[1]) * (x - b[1]) / (b[2] * b[2]));
      return v;
    };
    state = FieldPair(
        Field1D::from_function(grid, [&](double x) { return eval(rsum, x); }),
        Field1D::from_function(grid, [&](double x) { return eval(tsum, x); }),
        t);
  } else if (state_name != "standard") {
    throw Error("unknown state preset: " + state_name);
  }

  auto checks = poisson::verify_table(state, pot);
  json entries = json::object();
  double worst = 0.0;
  for (const auto& chk : checks) {
    const std::string key = std::string(generator_name(chk.left)) + "," +
                            std::string(generator_name(chk.right));
    entries[key] = {{"lhs", chk.lhs}, {"rhs", chk.rhs}, {"residual", chk.residual}};
    worst = std::max(worst, chk.residual);
  }
  write_report(out, "brackets",
               json{{"potential", io::potential_kind_name(pot)},
                    {"state", state_name},
                    {"seed", seed},
                    {"t", t},
                    {"max_residual", worst},
                    {"pairs", entries}});
  std::printf("45 pairs, max residual %.3e\n", worst);
  return worst < 1e-7 ? 0 : 1;
}

int run_algebra(const fs::path& out) {
  auto table = liealg::structure_table();
  json entries = json::array();
  for (const auto& e : table.entries) {
    json rhs = json::object();
    for (std::size_t i = 0; i < kGenerators.size(); ++i)
      if (!e.coeffs[i].is_zero())
        rhs[std::string(generator_name(kGenerators[i]))] = e.coeffs[i].str();
    entries.push_back({{"left", std::string(generator_name(e.left))},
                       {"right", std::string(generator_name(e.right))},
                       {"bracket", rhs}});
  }
  auto dict = liealg::dictionary_check();
  json factors = json::object();
  for (Generator g : kGenerators) {
    auto lam = liealg::conformal_factor(liealg::generator_field(g));
    factors[std::string(generator_name(g))] = lam ? lam->str() : "not conformal";
  }
  json report = {{"closed", table.closed},
                 {"sigma", table.sigma},
                 {"sigma_unique", table.sigma_unique},
                 {"dictionary_exact", dict.all_exact},
                 {"conformal_factors", factors},
                 {"structure_table", entries}};
  write_report(out, "algebra", report);
  std::printf("closure=%s sigma=%+d (unique=%s) dictionary=%s\n",
              table.closed ? "yes" : "NO", table.sigma,
              table.sigma_unique ? "yes" : "NO",
              dict.all_exact ? "exact" : "FAILED");
  return (table.closed && table.sigma == 1 && dict.all_exact) ? 0 : 1;
}

int run_conformal(const std::string& gen_name, double parameter, double x,
                  double t, double s) {
  const Generator g = generator_from_name(gen_name);
  const conformal::Vec3 y{x, t, s};
  const conformal::Vec3 closed = conformal::closed_form_action(g, parameter, y);
  const conformal::Vec3 matrix =
      conformal::group_action(conformal::generator_matrix(g, parameter), y);
  json report = {
      {"generator", gen_name},
      {"parameter", parameter},
      {"point", {y.x, y.t, y.s}},
      {"closed_form", {closed.x, closed.t, closed.s}},
      {"matrix_exp", {matrix.x, matrix.t, matrix.s}},
      {"schrodinger_condition",
       conformal::schrodinger_condition(conformal::generator_matrix(g, 1.0))}};
  std::printf("%s\n", report.dump(2).c_str());
  return 0;
}

int run_transform(const fs::path& traj_dir, const std::string& name,
                  double parameter, double query_t, const fs::path& out) {
  Potential pot;
  FieldMap2D traj = io::load_trajectory(traj_dir, &pot);
  SampledSource source(traj);
  Grid1D grid = traj.grid();
  const Generator flow = generator_from_name(name);
  bargmann::SectionSolution sol =
      bargmann::named_transform(flow, parameter, source, grid, query_t);

  std::string csv = "x,x_star,t_star,Theta_star,R_star\n";
  for (std::size_t i = 0; i < grid.n; ++i)
    csv += fmt(grid.x(i)) + "," + fmt(sol.x_star[i]) + "," +
           fmt(sol.t_star[i]) + "," + fmt(sol.theta_star[i]) + "," +
           fmt(sol.R_star[i]) + "\n";
  fs::create_directories(out);
  io::write_text_atomic(out / "transform.csv", csv);
  write_report(out, "transform",
               json{{"name", name},
                    {"parameter", parameter},
                    {"query_t", query_t},
                    {"max_residual", sol.max_residual},
                    {"max_iterations", sol.max_iterations}});
  std::printf("transform %s(%g) at t=%g: max section residual %.3e\n",
              name.c_str(), parameter, query_t, sol.max_residual);
  return 0;
}

int run_emtensor(const fs::path& traj_dir, const fs::path& out) {
  Potential pot;
  FieldMap2D traj = io::load_trajectory(traj_dir, &pot);
  auto res = emtensor::continuity_residual(traj, pot);

  const FieldPair mid = traj.slice(traj.slice_count() / 2);
  emtensor::TensorQ T = emtensor::tensor_Q(mid, pot);
  const Grid1D& g = mid.R.grid();
  std::string csv = "x,T_tt,T_xt,T_tx,T_xx,trace_residual\n";
  Field1D trace = emtensor::trace_check(mid, pot);
  for (std::size_t i = 0; i < g.n; ++i)
    csv += fmt(g.x(i)) + "," + fmt(T.tt[i]) + "," + fmt(T.xt[i]) + "," +
           fmt(T.tx[i]) + "," + fmt(T.xx[i]) + "," + fmt(trace[i]) + "\n";
  fs::create_directories(out);
  io::write_text_atomic(out / "emtensor.csv", csv);

  auto em_check = emtensor::emtensors_check(mid, pot);
  write_report(out, "emtensor",
               json{{"continuity_max_residual", res.max_abs},
                    {"trace_max", trace.max_abs()},
                    {"extended_relation_sigma", em_check.sigma},
                    {"extended_relation_residual", em_check.max_residual}});
  std::printf("continuity max residual %.3e, trace max %.3e\n", res.max_abs,
              trace.max_abs());
  return 0;
}

int run_schrodinger(const GridArgs& grid_args, double dt, double t_final,
                    std::size_t stride, double quintic_c, const fs::path& out) {
  Grid1D grid(grid_args.n, grid_args.L);
  const double k = 2.0 * M_PI * 3.0 / grid.length;
  std::vector<std::complex<double>> psi(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    psi[i] = 0.1 + 0.05 * std::exp(-0.5 * (x - 1.0) * (x - 1.0)) *
                       std::exp(std::complex<double>(0.0, k * x));
  }
  const auto nsteps = static_cast<std::size_t>(std::llround(t_final / dt));
  stride = std::max<std::size_t>(1, std::min(stride, nsteps / 3 + 1));
  nls::WaveTrajectory traj = nls::evolve_nls(
      nls::WaveField(grid, psi, 0.0),
      nls::NlsOptions{dt, t_final, stride, quintic_c});

  // Persist the hydrodynamic transcription in the common manifest format.
  std::vector<std::vector<double>> Rs, Thetas;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    FieldPair s = nls::hydro_decompose(traj.slice(i));
    Rs.push_back(s.R.values());
    Thetas.push_back(s.Theta.values());
  }
  FieldMap2D map(grid, traj.times, std::move(Rs), std::move(Thetas));
  io::save_trajectory(out, map, Potential::quantum_effective(quintic_c), dt,
                      stride);
  std::printf("wrote %zu hydro slices to %s (norm drift %.3e)\n",
              traj.times.size(), out.string().c_str(),
              std::abs(traj.slice(traj.times.size() - 1).norm() -
                       traj.slice(0).norm()));
  return 0;
}

int run_verify_all(const fs::path& out) {
  const auto results = acceptance::run_all();
  bool all_pass = true;
  json criteria = json::array();
  for (const auto& criterion : results) {
    std::printf("%s criterion %s\n", criterion.pass ? "PASS" : "FAIL",
                criterion.name.c_str());
    json items = json::array();
    for (const auto& item : criterion.items)
      items.push_back({{"name", item.name},
                       {"value", item.value},
                       {"bound", item.bound},
                       {"pass", item.pass}});
    criteria.push_back(
        {{"name", criterion.name}, {"pass", criterion.pass}, {"items", items}});
    all_pass = all_pass && criterion.pass;
  }
  write_report(out, "verify-all", json{{"pass", all_pass}, {"criteria", criteria}});
  std::printf("%s\n", all_pass ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification workbench for the 1+1d isentropic fluid and its "
               "hidden conformal symmetry"};
  app.set_config("--config", "", "key-value configuration file");
  app.require_subcommand(1);

  GridArgs grid;
  PotentialArgs pot;
  std::string preset = "standard";
  double dt = 1e-3, t_final = 1.0, query_t = 0.3, parameter = 0.1;
  double px = 1.0, ptime = 0.0, ps = 1.0, quintic_c = 0.0;
  std::size_t stride = 100;
  unsigned seed = 1;
  std::string name = "G", state_name = "standard";
  fs::path out = "out", traj_dir;

  auto add_grid = [&](CLI::App* cmd) {
    cmd->add_option("--n", grid.n, "grid points (power of two)");
    cmd->add_option("--L", grid.L, "domain length");
  };
  auto add_potential = [&](CLI::App* cmd) {
    cmd->add_option("--potential", pot.kind,
                    "free | membrane | conformal | power-law");
    cmd->add_option("--c", pot.c, "potential coefficient");
    cmd->add_option("--omega", pot.omega, "power-law exponent");
  };

  auto* simulate = app.add_subcommand("simulate", "evolve the fluid system");
  add_grid(simulate);
  add_potential(simulate);
  simulate->add_option("--preset", preset, "standard | unit-background");
  simulate->add_option("--dt", dt);
  simulate->add_option("--t-final", t_final);
  simulate->add_option("--stride", stride);
  simulate->add_option("--out", out);

  auto* charges_cmd = app.add_subcommand("charges", "conservation report");
  charges_cmd->add_option("--traj", traj_dir)->required();
  charges_cmd->add_option("--out", out);

  auto* brackets = app.add_subcommand("brackets", "verify the bracket table");
  add_potential(brackets);
  brackets->add_option("--state", state_name, "standard | random");
  brackets->add_option("--seed", seed);
  brackets->add_option("--t", query_t);
  brackets->add_option("--out", out);

  auto* algebra = app.add_subcommand("algebra", "exact structure table");
  algebra->add_option("--out", out);

  auto* conformal_cmd =
      app.add_subcommand("conformal", "finite group action at a point");
  conformal_cmd->add_option("--generator", name)->required();
  conformal_cmd->add_option("--parameter", parameter);
  conformal_cmd->add_option("--x", px);
  conformal_cmd->add_option("--t", ptime);
  conformal_cmd->add_option("--s", ps);

  auto* transform =
      app.add_subcommand("transform", "field-dependent transform of a trajectory");
  transform->add_option("--input", traj_dir)->required();
  transform->add_option("--name", name, "generator tag (H P B N Delta K D G C1 C2)");
  transform->add_option("--parameter", parameter);
  transform->add_option("--query-t", query_t);
  transform->add_option("--out", out);

  auto* emtensor_cmd =
      app.add_subcommand("emtensor", "energy-momentum diagnostics");
  emtensor_cmd->add_option("--traj", traj_dir)->required();
  emtensor_cmd->add_option("--out", out);

  auto* schrodinger_cmd =
      app.add_subcommand("schrodinger", "split-step Schroedinger run");
  add_grid(schrodinger_cmd);
  schrodinger_cmd->add_option("--dt", dt)->default_val(2e-4);
  schrodinger_cmd->add_option("--t-final", t_final)->default_val(0.5);
  schrodinger_cmd->add_option("--stride", stride)->default_val(250);
  schrodinger_cmd->add_option("--quintic-c", quintic_c);
  schrodinger_cmd->add_option("--out", out);

  auto* verify = app.add_subcommand("verify-all", "run the acceptance suite");
  verify->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed())
      return run_simulate(preset, grid, pot, dt, t_final, stride, out);
    if (charges_cmd->parsed()) return run_charges(traj_dir, out);
    if (brackets->parsed())
      return run_brackets(pot, state_name, seed, query_t, out);
    if (algebra->parsed()) return run_algebra(out);
    if (conformal_cmd->parsed())
      return run_conformal(name, parameter, px, ptime, ps);
    if (transform->parsed())
      return run_transform(traj_dir, name, parameter, query_t, out);
    if (emtensor_cmd->parsed()) return run_emtensor(traj_dir, out);
    if (schrodinger_cmd->parsed())
      return run_schrodinger(grid, dt, t_final, stride, quintic_c, out);
    if (verify->parsed()) return run_verify_all(out);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
