#include "cfluid/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cfluid {
namespace io {

namespace fs = std::filesystem;
using nlohmann::json;

void write_text_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string snapshot_csv(const FieldPair& state) {
  std::ostringstream out;
  out << "x,R,Theta\n";
  const Grid1D& g = state.R.grid();
  for (std::size_t i = 0; i < g.n; ++i)
    out << format_double(g.x(i)) << ',' << format_double(state.R[i]) << ','
        << format_double(state.Theta[i]) << '\n';
  return out.str();
}

fs::path header_path(const fs::path& csv_path) {
  fs::path p = csv_path;
  p.replace_extension(".json");
  return p;
}

}  // namespace

void save_snapshot(const fs::path& csv_path, const FieldPair& state) {
  write_text_atomic(csv_path, snapshot_csv(state));
  json header = {{"n", state.R.grid().n},
                 {"L", state.R.grid().length},
                 {"t", state.t}};
  write_text_atomic(header_path(csv_path), header.dump(2) + "\n");
}

FieldPair load_snapshot(const fs::path& csv_path) {
  std::ifstream hdr(header_path(csv_path));
  if (!hdr) throw Error("missing snapshot header for " + csv_path.string());
  json header = json::parse(hdr);
  Grid1D grid(header.at("n").get<std::size_t>(), header.at("L").get<double>());

  std::ifstream in(csv_path);
  if (!in) throw Error("cannot open " + csv_path.string());
  std::string line;
  std::getline(in, line);  // header row
  std::vector<double> R, Theta;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double x, r, th;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &x, &r, &th) != 3)
      throw Error("malformed snapshot row: " + line);
    R.push_back(r);
    Theta.push_back(th);
  }
  return FieldPair(Field1D(grid, std::move(R)), Field1D(grid, std::move(Theta)),
                   header.at("t").get<double>());
}

std::string potential_kind_name(const Potential& pot) {
  switch (pot.kind) {
    case PotentialKind::Free: return "free";
    case PotentialKind::PowerLaw: return "power_law";
    case PotentialKind::QuantumEffective: return "quantum_effective";
  }
  throw Error("unknown potential kind");
}

Potential potential_from_manifest(const std::string& kind, double c,
                                  double omega) {
  if (kind == "free") return Potential::free();
  if (kind == "power_law") return Potential::power_law(c, omega);
  if (kind == "quantum_effective") return Potential::quantum_effective(c);
  throw Error("unknown potential kind: " + kind);
}

void save_trajectory(const fs::path& dir, const FieldMap2D& traj,
                     const Potential& pot, double dt, std::size_t stride) {
  fs::create_directories(dir);
  json manifest = {
      {"grid", {{"n", traj.grid().n}, {"L", traj.grid().length}}},
      {"potential",
       {{"kind", potential_kind_name(pot)}, {"c", pot.c}, {"omega", pot.omega}}},
      {"dt", dt},
      {"stride", stride},
      {"times", traj.times()}};
  write_text_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
  for (std::size_t i = 0; i < traj.slice_count(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "slice_%05zu.csv", i);
    write_text_atomic(dir / name, snapshot_csv(traj.slice(i)));
  }
}

FieldMap2D load_trajectory(const fs::path& dir, Potential* pot_out) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw Error("missing manifest in " + dir.string());
  json manifest = json::parse(in);
  Grid1D grid(manifest.at("grid").at("n").get<std::size_t>(),
              manifest.at("grid").at("L").get<double>());
  if (pot_out) {
    const auto& p = manifest.at("potential");
    *pot_out = potential_from_manifest(p.at("kind").get<std::string>(),
                                       p.at("c").get<double>(),
                                       p.at("omega").get<double>());
  }
  std::vector<double> times = manifest.at("times").get<std::vector<double>>();
  std::vector<std::vector<double>> Rs, Thetas;
  for (std::size_t i = 0; i < times.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "slice_%05zu.csv", i);
    std::ifstream slice(dir / name);
    if (!slice) throw Error("missing slice " + std::string(name));
    std::string line;
    std::getline(slice, line);
    std::vector<double> R, Theta;
    while (std::getline(slice, line)) {
      if (line.empty()) continue;
      double x, r, th;
      if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &x, &r, &th) != 3)
        throw Error("malformed slice row: " + line);
      R.push_back(r);
      Theta.push_back(th);
    }
    Rs.push_back(std::move(R));
    Thetas.push_back(std::move(Theta));
  }
  return FieldMap2D(grid, std::move(times), std::move(Rs), std::move(Thetas));
}

}  // namespace io
}  // namespace cfluid
