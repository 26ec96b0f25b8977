#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cfluid/dynamics.hpp"
#include "cfluid/io.hpp"

using namespace cfluid;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "cfluid_io_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("snapshot round trip is bit-exact") {
  TempDir tmp;
  FieldPair s = standard_datum(64, 10.0);
  s.t = 0.375;
  io::save_snapshot(tmp.path / "state.csv", s);
  FieldPair back = io::load_snapshot(tmp.path / "state.csv");
  CHECK(back.t == s.t);
  for (std::size_t i = 0; i < s.R.grid().n; ++i) {
    CHECK(back.R[i] == s.R[i]);
    CHECK(back.Theta[i] == s.Theta[i]);
  }
}

TEST_CASE("trajectory round trip keeps the manifest and the slices") {
  TempDir tmp;
  FieldPair s = standard_datum(64, 10.0);
  EvolveOptions opts{1e-3, 0.02, 5, true};
  FieldMap2D traj = evolve(s, Potential::conformal(0.5), opts);
  io::save_trajectory(tmp.path / "traj", traj, Potential::conformal(0.5),
                      opts.dt, opts.stride);

  Potential pot;
  FieldMap2D back = io::load_trajectory(tmp.path / "traj", &pot);
  CHECK(pot.kind == PotentialKind::PowerLaw);
  CHECK(pot.omega == 3.0);
  CHECK(back.slice_count() == traj.slice_count());
  for (std::size_t k = 0; k < traj.slice_count(); ++k) {
    CHECK(back.times()[k] == traj.times()[k]);
    FieldPair a = traj.slice(k), b = back.slice(k);
    for (std::size_t i = 0; i < a.R.grid().n; ++i) {
      CHECK(a.R[i] == b.R[i]);
      CHECK(a.Theta[i] == b.Theta[i]);
    }
  }
}

TEST_CASE("csv output is deterministic across runs") {
  TempDir tmp;
  FieldPair s = standard_datum(64, 10.0);
  io::save_snapshot(tmp.path / "a.csv", s);
  io::save_snapshot(tmp.path / "b.csv", s);
  std::ifstream fa(tmp.path / "a.csv"), fb(tmp.path / "b.csv");
  std::string a((std::istreambuf_iterator<char>(fa)),
                std::istreambuf_iterator<char>());
  std::string b((std::istreambuf_iterator<char>(fb)),
                std::istreambuf_iterator<char>());
  CHECK(a == b);
  CHECK(a.substr(0, 10) == "x,R,Theta\n");
}

TEST_CASE("atomic write leaves no temporary behind") {
  TempDir tmp;
  io::write_text_atomic(tmp.path / "report.json", "{}\n");
  CHECK(fs::exists(tmp.path / "report.json"));
  CHECK_FALSE(fs::exists(tmp.path / "report.json.tmp"));
}
