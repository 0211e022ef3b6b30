#include <doctest.h>

#include <filesystem>

#include "schrolet/io.hpp"

using namespace schrolet;

namespace {

std::string tmp(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "schrolet_io_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("radial and sequence csv round trip") {
  auto gr = make_log_grid(-3, 2, 8);
  auto f = RadialFunction::from_fn(gr, [](double w) { return cplx(std::sin(w), w / 3); });
  write_text(tmp("r.csv"), radial_csv(f));
  auto g = read_radial_csv(tmp("r.csv"), gr);
  for (std::size_t p = 0; p < gr.size(); ++p) CHECK(g[p] == f[p]);
  CHECK_THROWS_AS(read_radial_csv(tmp("r.csv"), make_log_grid(-3, 2, 4)), Error);

  auto s = SequenceSignal::labels_3d(gr, 2);
  s.comps[2][3][5] = cplx(0.1, -7e-300);
  s.comps[0][0][0] = 1.0 / 3;
  write_text(tmp("s.csv"), sequence_csv(s));
  auto t = read_sequence_csv(tmp("s.csv"), SequenceSignal::labels_3d(gr, 2));
  CHECK(max_abs_diff(s, t) == 0.0);
}

TEST_CASE("cartesian round trip") {
  auto f = CartesianSignal::from_fn(2, 8, 1.5, [](const Eigen::Vector3d& x) { return cplx(x(0), x(1) * x(1)); });
  write_cartesian(tmp("c"), f);
  auto g = read_cartesian(tmp("c"));
  CHECK(g.N == 8);
  CHECK(g.values == f.values);
}

TEST_CASE("coefficient table round trip") {
  CoefficientTable c;
  c.grid = {-1, 1, 2, 3};
  c.generator_id = "x";
  c.dropped_mass = {0, 0, 0};
  for (std::size_t i = 0; i < c.grid.size(); ++i) c.c.push_back(cplx(double(i), -1.0 / (i + 1)));
  write_text(tmp("c.csv"), coefficients_csv(c));
  write_text(tmp("c.json"), coefficients_meta(c).dump());
  auto d = read_coefficients(tmp("c.csv"), tmp("c.json"));
  CHECK(d.c == c.c);
  CHECK(d.generator_id == "x");
  auto first = coefficients_csv(c).substr(0, 40);
  CHECK(first.rfind("j,k,l,re,im,abs2\n-1,-2,0,", 0) == 0);
}

TEST_CASE("missing file is an io error") {
  try {
    read_text("/nonexistent/dir/file");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::io);
  }
}
