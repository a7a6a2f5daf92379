#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gyre/errors.hpp"
#include "gyre/io.hpp"

using namespace gyre;
namespace fs = std::filesystem;

namespace {

fs::path tmp(const std::string& name) {
  fs::create_directories(GYRE_TEST_TMP);
  return fs::path(GYRE_TEST_TMP) / name;
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(FieldCsv, TwoByTwoLayout) {
  const Grid g = Grid::over(2, 2, 0, 2, 0, 4);
  ScalarField f(g, 0.0);
  f(1, 1) = 1;
  f(2, 1) = 2;
  f(1, 2) = 3;
  f(2, 2) = 4;
  const fs::path p = tmp("two.csv");
  write_field_csv(p, {g, 0.5, {"value"}, {f}});
  const auto l = lines(p);
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[0], "# gyre-field nx=2 ny=2 dx=1 dy=2 x0=0 y0=0 t=0.5");
  EXPECT_EQ(l[1], "x,y,value");
  EXPECT_EQ(l[2], "0.5,1,1");
  EXPECT_EQ(l[3], "1.5,1,2");
  EXPECT_EQ(l[4], "0.5,3,3");
  EXPECT_EQ(l[5], "1.5,3,4");
}

TEST(FieldCsv, RoundTripIsBitExact) {
  const Grid g = Grid::over(7, 5, -1.0 / 3.0, 2.0, 0.1, 0.7);
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> d(-1e10, 1e10);
  ScalarField a(g, 0.0), b(g, 0.0);
  a.for_each_interior([&](int i, int j, double& v) {
    v = d(gen) * std::pow(10.0, (i * 7 + j) % 40 - 30);
    b(i, j) = 1.0 / (i + 3.0 * j);
  });
  a(1, 1) = std::numeric_limits<double>::denorm_min();
  a(2, 1) = -0.0;
  a(3, 1) = std::numeric_limits<double>::max();
  const fs::path p = tmp("roundtrip.csv");
  const FieldDump in{g, 1.0 / 7.0, {"a", "b"}, {a, b}};
  write_field_csv(p, in);
  const FieldDump out = read_field_csv(p);
  EXPECT_EQ(out.grid, g);
  EXPECT_EQ(out.t, in.t);
  ASSERT_EQ(out.names, in.names);
  for (std::size_t k = 0; k < 2; ++k)
    in.fields[k].for_each_interior([&](int i, int j, double v) {
      EXPECT_EQ(std::signbit(v), std::signbit(out.fields[k](i, j)));
      EXPECT_EQ(v, out.fields[k](i, j));
    });
}

TEST(FieldCsv, StateDumpRoundTrip) {
  const Grid g = Grid::over(3, 4, 0, 3e5, 0, 4e5);
  ConservedField q(g);
  q.for_each_interior([&](int i, int j, State& s) { s = {500.0 + 0.1 * i, 1.0 / j, -1.0 / (i + j)}; });
  const fs::path p = tmp("state.csv");
  write_field_csv(p, state_dump(q, 86400.0));
  const ConservedField r = state_from_dump(read_field_csv(p));
  EXPECT_EQ(r.grid(), g);
  q.for_each_interior([&](int i, int j, const State& s) { EXPECT_EQ(s, r(i, j)); });
}

TEST(FieldCsv, ReadErrorsNameThePath) {
  const fs::path p = tmp("broken.csv");
  std::ofstream(p) << "# gyre-field nx=2 ny=1 dx=1 dy=1 x0=0 y0=0 t=0\nx,y,c\n0.5,0.5,1\n";
  try {
    read_field_csv(p);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("broken.csv"), std::string::npos);
  }
  EXPECT_THROW(read_field_csv(tmp("does_not_exist.csv")), IoError);
  std::ofstream(tmp("bad_number.csv"))
      << "# gyre-field nx=1 ny=1 dx=1 dy=1 x0=0 y0=0 t=0\nx,y,c\n0.5,0.5,abc\n";
  EXPECT_THROW(read_field_csv(tmp("bad_number.csv")), IoError);
  EXPECT_THROW(FieldDump{}.field("h"), IoError);
}

TEST(FieldVtk, HeaderIsConsistentWithGrid) {
  const Grid g = Grid::over(3, 2, 0, 3e3, 1e3, 3e3);
  ScalarField u(g, 1.0), v(g, -1.0), h(g, 0.25);
  const fs::path p = tmp("field.vtk");
  write_field_vtk(p, {g, 0.0, {"h", "u", "v"}, {h, u, v}}, "u", "v");
  const auto l = lines(p);
  ASSERT_GE(l.size(), 8u);
  EXPECT_EQ(l[0], "# vtk DataFile Version 3.0");
  EXPECT_EQ(l[2], "ASCII");
  EXPECT_EQ(l[3], "DATASET STRUCTURED_POINTS");
  EXPECT_EQ(l[4], "DIMENSIONS 3 2 1");
  EXPECT_EQ(l[5], "ORIGIN 500 1500 0");
  EXPECT_EQ(l[6], "SPACING 1000 1000 1");
  EXPECT_EQ(l[7], "POINT_DATA 6");
  // Each SCALARS block is followed by a lookup table and exactly 6 values.
  int scalars = 0, vectors = 0;
  for (std::size_t k = 8; k < l.size(); ++k) {
    if (l[k].rfind("SCALARS", 0) == 0) {
      ++scalars;
      EXPECT_EQ(l[k + 1], "LOOKUP_TABLE default");
      for (int n = 0; n < 6; ++n) {
        std::istringstream s(l[k + 2 + n]);
        double x;
        EXPECT_TRUE(static_cast<bool>(s >> x));
      }
      EXPECT_TRUE(k + 8 == l.size() || std::isalpha(static_cast<unsigned char>(l[k + 8][0])));
    }
    if (l[k].rfind("VECTORS", 0) == 0) {
      ++vectors;
      EXPECT_EQ(l.size(), k + 7);
      EXPECT_EQ(l[k + 1], "1 -1 0");
    }
  }
  EXPECT_EQ(scalars, 3);
  EXPECT_EQ(vectors, 1);
}

TEST(FieldDumpShape, MismatchedGridIsRejected) {
  const Grid g = Grid::over(3, 2, 0, 1, 0, 1);
  const Grid other = Grid::over(2, 2, 0, 1, 0, 1);
  EXPECT_THROW(write_field_csv(tmp("bad.csv"), {g, 0, {"a"}, {ScalarField(other)}}), IoError);
}
