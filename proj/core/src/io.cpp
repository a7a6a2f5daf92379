#include "gyre/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gyre/errors.hpp"

namespace gyre {

const ScalarField& FieldDump::field(const std::string& name) const {
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == name) return fields[k];
  }
  throw IoError("field dump has no field named '" + name + "'");
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void check_shapes(const FieldDump& dump) {
  if (dump.names.size() != dump.fields.size()) {
    throw IoError("field dump names and fields differ in count");
  }
  for (const ScalarField& f : dump.fields) {
    if (!f.grid().same_shape(dump.grid)) {
      throw IoError("field dump holds a field on a different grid");
    }
  }
}

double to_double(std::string_view s, const std::string& where) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError("bad number '" + std::string(s) + "' in " + where);
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

void write_field_csv(const std::filesystem::path& path, const FieldDump& dump) {
  check_shapes(dump);
  std::ofstream out = open_out(path);
  const Grid& g = dump.grid;
  out << "# gyre-field nx=" << g.nx << " ny=" << g.ny << " dx=" << fmt(g.dx)
      << " dy=" << fmt(g.dy) << " x0=" << fmt(g.x0) << " y0=" << fmt(g.y0)
      << " t=" << fmt(dump.t) << '\n';
  out << "x,y";
  for (const std::string& n : dump.names) out << ',' << n;
  out << '\n';
  for (int j = 1; j <= g.ny; ++j) {
    for (int i = 1; i <= g.nx; ++i) {
      out << fmt(g.xc(i)) << ',' << fmt(g.yc(j));
      for (const ScalarField& f : dump.fields) out << ',' << fmt(f(i, j));
      out << '\n';
    }
  }
  if (!out) throw IoError("write failed for " + path.string());
}

FieldDump read_field_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  const std::string where = path.string();
  std::string line;
  if (!std::getline(in, line) || line.rfind("# gyre-field", 0) != 0) {
    throw IoError(where + " does not start with a '# gyre-field' header");
  }
  FieldDump dump;
  Grid& g = dump.grid;
  bool seen[7] = {};
  std::istringstream header(line.substr(12));
  std::string token;
  while (header >> token) {
    const std::size_t eq = token.find('=');
    if (eq == std::string::npos) throw IoError("bad header token '" + token + "' in " + where);
    const std::string key = token.substr(0, eq);
    const std::string_view val = std::string_view(token).substr(eq + 1);
    static const char* keys[] = {"nx", "ny", "dx", "dy", "x0", "y0", "t"};
    int k = 0;
    while (k < 7 && key != keys[k]) ++k;
    if (k == 7) throw IoError("unknown header key '" + key + "' in " + where);
    seen[k] = true;
    const double v = to_double(val, where);
    switch (k) {
      case 0: g.nx = static_cast<int>(v); break;
      case 1: g.ny = static_cast<int>(v); break;
      case 2: g.dx = v; break;
      case 3: g.dy = v; break;
      case 4: g.x0 = v; break;
      case 5: g.y0 = v; break;
      default: dump.t = v; break;
    }
  }
  for (bool s : seen) {
    if (!s) throw IoError("incomplete header in " + where);
  }
  if (g.nx < 1 || g.ny < 1) throw IoError("bad grid size in " + where);

  if (!std::getline(in, line)) throw IoError("missing column header in " + where);
  const auto cols = split(line, ',');
  if (cols.size() < 2 || cols[0] != "x" || cols[1] != "y") {
    throw IoError("column header must start with x,y in " + where);
  }
  for (std::size_t k = 2; k < cols.size(); ++k) {
    dump.names.emplace_back(cols[k]);
    dump.fields.emplace_back(g, 0.0);
  }
  for (int j = 1; j <= g.ny; ++j) {
    for (int i = 1; i <= g.nx; ++i) {
      if (!std::getline(in, line)) throw IoError("too few rows in " + where);
      const auto vals = split(line, ',');
      if (vals.size() != cols.size()) {
        throw IoError("row width mismatch in " + where);
      }
      for (std::size_t k = 2; k < vals.size(); ++k) {
        dump.fields[k - 2](i, j) = to_double(vals[k], where);
      }
    }
  }
  while (std::getline(in, line)) {
    if (!line.empty()) throw IoError("too many rows in " + where);
  }
  return dump;
}

void write_field_vtk(const std::filesystem::path& path, const FieldDump& dump,
                     const std::string& vector_u, const std::string& vector_v) {
  check_shapes(dump);
  std::ofstream out = open_out(path);
  const Grid& g = dump.grid;
  out << "# vtk DataFile Version 3.0\n"
      << "gyre t=" << fmt(dump.t) << '\n'
      << "ASCII\n"
      << "DATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << g.nx << ' ' << g.ny << " 1\n"
      << "ORIGIN " << fmt(g.xc(1)) << ' ' << fmt(g.yc(1)) << " 0\n"
      << "SPACING " << fmt(g.dx) << ' ' << fmt(g.dy) << " 1\n"
      << "POINT_DATA " << static_cast<long>(g.nx) * g.ny << '\n';
  for (std::size_t k = 0; k < dump.names.size(); ++k) {
    out << "SCALARS " << dump.names[k] << " double 1\nLOOKUP_TABLE default\n";
    const ScalarField& f = dump.fields[k];
    for (int j = 1; j <= g.ny; ++j)
      for (int i = 1; i <= g.nx; ++i) out << fmt(f(i, j)) << '\n';
  }
  if (!vector_u.empty() && !vector_v.empty()) {
    const ScalarField& u = dump.field(vector_u);
    const ScalarField& v = dump.field(vector_v);
    out << "VECTORS velocity double\n";
    for (int j = 1; j <= g.ny; ++j)
      for (int i = 1; i <= g.nx; ++i)
        out << fmt(u(i, j)) << ' ' << fmt(v(i, j)) << " 0\n";
  }
  if (!out) throw IoError("write failed for " + path.string());
}

FieldDump state_dump(const ConservedField& q, double t) {
  const Grid& g = q.grid();
  FieldDump dump{g, t, {"h", "hu", "hv"}, {}};
  ScalarField h(g, 0.0), hu(g, 0.0), hv(g, 0.0);
  q.for_each_interior([&](int i, int j, const State& s) {
    h(i, j) = s.h;
    hu(i, j) = s.hu;
    hv(i, j) = s.hv;
  });
  dump.fields = {std::move(h), std::move(hu), std::move(hv)};
  return dump;
}

ConservedField state_from_dump(const FieldDump& dump) {
  const ScalarField& h = dump.field("h");
  const ScalarField& hu = dump.field("hu");
  const ScalarField& hv = dump.field("hv");
  ConservedField q(dump.grid);
  q.for_each_interior([&](int i, int j, State& s) {
    s = {h(i, j), hu(i, j), hv(i, j)};
  });
  return q;
}

ScalarField interior_copy(const ScalarField& s) {
  ScalarField out(s.grid(), 0.0);
  s.for_each_interior([&](int i, int j, double v) { out(i, j) = v; });
  return out;
}

}  // namespace gyre
