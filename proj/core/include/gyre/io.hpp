#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gyre/state.hpp"

namespace gyre {

/// Named scalar fields on one grid at one time.
struct FieldDump {
  Grid grid;
  double t = 0.0;
  std::vector<std::string> names;
  std::vector<ScalarField> fields;

  const ScalarField& field(const std::string& name) const;
};

// CSV layout:
//   # gyre-field nx=<nx> ny=<ny> dx=<dx> dy=<dy> x0=<x0> y0=<y0> t=<t>
//   x,y,<name>...
//   one row per interior cell, j outer and i inner, %.17g values.

void write_field_csv(const std::filesystem::path& path, const FieldDump& dump);
FieldDump read_field_csv(const std::filesystem::path& path);

/// Legacy ASCII STRUCTURED_POINTS with points at cell centers. When `vector_u`
/// and `vector_v` name fields of the dump, they are also written as VECTORS.
void write_field_vtk(const std::filesystem::path& path, const FieldDump& dump,
                     const std::string& vector_u = {},
                     const std::string& vector_v = {});

/// h, hu, hv of every interior cell as a field dump.
FieldDump state_dump(const ConservedField& q, double t);
ConservedField state_from_dump(const FieldDump& dump);

/// Copies interior cells of a scalar field into a dump-ready field.
ScalarField interior_copy(const ScalarField& s);

}  // namespace gyre
