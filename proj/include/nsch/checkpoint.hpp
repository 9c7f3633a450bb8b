// checkpoint.hpp: field snapshots on disk.  One JSON header line
//   {"dim":..,"n":..,"box_length":..,"layout":"row-major",
//    "scalar":"float64-little-endian","kind":"physical","components":c}
// followed by the raw row-major sample block; vector fields store their
// components consecutively (component-major).

#ifndef NSCH_CHECKPOINT_HPP
#define NSCH_CHECKPOINT_HPP

#include <filesystem>

#include "nsch/field.hpp"

namespace nsch {

void write_field(const std::filesystem::path& path, const Field& f);
void write_field(const std::filesystem::path& path, const VectorField& v);

Field read_field(const std::filesystem::path& path);
VectorField read_vector_field(const std::filesystem::path& path);

}  // namespace nsch

#endif
