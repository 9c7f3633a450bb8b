#include "nsch/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "json.hpp"
#include "nsch/diagnostics.hpp"
#include "nsch/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint format is little-endian");

namespace nsch {

namespace {

std::string header_line(const Grid& g, int components) {
    // hand-rolled so the double uses shortest round-trip formatting and the
    // byte stream is reproducible
    std::string h = "{\"dim\":" + std::to_string(g.dim());
    h += ",\"n\":" + std::to_string(g.n());
    h += ",\"box_length\":" + format_double(g.box_length());
    h += ",\"layout\":\"row-major\",\"scalar\":\"float64-little-endian\"";
    h += ",\"kind\":\"physical\",\"components\":" + std::to_string(components);
    h += "}\n";
    return h;
}

void write_block(std::ofstream& out, std::span<const double> vals) {
    out.write(reinterpret_cast<const char*>(vals.data()),
              static_cast<std::streamsize>(vals.size() * sizeof(double)));
}

struct Header {
    Grid grid;
    int components;
};

Header read_header(std::ifstream& in, const std::filesystem::path& path) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("checkpoint: missing header in " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("checkpoint: bad header in " + path.string() + ": " + e.what());
    }
    if (j.value("layout", "") != "row-major" ||
        j.value("scalar", "") != "float64-little-endian" || j.value("kind", "") != "physical")
        throw IoError("checkpoint: unsupported layout in " + path.string());
    Header h{Grid(j.at("dim").get<int>(), j.at("n").get<int>(),
                  j.at("box_length").get<double>()),
             j.value("components", 1)};
    return h;
}

std::vector<double> read_block(std::ifstream& in, std::size_t count,
                               const std::filesystem::path& path) {
    std::vector<double> vals(count);
    in.read(reinterpret_cast<char*>(vals.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != count * sizeof(double))
        throw IoError("checkpoint: truncated sample block in " + path.string());
    return vals;
}

}  // namespace

void write_field(const std::filesystem::path& path, const Field& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("checkpoint: cannot open " + path.string());
    out << header_line(f.grid(), 1);
    write_block(out, f.values());
    if (!out) throw IoError("checkpoint: write failed for " + path.string());
}

void write_field(const std::filesystem::path& path, const VectorField& v) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("checkpoint: cannot open " + path.string());
    out << header_line(v.grid(), v.dim());
    for (int c = 0; c < v.dim(); ++c) write_block(out, v[c].values());
    if (!out) throw IoError("checkpoint: write failed for " + path.string());
}

Field read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("checkpoint: cannot open " + path.string());
    Header h = read_header(in, path);
    if (h.components != 1)
        throw IoError("checkpoint: expected a scalar field in " + path.string());
    return Field::from_physical(h.grid, read_block(in, h.grid.size(), path));
}

VectorField read_vector_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("checkpoint: cannot open " + path.string());
    Header h = read_header(in, path);
    if (h.components != h.grid.dim())
        throw IoError("checkpoint: expected a vector field in " + path.string());
    std::vector<Field> comps;
    comps.reserve(static_cast<std::size_t>(h.components));
    for (int c = 0; c < h.components; ++c)
        comps.push_back(Field::from_physical(h.grid, read_block(in, h.grid.size(), path)));
    return VectorField(std::move(comps));
}

}  // namespace nsch
