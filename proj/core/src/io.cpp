#include "bifcur/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace bifcur {

namespace {

using nlohmann::json;

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << content;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// 16-bit binary PGM (big-endian sample bytes, per the format)
void write_pgm16(const std::string& path, int w, int h,
                 const std::vector<std::uint16_t>& px) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << "P5\n" << w << " " << h << "\n65535\n";
    for (std::uint16_t v : px) {
        out.put(static_cast<char>(v >> 8));
        out.put(static_cast<char>(v & 0xff));
    }
}

json metadata_json(const std::map<std::string, std::string>& md) {
    json j = json::object();
    for (const auto& [k, v] : md) j[k] = v;
    return j;
}

}  // namespace

FamilySpec load_family_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("family spec file not found: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("family spec " + path + ": " + e.what());
    }
    std::vector<std::string> names;
    std::vector<PolyMatrix> matrices;
    if (!j.contains("generators") || !j["generators"].is_array() ||
        j["generators"].empty())
        throw ConfigError("family spec " + path + ": missing generators array");
    for (const auto& g : j["generators"]) {
        names.push_back(g.at("name").get<std::string>());
        const auto& m = g.at("matrix");
        if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2)
            throw ConfigError("family spec " + path + ": matrix must be 2x2");
        PolyMatrix pm;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                std::vector<Complex> coeffs;
                for (const auto& cf : m[r][c])
                    coeffs.emplace_back(cf.at(0).get<double>(), cf.at(1).get<double>());
                pm[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    PolyC(std::move(coeffs));
            }
        matrices.push_back(pm);
    }
    WindowHint w;
    if (j.contains("window")) {
        const auto& jw = j["window"];
        w.center = Complex(jw.at("center").at(0).get<double>(),
                           jw.at("center").at(1).get<double>());
        w.width = jw.at("width").get<double>();
        w.height = jw.at("height").get<double>();
    }
    try {
        return FamilySpec(std::move(names), std::move(matrices), w);
    } catch (const Error& e) {
        throw ConfigError("family spec " + path + ": " + e.what());
    }
}

WordMeasure load_measure_json(const std::string& json_text, const FamilySpec& spec) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("measure spec: ") + e.what());
    }
    try {
        std::vector<Word> atoms;
        std::vector<double> weights;
        for (const auto& atom : j) {
            atoms.push_back(spec.parse(atom.at("word").get<std::string>()));
            weights.push_back(atom.at("weight").get<double>());
        }
        return WordMeasure(std::move(atoms), std::move(weights));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("measure spec: ") + e.what());
    }
}

void write_field_csv(const ScalarField& field, const std::string& path) {
    std::string out = "lambda_re,lambda_im,value\n";
    const ParamGrid& g = field.grid();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            Complex z = g.pixel_center(i, j);
            out += fmt_double(z.real());
            out += ',';
            out += fmt_double(z.imag());
            out += ',';
            out += field.is_sentinel(i, j) ? "-inf" : fmt_double(field.at(i, j));
            out += '\n';
        }
    write_text(path, out);
}

void write_field_pgm(const ScalarField& field, const std::string& pgm_path,
                     const std::string& sidecar_path) {
    const ParamGrid& g = field.grid();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (field.is_sentinel(i, j)) continue;
            lo = std::min(lo, field.at(i, j));
            hi = std::max(hi, field.at(i, j));
        }
    if (!(hi > lo)) { lo = 0.0; hi = 1.0; }
    std::vector<std::uint16_t> px(static_cast<std::size_t>(g.nx) * g.ny, 0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (field.is_sentinel(i, j)) continue;
            double t = (field.at(i, j) - lo) / (hi - lo);
            // row 0 of the image is the top of the window
            px[static_cast<std::size_t>(g.ny - 1 - j) * g.nx + i] =
                static_cast<std::uint16_t>(std::lround(t * 65535.0));
        }
    write_pgm16(pgm_path, g.nx, g.ny, px);
    json j{{"min", lo}, {"max", hi}, {"metadata", metadata_json(field.metadata())}};
    write_text(sidecar_path, j.dump(2) + "\n");
}

void write_mass_csv(const MassField& mass, const std::string& path) {
    std::string out = "cell_re,cell_im,mass\n";
    const ParamGrid& g = mass.grid();
    for (int j = 0; j < mass.cells_y(); ++j)
        for (int i = 0; i < mass.cells_x(); ++i) {
            Complex z = g.pixel_center(i + 1, j + 1);
            out += fmt_double(z.real());
            out += ',';
            out += fmt_double(z.imag());
            out += ',';
            out += fmt_double(mass.cell(i, j));
            out += '\n';
        }
    write_text(path, out);
}

void write_mass_summary(const MassField& mass, const std::string& path) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : mass.cells()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double total = mass.total();
    double neg = -mass.negative_total();
    double pos = total + neg;
    json j{{"total", total},
           {"min", lo},
           {"max", hi},
           {"negative_fraction", pos > 0.0 ? neg / pos : 0.0},
           {"metadata", metadata_json(mass.metadata())}};
    write_text(path, j.dump(2) + "\n");
}

void write_mass_pgm(const MassField& mass, const std::string& pgm_path,
                    const std::string& sidecar_path) {
    double hi = 0.0;
    for (double v : mass.cells()) hi = std::max(hi, v);
    if (!(hi > 0.0)) hi = 1.0;
    int w = mass.cells_x(), h = mass.cells_y();
    std::vector<std::uint16_t> px(static_cast<std::size_t>(w) * h, 0);
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i) {
            double t = std::max(0.0, mass.cell(i, j)) / hi;
            px[static_cast<std::size_t>(h - 1 - j) * w + i] =
                static_cast<std::uint16_t>(std::lround(t * 65535.0));
        }
    write_pgm16(pgm_path, w, h, px);
    json j{{"min", 0.0}, {"max", hi}, {"metadata", metadata_json(mass.metadata())}};
    write_text(sidecar_path, j.dump(2) + "\n");
}

void write_cloud_json(const PointCloud& cloud, const std::string& path) {
    json arr = json::array();
    for (const LocatedZero& z : cloud)
        arr.push_back({{"re", z.lambda.real()},
                       {"im", z.lambda.imag()},
                       {"mult", z.multiplicity},
                       {"residual", z.residual}});
    write_text(path, arr.dump(2) + "\n");
}

ScalarField read_field_csv(const std::string& path, const ParamGrid& grid) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open: " + path);
    std::string line;
    std::getline(in, line);  // header
    ScalarField field(grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            if (!std::getline(in, line)) throw Error("truncated field CSV: " + path);
            auto c2 = line.rfind(',');
            std::string v = line.substr(c2 + 1);
            if (v == "-inf")
                field.set_sentinel(i, j);
            else
                field.set(i, j, std::stod(v));
        }
    return field;
}

MassField read_mass_csv(const std::string& path, const ParamGrid& grid) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open: " + path);
    std::string line;
    std::getline(in, line);  // header
    MassField mass(grid);
    for (int j = 0; j < mass.cells_y(); ++j)
        for (int i = 0; i < mass.cells_x(); ++i) {
            if (!std::getline(in, line)) throw Error("truncated mass CSV: " + path);
            auto c2 = line.rfind(',');
            mass.set_cell(i, j, std::stod(line.substr(c2 + 1)));
        }
    return mass;
}

void write_mask_pgm(const std::vector<std::uint8_t>& mask, const ParamGrid& grid,
                    const std::string& path) {
    std::vector<std::uint16_t> px(static_cast<std::size_t>(grid.nx) * grid.ny, 0);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            px[static_cast<std::size_t>(grid.ny - 1 - j) * grid.nx + i] =
                mask[static_cast<std::size_t>(j) * grid.nx + i] ? 65535 : 0;
    write_pgm16(path, grid.nx, grid.ny, px);
}

}  // namespace bifcur
