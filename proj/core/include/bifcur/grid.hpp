#pragma once

#include <map>
#include <string>
#include <vector>

#include "bifcur/moebius.hpp"

namespace bifcur {

// Square-pixel discretization of a rectangular parameter window.
struct ParamGrid {
    Complex center{0.0, 0.0};
    double width = 1.0;
    double height = 1.0;
    int nx = 8;
    int ny = 8;

    ParamGrid() = default;
    ParamGrid(Complex c, double w, double h, int nx_, int ny_);

    double spacing() const { return width / nx; }

    // center of pixel (i, j), i along the real axis
    Complex pixel_center(int i, int j) const {
        return center + Complex(-0.5 * width + (i + 0.5) * spacing(),
                                -0.5 * height + (j + 0.5) * spacing());
    }

    bool operator==(const ParamGrid& other) const = default;
};

// Real-valued field over a grid. -inf values are stored as a sentinel with a
// companion mask.
class ScalarField {
  public:
    static constexpr double kSentinel = -1e300;

    ScalarField() = default;
    explicit ScalarField(const ParamGrid& grid)
        : grid_(grid),
          values_(static_cast<std::size_t>(grid.nx) * grid.ny, 0.0),
          mask_(static_cast<std::size_t>(grid.nx) * grid.ny, 0) {}

    const ParamGrid& grid() const { return grid_; }

    double at(int i, int j) const { return values_[index(i, j)]; }
    bool is_sentinel(int i, int j) const { return mask_[index(i, j)] != 0; }

    void set(int i, int j, double v) {
        values_[index(i, j)] = v;
        mask_[index(i, j)] = 0;
    }
    void set_sentinel(int i, int j) {
        values_[index(i, j)] = kSentinel;
        mask_[index(i, j)] = 1;
    }

    double* data() { return values_.data(); }
    const std::vector<double>& values() const { return values_; }

    // run metadata (potential name, n, m, seed, ...) carried to serialization
    std::map<std::string, std::string>& metadata() { return metadata_; }
    const std::map<std::string, std::string>& metadata() const { return metadata_; }

    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * grid_.nx + i;
    }

  private:
    ParamGrid grid_;
    std::vector<double> values_;
    std::vector<unsigned char> mask_;
    std::map<std::string, std::string> metadata_;
};

// Cell masses of a discrete dd^c over the interior of a grid (the one-pixel
// boundary ring carries no mass).
class MassField {
  public:
    MassField() = default;
    explicit MassField(const ParamGrid& grid)
        : grid_(grid),
          cells_(static_cast<std::size_t>(grid.nx - 2) * (grid.ny - 2), 0.0) {}

    const ParamGrid& grid() const { return grid_; }
    int cells_x() const { return grid_.nx - 2; }
    int cells_y() const { return grid_.ny - 2; }

    // cell (i, j) covers pixel (i+1, j+1) of the grid
    double cell(int i, int j) const { return cells_[index(i, j)]; }
    void set_cell(int i, int j, double v) { cells_[index(i, j)] = v; }
    void add_cell(int i, int j, double v) { cells_[index(i, j)] += v; }

    const std::vector<double>& cells() const { return cells_; }

    // deterministic (fixed-order) total
    double total() const;
    double negative_total() const;

    std::map<std::string, std::string>& metadata() { return metadata_; }
    const std::map<std::string, std::string>& metadata() const { return metadata_; }

    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * (grid_.nx - 2) + i;
    }

  private:
    ParamGrid grid_;
    std::vector<double> cells_;
    std::map<std::string, std::string> metadata_;
};

}  // namespace bifcur
