#include "bifcur/grid.hpp"

#include <cmath>

namespace bifcur {

ParamGrid::ParamGrid(Complex c, double w, double h, int nx_, int ny_)
    : center(c), width(w), height(h), nx(nx_), ny(ny_) {
    if (nx < 8 || ny < 8) throw ConfigError("ParamGrid: nx, ny must be >= 8");
    if (!(w > 0.0) || !(h > 0.0)) throw ConfigError("ParamGrid: window must have positive size");
    double hx = width / nx, hy = height / ny;
    if (std::abs(hx - hy) > 1e-12 * std::max(hx, hy))
        throw ConfigError("ParamGrid: pixels must be square (width/nx == height/ny)");
}

double MassField::total() const {
    double acc = 0.0;
    for (double v : cells_) acc += v;
    return acc;
}

double MassField::negative_total() const {
    double acc = 0.0;
    for (double v : cells_)
        if (v < 0.0) acc += v;
    return acc;
}

}  // namespace bifcur
