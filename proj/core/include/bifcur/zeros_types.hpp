#pragma once

#include <vector>

#include "bifcur/moebius.hpp"

namespace bifcur {

// Axis-aligned rectangle in the parameter plane.
struct Box {
    Complex center{0.0, 0.0};
    double half_width = 1.0;
    double half_height = 1.0;

    double left() const { return center.real() - half_width; }
    double right() const { return center.real() + half_width; }
    double bottom() const { return center.imag() - half_height; }
    double top() const { return center.imag() + half_height; }
    double diameter() const { return 2.0 * std::sqrt(half_width * half_width +
                                                     half_height * half_height); }
    bool contains(Complex z) const {
        return z.real() >= left() && z.real() <= right() && z.imag() >= bottom() &&
               z.imag() <= top();
    }
};

struct LocatedZero {
    Complex lambda{0.0, 0.0};
    int multiplicity = 1;
    double residual = 0.0;
};

// Zeros with multiplicity, sorted by real then imaginary part.
using PointCloud = std::vector<LocatedZero>;

}  // namespace bifcur
