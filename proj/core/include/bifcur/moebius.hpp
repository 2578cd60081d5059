#pragma once

#include <complex>
#include <utility>

#include "bifcur/errors.hpp"

namespace bifcur {

using Complex = std::complex<double>;

// Point on the Riemann sphere, stored as a unit-norm homogeneous pair.
// [x:y] and [wx:wy] with |w|=1 are the same point.
class RiemannPoint {
  public:
    RiemannPoint() : x_(0.0), y_(1.0) {}  // the origin of the z-chart
    RiemannPoint(Complex x, Complex y);

    static RiemannPoint from_affine(Complex z);
    static RiemannPoint infinity() { return RiemannPoint(1.0, 0.0); }

    Complex x() const { return x_; }
    Complex y() const { return y_; }

    bool is_infinity(double tol = 1e-12) const { return std::abs(y_) <= tol; }
    // Affine coordinate x/y; caller must avoid the point at infinity.
    Complex affine() const { return x_ / y_; }

    // Chordal distance, range [0,2]: 2|x1 y2 - x2 y1| for unit lifts.
    friend double chordal_distance(const RiemannPoint& p, const RiemannPoint& q);

  private:
    Complex x_, y_;
};

enum class MapType { Identity, Parabolic, Elliptic, Loxodromic };

// Element of PSL(2,C). The represented matrix is e^{log_scale} * [[a,b],[c,d]]
// and has determinant 1; the stored entries are kept near unit magnitude so
// arbitrarily long products never overflow. M and -M are the same element.
class MoebiusMap {
  public:
    MoebiusMap() : a_(1), b_(0), c_(0), d_(1), log_scale_(0) {}

    // From an SL(2,C) matrix (det must be 1 within 1e-9 after scaling).
    MoebiusMap(Complex a, Complex b, Complex c, Complex d);

    // From pre-scaled entries with an explicit log scale; renormalizes.
    static MoebiusMap from_scaled(Complex a, Complex b, Complex c, Complex d,
                                  double log_scale);

    static MoebiusMap identity() { return MoebiusMap(); }

    // Stored (descaled) entries; the actual matrix is e^{log_scale} * these.
    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }
    double log_scale() const { return log_scale_; }

    MoebiusMap inverse() const;

    friend MoebiusMap compose(const MoebiusMap& m, const MoebiusMap& n);

    RiemannPoint apply(const RiemannPoint& z) const;

    // (a+d)^2 e^{2 log_scale}; may overflow to inf for extreme products, use
    // tr_squared_log_abs when only the magnitude matters.
    Complex tr_squared() const;
    // log |tr|, exact in log space (never overflows). -inf when tr = 0.
    double trace_log_abs() const;

    // log of the largest singular value of the det-1 representative (>= 0).
    double op_norm_log() const;

    MapType classify(double tau_cls = 1e-9) const;

    bool is_identity(double tau_cls = 1e-9) const {
        return classify(tau_cls) == MapType::Identity;
    }

    // The two fixed points (equal pair when parabolic). Throws
    // IdentityMapError when the map is the identity within tolerance.
    std::pair<RiemannPoint, RiemannPoint> fixed_points(double tau_cls = 1e-9) const;

    // Chordal distance between the fixed points, in [0,2].
    double delta(double tau_cls = 1e-9) const;

    // Projective equality on PSL (sign quotient included).
    bool approx_equal(const MoebiusMap& other, double tol = 1e-9) const;

  private:
    void renormalize();

    Complex a_, b_, c_, d_;
    double log_scale_;
};

MoebiusMap compose(const MoebiusMap& m, const MoebiusMap& n);

// Trace of the commutator M N M^-1 N^-1 of det-1 representatives.
// Well defined on PSL; equals 2 iff M and N share a fixed point.
Complex commutator_trace(const MoebiusMap& m, const MoebiusMap& n);

// log |commutator_trace(m, n) - 2|, computed so that large scales never
// overflow. Returns -inf when the trace is exactly 2 in floating point.
double commutator_trace_minus2_log(const MoebiusMap& m, const MoebiusMap& n);

// Average of log ||gamma z0|| over the sphere (spherical probability measure),
// computed by reducing to diag(sigma, 1/sigma) and adaptive quadrature of
// (1/2) log(sigma^2 u + sigma^-2 (1-u)) on [0,1]; absolute error <= 1e-8.
double integrated_log_norm(const MoebiusMap& m);

bool projectively_equal(const RiemannPoint& p, const RiemannPoint& q, double tol = 1e-9);

}  // namespace bifcur
