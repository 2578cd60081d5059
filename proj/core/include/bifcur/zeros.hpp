#pragma once

#include <functional>

#include "bifcur/family.hpp"
#include "bifcur/zeros_types.hpp"

namespace bifcur {

// First-order jet of a holomorphic function at a point.
using JetFn = std::function<Jet1(Complex)>;

// Winding number of f along the box boundary = number of zeros inside,
// counted with multiplicity. Boundary sampling starts at 64 points per side
// and doubles until consecutive phase increments stay below pi/2 (cap 2^14);
// a zero on the boundary triggers up to 8 box-expansion jiggles, then
// BoundaryZero.
int count_zeros_box(const JetFn& f, const Box& box);

struct LocateOptions {
    double tol = 1e-9;                 // Newton polish target |f| <= tol
    double cluster_fraction = 1e-7;    // cluster threshold relative to box diameter
    int max_newton_iters = 60;
};

// Adaptive subdivision with winding counts; winding-1 boxes are polished by
// Newton using the jet derivative, clusters below the threshold are reported
// as one point carrying the cluster's winding as multiplicity.
PointCloud locate_zeros(const JetFn& f, const Box& box, double tol);
PointCloud locate_zeros(const JetFn& f, const Box& box, const LocateOptions& opt);

// Jet of lambda -> tr^2(rho_lambda(w)) - t (the true unscaled holomorphic
// function; throws Overflow when the scale exceeds double range).
JetFn trace_jet_fn(const FamilySpec& spec, const Word& w, Complex t);

// Jet of lambda -> tr[rho_lambda(w), rho_lambda(h)] - 2.
JetFn commutator_jet_fn(const FamilySpec& spec, const Word& w, const Word& h);

// Zeros of tr^2(rho_lambda(w)) = t in the box; empty when the trace function
// is constant over the box (3-probe detection, the [Z] = 0 convention).
PointCloud trace_locus(const FamilySpec& spec, const Word& w, Complex t,
                       const Box& box, double tol);

// Zeros of tr[rho_lambda(w), rho_lambda(h)] = 2 (fixed-point collisions);
// empty when the commutator trace is identically 2.
PointCloud collision_locus(const FamilySpec& spec, const Word& w, const Word& h,
                           const Box& box, double tol);

}  // namespace bifcur
