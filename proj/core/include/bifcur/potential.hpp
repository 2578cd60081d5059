#pragma once

#include <cstdint>

#include "bifcur/family.hpp"
#include "bifcur/grid.hpp"
#include "bifcur/lyapunov.hpp"

namespace bifcur {

// Discrete dd^c, normalized so that dd^c log|lambda - lambda0| has unit total
// mass: interior cell mass = (1/2pi)(u_E + u_W + u_N + u_S - 4 u_C). Isolated
// sentinel (-inf) cells get their mass from the discrete flux through the
// surrounding 3x3 ring; two adjacent sentinels raise SentinelCluster.
MassField ddc(const ScalarField& field);

// log(||rho_lambda(w) Z0|| / ||Z0||) per pixel.
ScalarField graph_potential_field(const FamilySpec& spec, const Word& w,
                                  const RiemannPoint& z0, const ParamGrid& grid);

// (1/2) log |tr^2(rho_lambda(w)) - t| per pixel; exact zeros become sentinels.
ScalarField trace_potential_field(const FamilySpec& spec, const Word& w, Complex t,
                                  const ParamGrid& grid);

// log |tr[rho_lambda(w), rho_lambda(h)] - 2| per pixel.
ScalarField commutator_potential_field(const FamilySpec& spec, const Word& w,
                                       const Word& h, const ParamGrid& grid);

// Fixed-point-variety potential
//   v(lambda) = (1/2) log(|b|^2 + |c|^2 + (|d-a|^2 + |tr^2 - 4|)/2)
// of the det-1 representative, scale folded in exactly.
ScalarField fixpoint_potential_field(const FamilySpec& spec, const Word& w,
                                     const ParamGrid& grid);
double fixpoint_potential(const MoebiusMap& m);

// Averaged trace potential (1/(2nm)) sum_i log |tr^2(rho_lambda(w_i)) - t|
// over m shared words w_i ~ mu^n; words with constant trace (3-probe test over
// the window) are skipped.
ScalarField averaged_potential_field(const FamilySpec& spec, const WordMeasure& mu,
                                     Complex t, const ParamGrid& grid, int n, int m,
                                     std::uint64_t seed);

// dd^c of the shared-words Lyapunov field: the discrete bifurcation measure.
MassField bif_measure(const FamilySpec& spec, const WordMeasure& mu,
                      const ParamGrid& grid, int n, int m, std::uint64_t seed);

// 3-probe constancy test for lambda -> tr^2(rho_lambda(w)) over a window.
bool trace_is_constant(const FamilySpec& spec, const Word& w, Complex center,
                       double width, double height);
bool commutator_is_degenerate(const FamilySpec& spec, const Word& w, const Word& h,
                              Complex center, double width, double height);

}  // namespace bifcur
