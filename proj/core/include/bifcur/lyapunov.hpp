#pragma once

#include <cstdint>
#include <vector>

#include "bifcur/family.hpp"
#include "bifcur/grid.hpp"
#include "bifcur/words.hpp"

namespace bifcur {

struct ChiEstimate {
    double value = 0.0;    // nats per step
    double stderr_ = 0.0;  // sample standard error
    int n = 0;             // walk length
    int m = 0;             // number of samples
};

// Mean over m independent walks of (1/n) log ||rho_lambda(l_n)||.
ChiEstimate chi_norm_estimate(const FamilySpec& spec, const WordMeasure& mu,
                              Complex lambda, int n, int m, WalkSampler sampler);

// Ergodic average of the stationary-chain integrand log(||rho(g) Z|| / ||Z||):
// iterate z_{k+1} = rho(g_k) z_k from a fixed start, discard n_burn steps,
// average the next n_samples.
ChiEstimate chi_furstenberg_estimate(const FamilySpec& spec, const WordMeasure& mu,
                                     Complex lambda, int n_burn, int n_samples,
                                     WalkSampler sampler);

// Lyapunov field over a grid. With shared_words (the default) the same m
// sampled words are evaluated at every pixel, so the field is the exact
// function lambda -> (1/(nm)) sum_i log ||rho_lambda(w_i)||, an average of
// log-norms of holomorphic matrix functions (subharmonic in lambda). With
// shared_words off, fresh words per pixel.
ScalarField chi_field(const FamilySpec& spec, const WordMeasure& mu,
                      const ParamGrid& grid, int n, int m, std::uint64_t seed,
                      bool shared_words = true);

// Vector-norm variant (1/n) log(||rho_lambda(l_n) Z0|| / ||Z0||), evaluated at
// every prefix length in n_list from the same m walks (nested prefixes share
// both the computation and the sampling noise). n_list must be increasing.
std::vector<ScalarField> chi_field_vector_prefixes(
    const FamilySpec& spec, const WordMeasure& mu, const ParamGrid& grid,
    const std::vector<int>& n_list, int m, std::uint64_t seed,
    const RiemannPoint& z0 = RiemannPoint::from_affine(Complex(1.0, 0.0)));

}  // namespace bifcur
