#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bifcur/family.hpp"
#include "bifcur/grid.hpp"
#include "bifcur/zeros_types.hpp"

namespace bifcur {

// Binned comparison of two mass distributions on the same grid.
struct ComparisonReport {
    double tv = 0.0;           // binned total-variation distance, [0,1]
    double correlation = 0.0;  // Pearson over blocks, [-1,1]
    int coarsen = 1;
    std::vector<double> block_ratio;  // p/q per block (q > 0 blocks; else -1)
    std::string settings;             // settings snapshot (JSON text)
};

struct DecayRow {
    int n = 0;
    double estimate = 0.0;  // point estimate of the probability
    int hits = 0;
    int samples = 0;
    double wilson_low = 0.0;  // 95% Wilson interval
    double wilson_high = 1.0;
};

using DecayTable = std::vector<DecayRow>;

// 95% Wilson score interval for hits out of samples.
void wilson_interval(int hits, int samples, double* low, double* high);

// Bin located zeros (x multiplicity x weight) into grid cells; points falling
// outside the interior are accumulated in *overflow.
MassField empirical_measure(const PointCloud& cloud, double weight,
                            const ParamGrid& grid, double* overflow = nullptr);

// Normalize both to total 1, coarsen by block sums, then TV and correlation.
// Throws DegenerateMeasure when a total is <= 0.
ComparisonReport compare_mass(const MassField& m1, const MassField& m2, int coarsen);

// Pixels where the type of some sampled word differs from an adjacent pixel:
// an independent detector of bifurcation parameters. Words are the prefixes
// l_1..l_{n_max} of m seeded walks; the mask is monotone in (n_max, m) under
// a shared seed.
std::vector<std::uint8_t> type_change_locus(const FamilySpec& spec,
                                            const WordMeasure& mu,
                                            const ParamGrid& grid, int n_max, int m,
                                            std::uint64_t seed);

// Epsilon rule for the fixed-point separation statistics.
struct EpsilonRule {
    enum Kind { PowerLaw, Exponential } kind = PowerLaw;
    double c = 1.0;      // power law: eps_n = c * n^-alpha
    double alpha = 1.0;
    double gamma = 0.1;  // exponential: eps_n = exp(-gamma n)
    double eps(int n) const;
    static EpsilonRule power(double c, double alpha);
    static EpsilonRule exponential(double gamma);
};

// For each n: estimate P(delta(rho_lambda(l_n)) < eps_n) over m walks.
DecayTable delta_statistics(const FamilySpec& spec, const WordMeasure& mu,
                            Complex lambda, const std::vector<int>& n_list,
                            const EpsilonRule& rule, int m, std::uint64_t seed);

// For each n: estimate P(|(1/n) log|tr(rho_lambda(l_n))| - chi_hat| > eps),
// chi_hat from the norm estimator at 4x the largest n.
DecayTable trace_ld_statistics(const FamilySpec& spec, const WordMeasure& mu,
                               Complex lambda, double eps,
                               const std::vector<int>& n_list, int m,
                               std::uint64_t seed);

// Fraction of m independent walk pairs violating: both loxodromic and all
// pairwise distances among the four fixed points >= exp(-gamma n).
double pair_separation_stats(const FamilySpec& spec, const WordMeasure& mu,
                             Complex lambda, double gamma, int n, int m,
                             std::uint64_t seed);

}  // namespace bifcur
