#include "bifcur/experiments.hpp"

#include <cmath>

#include "bifcur/lyapunov.hpp"
#include "bifcur/parallel.hpp"

namespace bifcur {

void wilson_interval(int hits, int samples, double* low, double* high) {
    if (samples <= 0) {
        *low = 0.0;
        *high = 1.0;
        return;
    }
    const double z = 1.959963984540054;  // 97.5% normal quantile
    double n = samples, p = static_cast<double>(hits) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    *low = (hits == 0) ? 0.0 : std::max(0.0, center - half);
    *high = (hits == samples) ? 1.0 : std::min(1.0, center + half);
}

MassField empirical_measure(const PointCloud& cloud, double weight,
                            const ParamGrid& grid, double* overflow) {
    if (!(weight > 0.0)) throw Error("empirical_measure: weight must be positive");
    MassField mass(grid);
    double outside = 0.0;
    double h = grid.spacing();
    double x0 = grid.center.real() - 0.5 * grid.width;
    double y0 = grid.center.imag() - 0.5 * grid.height;
    for (const LocatedZero& z : cloud) {
        double w = weight * z.multiplicity;
        int i = static_cast<int>(std::floor((z.lambda.real() - x0) / h));
        int j = static_cast<int>(std::floor((z.lambda.imag() - y0) / h));
        // MassField cells cover interior pixels only
        if (i >= 1 && i + 1 < grid.nx && j >= 1 && j + 1 < grid.ny)
            mass.add_cell(i - 1, j - 1, w);
        else
            outside += w;
    }
    mass.metadata()["overflow"] = std::to_string(outside);
    if (overflow) *overflow = outside;
    return mass;
}

namespace {

std::vector<double> coarsen_blocks(const MassField& m, int coarsen) {
    int bx = (m.cells_x() + coarsen - 1) / coarsen;
    int by = (m.cells_y() + coarsen - 1) / coarsen;
    std::vector<double> blocks(static_cast<std::size_t>(bx) * by, 0.0);
    for (int j = 0; j < m.cells_y(); ++j)
        for (int i = 0; i < m.cells_x(); ++i)
            blocks[static_cast<std::size_t>(j / coarsen) * bx + i / coarsen] +=
                m.cell(i, j);
    return blocks;
}

}  // namespace

ComparisonReport compare_mass(const MassField& m1, const MassField& m2, int coarsen) {
    if (!(m1.grid() == m2.grid())) throw Error("compare_mass: grids differ");
    if (coarsen < 1) throw Error("compare_mass: coarsen must be >= 1");
    double t1 = m1.total(), t2 = m2.total();
    if (!(t1 > 0.0) || !(t2 > 0.0)) throw DegenerateMeasureError();
    std::vector<double> p = coarsen_blocks(m1, coarsen);
    std::vector<double> q = coarsen_blocks(m2, coarsen);
    ComparisonReport rep;
    rep.coarsen = coarsen;
    double tv = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        p[k] /= t1;
        q[k] /= t2;
        tv += std::abs(p[k] - q[k]);
        rep.block_ratio.push_back(q[k] != 0.0 ? p[k] / q[k] : -1.0);
    }
    rep.tv = 0.5 * tv;
    double mp = 0.0, mq = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        mp += p[k];
        mq += q[k];
    }
    mp /= p.size();
    mq /= q.size();
    double cov = 0.0, vp = 0.0, vq = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        cov += (p[k] - mp) * (q[k] - mq);
        vp += (p[k] - mp) * (p[k] - mp);
        vq += (q[k] - mq) * (q[k] - mq);
    }
    rep.correlation = (vp > 0.0 && vq > 0.0) ? cov / std::sqrt(vp * vq) : 0.0;
    return rep;
}

std::vector<std::uint8_t> type_change_locus(const FamilySpec& spec,
                                            const WordMeasure& mu,
                                            const ParamGrid& grid, int n_max, int m,
                                            std::uint64_t seed) {
    // all prefixes of m seeded walks; nested runs with the same seed sample
    // nested word sets, which makes the mask monotone in n_max and m
    std::vector<Word> words;
    for (int k = 0; k < m; ++k) {
        WalkSampler sampler = WalkSampler(mu, seed, 2).split(static_cast<std::uint64_t>(k));
        Word w;
        std::vector<std::size_t> steps = sampler.sample_steps(static_cast<std::size_t>(n_max));
        for (std::size_t s : steps) {
            w = left_multiply(w, mu.atom(s));
            words.push_back(w);
        }
    }

    std::size_t npx = static_cast<std::size_t>(grid.nx) * grid.ny;
    // per-pixel type codes for every word
    std::vector<std::uint8_t> types(npx * words.size());
    parallel_for(npx, [&](std::size_t px) {
        int i = static_cast<int>(px % static_cast<std::size_t>(grid.nx));
        int j = static_cast<int>(px / static_cast<std::size_t>(grid.nx));
        FamilySpec::Images img = spec.images_at(grid.pixel_center(i, j));
        for (std::size_t k = 0; k < words.size(); ++k) {
            MapType t = FamilySpec::evaluate(img, words[k]).classify();
            types[px * words.size() + k] = static_cast<std::uint8_t>(t);
        }
    });

    std::vector<std::uint8_t> mask(npx, 0);
    auto differs = [&](std::size_t pa, std::size_t pb) {
        for (std::size_t k = 0; k < words.size(); ++k)
            if (types[pa * words.size() + k] != types[pb * words.size() + k])
                return true;
        return false;
    };
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            std::size_t px = static_cast<std::size_t>(j) * grid.nx + i;
            if ((i + 1 < grid.nx && differs(px, px + 1)) ||
                (j + 1 < grid.ny && differs(px, px + static_cast<std::size_t>(grid.nx))))
                mask[px] = 1;
        }
    // symmetrize: a pixel differing from its left/top neighbor is flagged too
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            std::size_t px = static_cast<std::size_t>(j) * grid.nx + i;
            if ((i > 0 && mask[px - 1] && differs(px, px - 1)) ||
                (j > 0 && mask[px - static_cast<std::size_t>(grid.nx)] &&
                 differs(px, px - static_cast<std::size_t>(grid.nx))))
                mask[px] = 1;
        }
    return mask;
}

double EpsilonRule::eps(int n) const {
    if (kind == PowerLaw) return c * std::pow(static_cast<double>(n), -alpha);
    return std::exp(-gamma * n);
}

EpsilonRule EpsilonRule::power(double c, double alpha) {
    EpsilonRule r;
    r.kind = PowerLaw;
    r.c = c;
    r.alpha = alpha;
    return r;
}

EpsilonRule EpsilonRule::exponential(double gamma) {
    EpsilonRule r;
    r.kind = Exponential;
    r.gamma = gamma;
    return r;
}

DecayTable delta_statistics(const FamilySpec& spec, const WordMeasure& mu,
                            Complex lambda, const std::vector<int>& n_list,
                            const EpsilonRule& rule, int m, std::uint64_t seed) {
    FamilySpec::Images img = spec.images_at(lambda);
    std::vector<MoebiusMap> atoms;
    for (std::size_t i = 0; i < mu.size(); ++i)
        atoms.push_back(FamilySpec::evaluate(img, mu.atom(i)));

    DecayTable table;
    for (int n : n_list) {
        double eps = rule.eps(n);
        std::vector<std::uint8_t> hit(static_cast<std::size_t>(m), 0);
        parallel_for(static_cast<std::size_t>(m), [&](std::size_t k) {
            WalkSampler sampler = WalkSampler(mu, seed, 3).split(
                (static_cast<std::uint64_t>(n) << 32) | k);
            std::vector<std::size_t> steps = sampler.sample_steps(static_cast<std::size_t>(n));
            MoebiusMap acc;
            for (std::size_t s : steps) acc = compose(atoms[s], acc);
            double d;
            try {
                d = acc.delta();
            } catch (const IdentityMapError&) {
                d = 0.0;  // identity: fixed points everywhere, not separated
            }
            hit[k] = (d < eps) ? 1 : 0;
        });
        int hits = 0;
        for (std::uint8_t h : hit) hits += h;
        DecayRow row;
        row.n = n;
        row.hits = hits;
        row.samples = m;
        row.estimate = static_cast<double>(hits) / m;
        wilson_interval(hits, m, &row.wilson_low, &row.wilson_high);
        table.push_back(row);
    }
    return table;
}

DecayTable trace_ld_statistics(const FamilySpec& spec, const WordMeasure& mu,
                               Complex lambda, double eps,
                               const std::vector<int>& n_list, int m,
                               std::uint64_t seed) {
    if (!(eps > 0.0)) throw Error("trace_ld_statistics: eps must be positive");
    int n_max = 0;
    for (int n : n_list) n_max = std::max(n_max, n);
    ChiEstimate ref = chi_norm_estimate(spec, mu, lambda, 4 * n_max,
                                        std::max(200, m / 4),
                                        WalkSampler(mu, seed, 4));
    FamilySpec::Images img = spec.images_at(lambda);
    std::vector<MoebiusMap> atoms;
    for (std::size_t i = 0; i < mu.size(); ++i)
        atoms.push_back(FamilySpec::evaluate(img, mu.atom(i)));

    DecayTable table;
    for (int n : n_list) {
        std::vector<std::uint8_t> hit(static_cast<std::size_t>(m), 0);
        parallel_for(static_cast<std::size_t>(m), [&](std::size_t k) {
            WalkSampler sampler = WalkSampler(mu, seed, 5).split(
                (static_cast<std::uint64_t>(n) << 32) | k);
            std::vector<std::size_t> steps = sampler.sample_steps(static_cast<std::size_t>(n));
            MoebiusMap acc;
            for (std::size_t s : steps) acc = compose(atoms[s], acc);
            double lt = acc.trace_log_abs();  // log |tr| of the det-1 representative
            double dev = std::abs(lt / n - ref.value);
            hit[k] = (dev > eps) ? 1 : 0;
        });
        int hits = 0;
        for (std::uint8_t h : hit) hits += h;
        DecayRow row;
        row.n = n;
        row.hits = hits;
        row.samples = m;
        row.estimate = static_cast<double>(hits) / m;
        wilson_interval(hits, m, &row.wilson_low, &row.wilson_high);
        table.push_back(row);
    }
    return table;
}

double pair_separation_stats(const FamilySpec& spec, const WordMeasure& mu,
                             Complex lambda, double gamma, int n, int m,
                             std::uint64_t seed) {
    if (!(gamma > 0.0)) throw Error("pair_separation_stats: gamma must be positive");
    FamilySpec::Images img = spec.images_at(lambda);
    std::vector<MoebiusMap> atoms;
    for (std::size_t i = 0; i < mu.size(); ++i)
        atoms.push_back(FamilySpec::evaluate(img, mu.atom(i)));
    double threshold = std::exp(-gamma * n);

    std::vector<std::uint8_t> violated(static_cast<std::size_t>(m), 0);
    parallel_for(static_cast<std::size_t>(m), [&](std::size_t k) {
        auto walk = [&](std::uint64_t stream_id) {
            WalkSampler sampler = WalkSampler(mu, seed, 6).split(stream_id);
            std::vector<std::size_t> steps = sampler.sample_steps(static_cast<std::size_t>(n));
            MoebiusMap acc;
            for (std::size_t s : steps) acc = compose(atoms[s], acc);
            return acc;
        };
        MoebiusMap g1 = walk(2 * k);
        MoebiusMap g2 = walk(2 * k + 1);
        bool ok = g1.classify() == MapType::Loxodromic &&
                  g2.classify() == MapType::Loxodromic;
        if (ok) {
            auto [p1, p2] = g1.fixed_points();
            auto [q1, q2] = g2.fixed_points();
            const RiemannPoint pts[4] = {p1, p2, q1, q2};
            for (int a = 0; a < 4 && ok; ++a)
                for (int b = a + 1; b < 4 && ok; ++b)
                    if (chordal_distance(pts[a], pts[b]) < threshold) ok = false;
        }
        violated[k] = ok ? 0 : 1;
    });
    int count = 0;
    for (std::uint8_t v : violated) count += v;
    return static_cast<double>(count) / m;
}

}  // namespace bifcur
