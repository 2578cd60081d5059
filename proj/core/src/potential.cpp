#include "bifcur/potential.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bifcur/parallel.hpp"
#include "bifcur/rng.hpp"

namespace bifcur {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// log |tr^2(m) - t|, or -inf at an exact zero; never overflows.
double log_abs_tr2_minus(const MoebiusMap& m, Complex t) {
    double lt2 = 2.0 * m.trace_log_abs();
    double lt = (std::abs(t) > 0.0) ? std::log(std::abs(t)) : -kInf;
    if (lt2 > 80.0 && lt2 > lt + 40.0) return lt2;  // |tr^2| dominates
    Complex t2 = m.tr_squared();
    double v = std::abs(t2 - t);
    return (v == 0.0) ? -kInf : std::log(v);
}

std::array<Complex, 3> probe_points(Complex center, double width, double height) {
    CounterRng rng(0xB1FC0DE5ull, 7);
    std::array<Complex, 3> out;
    for (auto& p : out)
        p = center + Complex(width * (rng.uniform() - 0.5) * 0.9,
                             height * (rng.uniform() - 0.5) * 0.9);
    return out;
}

}  // namespace

bool trace_is_constant(const FamilySpec& spec, const Word& w, Complex center,
                       double width, double height) {
    auto probes = probe_points(center, width, height);
    // tr^2 at each probe as a (log modulus, unit phase) pair, overflow-safe
    std::array<double, 3> lt2;
    std::array<Complex, 3> phase;
    for (int k = 0; k < 3; ++k) {
        MoebiusMap m = spec.evaluate(w, probes[static_cast<std::size_t>(k)]);
        lt2[static_cast<std::size_t>(k)] = 2.0 * m.trace_log_abs();
        Complex tr = m.a() + m.d();
        double at = std::abs(tr);
        phase[static_cast<std::size_t>(k)] =
            (at > 0.0) ? (tr / at) * (tr / at) : Complex(0.0);
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            std::size_t si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
            if (lt2[si] == -kInf && lt2[sj] == -kInf) continue;
            if (lt2[si] <= 80.0 && lt2[sj] <= 80.0) {
                Complex ti = (lt2[si] == -kInf) ? Complex(0.0)
                                                : phase[si] * std::exp(lt2[si]);
                Complex tj = (lt2[sj] == -kInf) ? Complex(0.0)
                                                : phase[sj] * std::exp(lt2[sj]);
                double scale = std::max({1.0, std::abs(ti), std::abs(tj)});
                if (std::abs(ti - tj) > 1e-10 * scale) return false;
            } else {
                if (std::abs(lt2[si] - lt2[sj]) > 1e-10) return false;
                if (std::abs(phase[si] - phase[sj]) > 1e-10) return false;
            }
        }
    return true;
}

bool commutator_is_degenerate(const FamilySpec& spec, const Word& w, const Word& h,
                              Complex center, double width, double height) {
    auto probes = probe_points(center, width, height);
    for (const Complex& p : probes) {
        MoebiusMap mw = spec.evaluate(w, p);
        MoebiusMap mh = spec.evaluate(h, p);
        if (commutator_trace_minus2_log(mw, mh) > std::log(1e-10)) return false;
    }
    return true;
}

MassField ddc(const ScalarField& field) {
    const ParamGrid& g = field.grid();
    MassField mass(g);
    mass.metadata() = field.metadata();

    // sentinel isolation check: the flux formula reads cells up to Chebyshev
    // distance 2 from a sentinel, so any second sentinel that close is a cluster
    std::vector<std::pair<int, int>> sentinels;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (field.is_sentinel(i, j)) sentinels.emplace_back(i, j);
    for (std::size_t a = 0; a < sentinels.size(); ++a)
        for (std::size_t b = a + 1; b < sentinels.size(); ++b) {
            int dx = std::abs(sentinels[a].first - sentinels[b].first);
            int dy = std::abs(sentinels[a].second - sentinels[b].second);
            if (std::max(dx, dy) <= 2) throw SentinelClusterError();
        }

    // the whole 3x3 block around a sentinel is folded into its flux mass
    auto near_sentinel = [&](int i, int j) {
        for (int dj = -1; dj <= 1; ++dj)
            for (int di = -1; di <= 1; ++di) {
                if (di == 0 && dj == 0) continue;
                int x = i + di, y = j + dj;
                if (x >= 0 && x < g.nx && y >= 0 && y < g.ny &&
                    field.is_sentinel(x, y))
                    return true;
            }
        return false;
    };

    for (int j = 1; j + 1 < g.ny; ++j)
        for (int i = 1; i + 1 < g.nx; ++i) {
            if (field.is_sentinel(i, j)) {
                if (i < 2 || j < 2 || i + 2 >= g.nx || j + 2 >= g.ny) {
                    mass.set_cell(i - 1, j - 1, 0.0);  // flux stencil leaves the grid
                    continue;
                }
                // total 5-point mass over the 3x3 block, by telescoping: the
                // interior edges cancel, leaving the flux across the block rim
                double flux = 0.0;
                for (int x = i - 1; x <= i + 1; ++x) {
                    flux += field.at(x, j + 2) - field.at(x, j + 1);
                    flux += field.at(x, j - 2) - field.at(x, j - 1);
                }
                for (int y = j - 1; y <= j + 1; ++y) {
                    flux += field.at(i + 2, y) - field.at(i + 1, y);
                    flux += field.at(i - 2, y) - field.at(i - 1, y);
                }
                mass.set_cell(i - 1, j - 1, flux / kTwoPi);
            } else if (near_sentinel(i, j)) {
                // accounted for inside the neighboring sentinel's block flux
                mass.set_cell(i - 1, j - 1, 0.0);
            } else {
                double lap = field.at(i + 1, j) + field.at(i - 1, j) +
                             field.at(i, j + 1) + field.at(i, j - 1) -
                             4.0 * field.at(i, j);
                mass.set_cell(i - 1, j - 1, lap / kTwoPi);
            }
        }
    return mass;
}

namespace {

template <typename F>
ScalarField pixel_field(const ParamGrid& grid, F&& per_pixel) {
    ScalarField field(grid);
    std::size_t npx = static_cast<std::size_t>(grid.nx) * grid.ny;
    parallel_for(npx, [&](std::size_t px) {
        int i = static_cast<int>(px % static_cast<std::size_t>(grid.nx));
        int j = static_cast<int>(px / static_cast<std::size_t>(grid.nx));
        double v = per_pixel(grid.pixel_center(i, j));
        if (v == -kInf)
            field.set_sentinel(i, j);
        else
            field.set(i, j, v);
    });
    return field;
}

}  // namespace

ScalarField graph_potential_field(const FamilySpec& spec, const Word& w,
                                  const RiemannPoint& z0, const ParamGrid& grid) {
    ScalarField f = pixel_field(grid, [&](Complex lambda) {
        MoebiusMap m = spec.evaluate(w, lambda);
        Complex wx = m.a() * z0.x() + m.b() * z0.y();
        Complex wy = m.c() * z0.x() + m.d() * z0.y();
        double nrm = std::sqrt(std::norm(wx) + std::norm(wy));
        return nrm > 0.0 ? m.log_scale() + std::log(nrm) : -kInf;
    });
    f.metadata()["potential"] = "graph";
    return f;
}

ScalarField trace_potential_field(const FamilySpec& spec, const Word& w, Complex t,
                                  const ParamGrid& grid) {
    ScalarField f = pixel_field(grid, [&](Complex lambda) {
        double l = log_abs_tr2_minus(spec.evaluate(w, lambda), t);
        return (l == -kInf) ? -kInf : 0.5 * l;
    });
    f.metadata()["potential"] = "trace";
    return f;
}

ScalarField commutator_potential_field(const FamilySpec& spec, const Word& w,
                                       const Word& h, const ParamGrid& grid) {
    ScalarField f = pixel_field(grid, [&](Complex lambda) {
        return commutator_trace_minus2_log(spec.evaluate(w, lambda),
                                           spec.evaluate(h, lambda));
    });
    f.metadata()["potential"] = "commutator";
    return f;
}

double fixpoint_potential(const MoebiusMap& m) {
    double ls = m.log_scale();
    double det_mag = (ls > 350.0) ? 0.0 : std::exp(-2.0 * ls);
    Complex tr = m.a() + m.d();
    double arg = std::norm(m.b()) + std::norm(m.c()) +
                 0.5 * (std::norm(m.d() - m.a()) +
                        std::abs(tr * tr - 4.0 * det_mag));
    if (arg == 0.0) return -kInf;
    return ls + 0.5 * std::log(arg);
}

ScalarField fixpoint_potential_field(const FamilySpec& spec, const Word& w,
                                     const ParamGrid& grid) {
    ScalarField f = pixel_field(grid, [&](Complex lambda) {
        return fixpoint_potential(spec.evaluate(w, lambda));
    });
    f.metadata()["potential"] = "fixpoint";
    return f;
}

ScalarField averaged_potential_field(const FamilySpec& spec, const WordMeasure& mu,
                                     Complex t, const ParamGrid& grid, int n, int m,
                                     std::uint64_t seed) {
    if (n < 1 || m < 1) throw Error("averaged_potential_field: need n, m >= 1");
    WalkSampler sampler(mu, seed, 0);
    std::vector<Word> words;
    words.reserve(static_cast<std::size_t>(m));
    int skipped = 0;
    for (int k = 0; k < m; ++k) {
        Word w = sampler.sample_walk(static_cast<std::size_t>(n));
        if (trace_is_constant(spec, w, grid.center, grid.width, grid.height)) {
            ++skipped;  // [Z(g,t)] = 0 convention: contributes nothing
            continue;
        }
        words.push_back(std::move(w));
    }
    ScalarField f = pixel_field(grid, [&](Complex lambda) {
        FamilySpec::Images img = spec.images_at(lambda);
        double acc = 0.0;
        for (const Word& w : words) {
            double l = log_abs_tr2_minus(FamilySpec::evaluate(img, w), t);
            if (l == -kInf) return -kInf;
            acc += l;
        }
        return acc / (2.0 * n * m);
    });
    f.metadata()["potential"] = "averaged_trace";
    f.metadata()["n"] = std::to_string(n);
    f.metadata()["m"] = std::to_string(m);
    f.metadata()["seed"] = std::to_string(seed);
    f.metadata()["skipped_constant_trace"] = std::to_string(skipped);
    return f;
}

MassField bif_measure(const FamilySpec& spec, const WordMeasure& mu,
                      const ParamGrid& grid, int n, int m, std::uint64_t seed) {
    MassField mass = ddc(chi_field(spec, mu, grid, n, m, seed, true));
    mass.metadata()["measure"] = "bifurcation";
    return mass;
}

}  // namespace bifcur
