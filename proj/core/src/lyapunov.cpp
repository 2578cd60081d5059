#include "bifcur/lyapunov.hpp"

#include <cmath>

#include "bifcur/parallel.hpp"

namespace bifcur {

namespace {

ChiEstimate from_samples(const std::vector<double>& xs, int n) {
    ChiEstimate e;
    e.n = n;
    e.m = static_cast<int>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var = xs.size() > 1 ? var / (xs.size() - 1) : 0.0;
    e.value = mean;
    e.stderr_ = std::sqrt(var / xs.size());
    return e;
}

// images of the measure's atoms at a fixed parameter
std::vector<MoebiusMap> atom_images(const FamilySpec& spec, const WordMeasure& mu,
                                    Complex lambda) {
    FamilySpec::Images img = spec.images_at(lambda);
    std::vector<MoebiusMap> out;
    out.reserve(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i)
        out.push_back(FamilySpec::evaluate(img, mu.atom(i)));
    return out;
}

}  // namespace

ChiEstimate chi_norm_estimate(const FamilySpec& spec, const WordMeasure& mu,
                              Complex lambda, int n, int m, WalkSampler sampler) {
    if (n < 1 || m < 1) throw Error("chi_norm_estimate: need n, m >= 1");
    std::vector<MoebiusMap> atoms = atom_images(spec, mu, lambda);
    std::vector<double> xs(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        std::vector<std::size_t> steps = sampler.sample_steps(static_cast<std::size_t>(n));
        MoebiusMap acc;
        for (std::size_t s : steps) acc = compose(atoms[s], acc);  // left walk
        xs[static_cast<std::size_t>(k)] = acc.op_norm_log() / n;
    }
    return from_samples(xs, n);
}

ChiEstimate chi_furstenberg_estimate(const FamilySpec& spec, const WordMeasure& mu,
                                     Complex lambda, int n_burn, int n_samples,
                                     WalkSampler sampler) {
    if (n_burn < 0 || n_samples < 1)
        throw Error("chi_furstenberg_estimate: need n_burn >= 0, n_samples >= 1");
    std::vector<MoebiusMap> atoms = atom_images(spec, mu, lambda);
    RiemannPoint z = RiemannPoint::from_affine(Complex(1.0, 0.0));
    auto step_log = [&](const MoebiusMap& g, RiemannPoint& zz) {
        // log ||g Z|| for the unit lift Z of zz; also advances the chain
        Complex wx = g.a() * zz.x() + g.b() * zz.y();
        Complex wy = g.c() * zz.x() + g.d() * zz.y();
        double nrm = std::sqrt(std::norm(wx) + std::norm(wy));
        zz = RiemannPoint(wx, wy);
        return g.log_scale() + std::log(nrm);
    };
    for (int k = 0; k < n_burn; ++k) {
        std::vector<std::size_t> s = sampler.sample_steps(1);
        step_log(atoms[s[0]], z);
    }
    std::vector<double> xs(static_cast<std::size_t>(n_samples));
    for (int k = 0; k < n_samples; ++k) {
        std::vector<std::size_t> s = sampler.sample_steps(1);
        xs[static_cast<std::size_t>(k)] = step_log(atoms[s[0]], z);
    }
    ChiEstimate e = from_samples(xs, 1);
    e.n = n_samples;
    e.m = n_samples;
    return e;
}

ScalarField chi_field(const FamilySpec& spec, const WordMeasure& mu,
                      const ParamGrid& grid, int n, int m, std::uint64_t seed,
                      bool shared_words) {
    if (n < 1 || m < 1) throw Error("chi_field: need n, m >= 1");
    ScalarField field(grid);
    field.metadata()["potential"] = "chi";
    field.metadata()["n"] = std::to_string(n);
    field.metadata()["m"] = std::to_string(m);
    field.metadata()["seed"] = std::to_string(seed);
    field.metadata()["shared_words"] = shared_words ? "1" : "0";

    std::size_t npx = static_cast<std::size_t>(grid.nx) * grid.ny;
    if (shared_words) {
        WalkSampler sampler(mu, seed, 0);
        std::vector<std::vector<std::size_t>> walks;
        walks.reserve(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k)
            walks.push_back(sampler.sample_steps(static_cast<std::size_t>(n)));
        parallel_for(npx, [&](std::size_t px) {
            int i = static_cast<int>(px % static_cast<std::size_t>(grid.nx));
            int j = static_cast<int>(px / static_cast<std::size_t>(grid.nx));
            std::vector<MoebiusMap> atoms = atom_images(spec, mu, grid.pixel_center(i, j));
            double acc = 0.0;
            for (const auto& w : walks) {
                MoebiusMap prod;
                for (std::size_t s : w) prod = compose(atoms[s], prod);
                acc += prod.op_norm_log();
            }
            field.set(i, j, acc / (static_cast<double>(n) * m));
        });
    } else {
        parallel_for(npx, [&](std::size_t px) {
            int i = static_cast<int>(px % static_cast<std::size_t>(grid.nx));
            int j = static_cast<int>(px / static_cast<std::size_t>(grid.nx));
            WalkSampler sampler = WalkSampler(mu, seed, 1).split(px + 1);
            std::vector<MoebiusMap> atoms = atom_images(spec, mu, grid.pixel_center(i, j));
            double acc = 0.0;
            for (int k = 0; k < m; ++k) {
                std::vector<std::size_t> w =
                    sampler.sample_steps(static_cast<std::size_t>(n));
                MoebiusMap prod;
                for (std::size_t s : w) prod = compose(atoms[s], prod);
                acc += prod.op_norm_log();
            }
            field.set(i, j, acc / (static_cast<double>(n) * m));
        });
    }
    return field;
}

std::vector<ScalarField> chi_field_vector_prefixes(
    const FamilySpec& spec, const WordMeasure& mu, const ParamGrid& grid,
    const std::vector<int>& n_list, int m, std::uint64_t seed,
    const RiemannPoint& z0) {
    if (n_list.empty() || m < 1) throw Error("chi_field_vector_prefixes: bad arguments");
    for (std::size_t k = 1; k < n_list.size(); ++k)
        if (n_list[k] <= n_list[k - 1])
            throw Error("chi_field_vector_prefixes: n_list must be increasing");
    int n_max = n_list.back();

    WalkSampler sampler(mu, seed, 0);
    std::vector<std::vector<std::size_t>> walks;
    walks.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        walks.push_back(sampler.sample_steps(static_cast<std::size_t>(n_max)));

    std::vector<ScalarField> fields;
    for (int n : n_list) {
        fields.emplace_back(grid);
        auto& md = fields.back().metadata();
        md["potential"] = "chi_vector";
        md["n"] = std::to_string(n);
        md["m"] = std::to_string(m);
        md["seed"] = std::to_string(seed);
    }

    std::size_t npx = static_cast<std::size_t>(grid.nx) * grid.ny;
    parallel_for(npx, [&](std::size_t px) {
        int i = static_cast<int>(px % static_cast<std::size_t>(grid.nx));
        int j = static_cast<int>(px / static_cast<std::size_t>(grid.nx));
        std::vector<MoebiusMap> atoms = atom_images(spec, mu, grid.pixel_center(i, j));
        std::vector<double> acc(n_list.size(), 0.0);
        for (const auto& w : walks) {
            Complex vx = z0.x(), vy = z0.y();
            double log_norm = 0.0;
            std::size_t next = 0;
            for (int step = 0; step < n_max; ++step) {
                const MoebiusMap& g = atoms[w[static_cast<std::size_t>(step)]];
                Complex nx = g.a() * vx + g.b() * vy;
                Complex ny = g.c() * vx + g.d() * vy;
                double nrm = std::sqrt(std::norm(nx) + std::norm(ny));
                log_norm += g.log_scale() + std::log(nrm);
                vx = nx / nrm;
                vy = ny / nrm;
                while (next < n_list.size() && step + 1 == n_list[next]) {
                    acc[next] += log_norm / n_list[next];
                    ++next;
                }
            }
        }
        for (std::size_t k = 0; k < n_list.size(); ++k)
            fields[k].set(i, j, acc[k] / m);
    });
    return fields;
}

}  // namespace bifcur
