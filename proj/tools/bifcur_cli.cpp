// Command-line front end: lyap | bif | zeros | collide | stats | typechange.
// Every run persists its fully resolved configuration (explicit seed included)
// to <out>/resolved_config.json; rerunning with that file reproduces the
// primary outputs byte for byte.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bifcur/experiments.hpp"
#include "bifcur/io.hpp"
#include "bifcur/lyapunov.hpp"
#include "bifcur/potential.hpp"
#include "bifcur/zeros.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bifcur;

namespace {

constexpr std::uint64_t kDefaultSeed = 0xb1fc0de5ull;

struct CommonFlags {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> grid_str;
    std::optional<std::string> preset_name;
    std::optional<double> preset_s;
    std::optional<std::string> family_file;
    std::optional<int> n, m;
    std::optional<std::string> t_str;
    std::optional<std::string> word, word2;
    std::optional<int> k_words;
    std::optional<double> eps, gamma, tol;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--seed", f.seed, "RNG seed (64-bit)");
    cmd->add_option("--grid", f.grid_str, "grid as cx,cy,w,h,nx,ny");
    cmd->add_option("--preset", f.preset_name, "family preset (riley|schottky)");
    cmd->add_option("--preset-s", f.preset_s, "schottky multiplier s");
    cmd->add_option("--family", f.family_file, "family spec file (JSON)");
    cmd->add_option("--n", f.n, "word length / steps");
    cmd->add_option("--m", f.m, "sample count");
    cmd->add_option("--t", f.t_str, "trace target as re,im");
    cmd->add_option("--word", f.word, "explicit word (e.g. ab')");
    cmd->add_option("--word2", f.word2, "second explicit word");
    cmd->add_option("--k", f.k_words, "number of random words");
    cmd->add_option("--eps", f.eps, "deviation threshold");
    cmd->add_option("--gamma", f.gamma, "exponential separation rate");
    cmd->add_option("--tol", f.tol, "zero polish tolerance");
}

std::vector<double> parse_csv_numbers(const std::string& s, std::size_t expect,
                                      const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw ConfigError(what + ": cannot parse number \"" + item + "\"");
        }
    }
    if (out.size() != expect)
        throw ConfigError(what + ": expected " + std::to_string(expect) +
                          " comma-separated values, got " + std::to_string(out.size()));
    return out;
}

// Resolved run configuration. Flags win over config-file values; everything
// has an explicit value after resolution.
struct RunConfig {
    json j;  // the resolved JSON (persisted verbatim)

    FamilySpec family() const {
        const json& fam = j.at("family");
        if (fam.contains("file")) return load_family_json(fam.at("file").get<std::string>());
        return preset(fam.at("preset").get<std::string>(),
                      fam.value("s", 2.0));
    }

    WordMeasure measure(const FamilySpec& spec) const {
        if (j.contains("measure")) return load_measure_json(j.at("measure").dump(), spec);
        return WordMeasure::uniform_symmetric(spec.num_generators());
    }

    ParamGrid grid() const {
        const json& g = j.at("grid");
        try {
            return ParamGrid(Complex(g.at("center").at(0).get<double>(),
                                     g.at("center").at(1).get<double>()),
                             g.at("width").get<double>(), g.at("height").get<double>(),
                             g.at("nx").get<int>(), g.at("ny").get<int>());
        } catch (const Error& e) {
            throw ConfigError(std::string("grid: ") + e.what());
        }
    }

    Box box_from_grid() const {
        ParamGrid g = grid();
        double margin = 2.0 * g.spacing();
        return Box{g.center, 0.5 * g.width - margin, 0.5 * g.height - margin};
    }

    std::uint64_t seed() const { return j.at("seed").get<std::uint64_t>(); }
    int n() const { return j.at("n").get<int>(); }
    int m() const { return j.at("m").get<int>(); }
    Complex t() const {
        return Complex(j.at("t").at(0).get<double>(), j.at("t").at(1).get<double>());
    }
    double tol() const { return j.at("tol").get<double>(); }
    std::string out_dir() const { return j.at("out").get<std::string>(); }
};

RunConfig resolve(const CommonFlags& f, const json& defaults) {
    json j = defaults;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw ConfigError("config file not found: " + f.config_path);
        json file_cfg;
        try {
            in >> file_cfg;
        } catch (const json::exception& e) {
            throw ConfigError("config file " + f.config_path + ": " + e.what());
        }
        j.merge_patch(file_cfg);
    }
    // flags win over file values
    if (f.preset_name) j["family"] = {{"preset", *f.preset_name}};
    if (f.preset_s) j["family"]["s"] = *f.preset_s;
    if (f.family_file) j["family"] = {{"file", *f.family_file}};
    if (f.seed) j["seed"] = *f.seed;
    if (f.n) j["n"] = *f.n;
    if (f.m) j["m"] = *f.m;
    if (f.k_words) j["k"] = *f.k_words;
    if (f.eps) j["eps"] = *f.eps;
    if (f.gamma) j["gamma"] = *f.gamma;
    if (f.tol) j["tol"] = *f.tol;
    if (f.word) j["word"] = *f.word;
    if (f.word2) j["word2"] = *f.word2;
    if (f.t_str) {
        auto v = parse_csv_numbers(*f.t_str, 2, "--t");
        j["t"] = {v[0], v[1]};
    }
    if (f.grid_str) {
        auto v = parse_csv_numbers(*f.grid_str, 6, "--grid");
        j["grid"] = {{"center", {v[0], v[1]}},
                     {"width", v[2]},
                     {"height", v[3]},
                     {"nx", static_cast<int>(v[4])},
                     {"ny", static_cast<int>(v[5])}};
    }
    if (f.out_dir != "out" || !j.contains("out")) j["out"] = f.out_dir;

    if (!j.contains("seed")) j["seed"] = kDefaultSeed;
    if (!j.contains("family")) j["family"] = {{"preset", "riley"}};
    if (!j.contains("grid")) {
        // window hint of the family
        RunConfig probe{j};
        WindowHint w = probe.family().window();
        j["grid"] = {{"center", {w.center.real(), w.center.imag()}},
                     {"width", w.width},
                     {"height", w.height},
                     {"nx", 256},
                     {"ny", 256}};
    }
    return RunConfig{j};
}

void persist(const RunConfig& cfg) {
    fs::create_directories(cfg.out_dir());
    std::ofstream out(fs::path(cfg.out_dir()) / "resolved_config.json");
    out << cfg.j.dump(2) << "\n";
}

json decay_table_json(const DecayTable& t) {
    json rows = json::array();
    for (const DecayRow& r : t)
        rows.push_back({{"n", r.n},
                        {"estimate", r.estimate},
                        {"hits", r.hits},
                        {"samples", r.samples},
                        {"wilson_low", r.wilson_low},
                        {"wilson_high", r.wilson_high}});
    return rows;
}

void print_decay_table(const std::string& name, const DecayTable& t) {
    std::cout << name << "\n    n   estimate   hits/samples   wilson95\n";
    for (const DecayRow& r : t) {
        std::printf("  %5d   %.6f   %d/%d   [%.6f, %.6f]\n", r.n, r.estimate, r.hits,
                    r.samples, r.wilson_low, r.wilson_high);
    }
}

// ---- subcommands ----

int cmd_lyap(const RunConfig& cfg) {
    FamilySpec spec = cfg.family();
    WordMeasure mu = cfg.measure(spec);
    ParamGrid grid = cfg.grid();
    persist(cfg);
    ScalarField chi = chi_field(spec, mu, grid, cfg.n(), cfg.m(), cfg.seed(),
                                cfg.j.value("shared_words", true));
    fs::path out(cfg.out_dir());
    write_field_csv(chi, (out / "chi.csv").string());
    write_field_pgm(chi, (out / "chi.pgm").string(), (out / "chi.json").string());
    std::cout << "wrote " << (out / "chi.csv").string() << "\n";
    return 0;
}

int cmd_bif(const RunConfig& cfg) {
    FamilySpec spec = cfg.family();
    WordMeasure mu = cfg.measure(spec);
    ParamGrid grid = cfg.grid();
    persist(cfg);
    MassField mass = bif_measure(spec, mu, grid, cfg.n(), cfg.m(), cfg.seed());
    fs::path out(cfg.out_dir());
    write_mass_csv(mass, (out / "bif.csv").string());
    write_mass_summary(mass, (out / "bif_summary.json").string());
    write_mass_pgm(mass, (out / "bif.pgm").string(), (out / "bif_sidecar.json").string());
    std::cout << "total mass " << mass.total() << "\n";
    return 0;
}

// shared by zeros and collide
int cmd_loci(const RunConfig& cfg, bool collisions) {
    FamilySpec spec = cfg.family();
    WordMeasure mu = cfg.measure(spec);
    ParamGrid grid = cfg.grid();
    persist(cfg);
    fs::path out(cfg.out_dir());
    Box box = cfg.box_from_grid();
    Complex t = cfg.t();
    int n = cfg.n();

    std::vector<Word> words;
    std::vector<Word> words2;
    if (cfg.j.contains("word")) {
        words.push_back(spec.parse(cfg.j.at("word").get<std::string>()));
        if (collisions) {
            if (!cfg.j.contains("word2"))
                throw ConfigError("collide with --word needs --word2");
            words2.push_back(spec.parse(cfg.j.at("word2").get<std::string>()));
        }
    } else {
        int k = cfg.j.value("k", 10);
        WalkSampler sampler(mu, cfg.seed(), 10);
        for (int i = 0; i < k; ++i) {
            words.push_back(sampler.sample_walk(static_cast<std::size_t>(n)));
            if (collisions)
                words2.push_back(sampler.sample_walk(static_cast<std::size_t>(n)));
        }
    }

    PointCloud all;
    json clouds = json::array();
    for (std::size_t i = 0; i < words.size(); ++i) {
        PointCloud cloud;
        if (collisions) {
            cloud = collision_locus(spec, words[i], words2[i], box, cfg.tol());
        } else {
            cloud = trace_locus(spec, words[i], t, box, cfg.tol());
        }
        if (cloud.empty())
            std::cout << "word " << format_word(words[i], spec.names())
                      << ": empty locus (constant or zero-free)\n";
        json pts = json::array();
        for (const LocatedZero& z : cloud) {
            pts.push_back({{"re", z.lambda.real()},
                           {"im", z.lambda.imag()},
                           {"mult", z.multiplicity},
                           {"residual", z.residual}});
            all.push_back(z);
        }
        clouds.push_back({{"word", format_word(words[i], spec.names())}, {"zeros", pts}});
    }
    std::ofstream((out / (collisions ? "collisions.json" : "zeros.json")).string())
        << clouds.dump(2) << "\n";

    // empirical measure (1/2n per zero, averaged over words) vs a bifurcation
    // measure (cached CSV if provided, else computed here)
    double weight = 1.0 / (2.0 * n * words.size());
    double overflow = 0.0;
    MassField emp = empirical_measure(all, weight, grid, &overflow);
    write_mass_csv(emp, (out / "empirical.csv").string());

    MassField bif;
    if (cfg.j.contains("bif_cache")) {
        bif = read_mass_csv(cfg.j.at("bif_cache").get<std::string>(), grid);
    } else {
        bif = bif_measure(spec, mu, grid, cfg.j.value("n_field", 60),
                          cfg.j.value("m_field", 400), cfg.seed());
        write_mass_csv(bif, (out / "bif.csv").string());
    }
    // settings live in resolved_config.json; repeating them here would tie
    // the report bytes to the output path
    json report;
    try {
        ComparisonReport rep = compare_mass(emp, bif, cfg.j.value("coarsen", 16));
        report = {{"tv", rep.tv},
                  {"correlation", rep.correlation},
                  {"coarsen", rep.coarsen},
                  {"overflow", overflow}};
    } catch (const DegenerateMeasureError&) {
        report = {{"error", "degenerate measure (no zeros in window?)"},
                  {"overflow", overflow}};
    }
    std::ofstream((out / "comparison.json").string()) << report.dump(2) << "\n";
    std::cout << "zeros located: " << all.size() << "\n";
    return 0;
}

int cmd_stats(const RunConfig& cfg) {
    FamilySpec spec = cfg.family();
    WordMeasure mu = cfg.measure(spec);
    persist(cfg);
    fs::path out(cfg.out_dir());
    Complex lambda = cfg.j.contains("lambda")
                         ? Complex(cfg.j.at("lambda").at(0).get<double>(),
                                   cfg.j.at("lambda").at(1).get<double>())
                         : spec.window().center;
    std::vector<int> n_list;
    if (cfg.j.contains("n_list"))
        for (const auto& v : cfg.j.at("n_list")) n_list.push_back(v.get<int>());
    else
        n_list = {25, 50, 100, 200};
    int m = cfg.m();
    double eps = cfg.j.value("eps", 0.2);
    double gamma = cfg.j.value("gamma", 0.1);

    EpsilonRule rule = EpsilonRule::power(1.0, 1.0);
    if (cfg.j.contains("eps_rule")) {
        const json& r = cfg.j.at("eps_rule");
        std::string kind = r.value("kind", "power");
        if (kind == "power")
            rule = EpsilonRule::power(r.value("c", 1.0), r.value("alpha", 1.0));
        else if (kind == "exponential")
            rule = EpsilonRule::exponential(r.value("gamma", 0.1));
        else
            throw ConfigError("eps_rule.kind must be power or exponential");
    }

    DecayTable dstats = delta_statistics(spec, mu, lambda, n_list, rule, m, cfg.seed());
    DecayTable ldstats =
        trace_ld_statistics(spec, mu, lambda, eps, n_list, m, cfg.seed());
    double psep =
        pair_separation_stats(spec, mu, lambda, gamma, n_list.back(), m, cfg.seed());

    print_decay_table("delta statistics (P(delta < eps_n))", dstats);
    print_decay_table("trace large deviations (P(|log|tr||/n - chi| > eps))", ldstats);
    std::cout << "pair separation violation fraction: " << psep << "\n";

    json j{{"delta", decay_table_json(dstats)},
           {"trace_ld", decay_table_json(ldstats)},
           {"pair_separation_violation", psep}};
    std::ofstream((out / "stats.json").string()) << j.dump(2) << "\n";
    return 0;
}

int cmd_typechange(const RunConfig& cfg) {
    FamilySpec spec = cfg.family();
    WordMeasure mu = cfg.measure(spec);
    ParamGrid grid = cfg.grid();
    persist(cfg);
    fs::path out(cfg.out_dir());
    std::vector<std::uint8_t> mask =
        type_change_locus(spec, mu, grid, cfg.n(), cfg.m(), cfg.seed());
    write_mask_pgm(mask, grid, (out / "typechange.pgm").string());
    std::size_t flagged = 0;
    for (std::uint8_t v : mask) flagged += v;
    std::cout << "flagged pixels: " << flagged << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lyapunov exponents and bifurcation measures for holomorphic "
                 "families of PSL(2,C) representations"};
    app.require_subcommand(1);

    CommonFlags flags;
    auto* lyap = app.add_subcommand("lyap", "Lyapunov exponent field");
    auto* bif = app.add_subcommand("bif", "bifurcation measure ddc(chi)");
    auto* zeros = app.add_subcommand("zeros", "trace loci Z(g,t) + comparison");
    auto* collide = app.add_subcommand("collide", "fixed-point collision loci");
    auto* stats = app.add_subcommand("stats", "separation / large-deviation tables");
    auto* typechange = app.add_subcommand("typechange", "type-change locus mask");
    for (auto* cmd : {lyap, bif, zeros, collide, stats, typechange})
        add_common(cmd, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        json defaults{{"n", 50},       {"m", 200},        {"t", {4.0, 0.0}},
                      {"tol", 1e-9},   {"shared_words", true}};
        RunConfig cfg = resolve(flags, defaults);
        if (lyap->parsed()) return cmd_lyap(cfg);
        if (bif->parsed()) return cmd_bif(cfg);
        if (zeros->parsed()) return cmd_loci(cfg, false);
        if (collide->parsed()) return cmd_loci(cfg, true);
        if (stats->parsed()) return cmd_stats(cfg);
        if (typechange->parsed()) return cmd_typechange(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
