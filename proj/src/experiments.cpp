#include "hlp/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hlp/branching.hpp"
#include "hlp/coalescent.hpp"
#include "hlp/estimators.hpp"
#include "hlp/graphstats.hpp"
#include "hlp/kernel.hpp"
#include "hlp/sampler.hpp"

namespace hlp {

namespace {

constexpr const char* kCodeVersion = "hlperc 1.0.0";
constexpr const char* kCsvSchema = "hlperc-csv-1";

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse_text(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key=value, got '" +
                                        line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config: empty key or value in '" +
                                        line + "'");
        if (!cfg.raw.emplace(key, value).second)
            throw std::invalid_argument("config: duplicate key '" + key + "'");
    }

    auto get = [&](const std::string& k) -> const std::string* {
        auto it = cfg.raw.find(k);
        return it == cfg.raw.end() ? nullptr : &it->second;
    };
    auto as_u64 = [&](const std::string& k, std::uint64_t& dst) {
        if (const std::string* v = get(k)) dst = std::stoull(*v);
    };
    auto as_u32 = [&](const std::string& k, std::uint32_t& dst) {
        if (const std::string* v = get(k))
            dst = static_cast<std::uint32_t>(std::stoul(*v));
    };
    auto as_f64 = [&](const std::string& k, double& dst) {
        if (const std::string* v = get(k)) dst = std::stod(*v);
    };

    as_u32("L", cfg.L);
    as_u32("d", cfg.d);
    as_f64("alpha", cfg.alpha);
    as_f64("A", cfg.A);
    as_f64("theta", cfg.theta);
    as_f64("lambda", cfg.lambda);
    if (const std::string* v = get("n")) {
        for (const std::string& piece : split(*v, ','))
            cfg.n_grid.push_back(static_cast<std::uint32_t>(std::stoul(piece)));
    }
    if (const std::string* v = get("suite")) cfg.suite = *v;
    as_u64("replicates", cfg.replicates);
    as_u64("master_seed", cfg.master_seed);
    if (const std::string* v = get("output_dir")) cfg.output_dir = *v;
    as_u64("size_cap", cfg.size_cap);
    as_u64("height_cap", cfg.height_cap);
    if (const std::string* v = get("surplus_cap"))
        cfg.surplus_cap = std::stoll(*v);
    as_u32("pair_samples", cfg.pair_samples);
    as_u64("exact_cap", cfg.exact_cap);
    as_f64("grid_dt", cfg.grid_dt);
    if (const std::string* v = get("epsilons")) {
        cfg.epsilons.clear();
        for (const std::string& piece : split(*v, ','))
            cfg.epsilons.push_back(std::stod(piece));
    }
    as_u32("torus_m", cfg.torus_m);
    as_f64("theta_prime", cfg.theta_prime);
    return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

void ExperimentConfig::validate() const {
    static const std::vector<std::string> suites = {
        "phase-sweep",  "critical-window", "surplus-girth",
        "diagnostics",  "two-point",       "branching",
        "coalescent-reference", "torus"};
    if (std::find(suites.begin(), suites.end(), suite) == suites.end())
        throw std::invalid_argument("config: unknown suite '" + suite + "'");
    if (n_grid.empty() && suite != "coalescent-reference" && suite != "torus")
        throw std::invalid_argument("config: missing n");
    if (replicates == 0) throw std::invalid_argument("config: replicates == 0");

    KernelSpec kernel{alpha, A, theta, lambda};
    if (suite == "torus") {
        if (torus_m < 2) throw std::invalid_argument("config: torus_m < 2");
        validate_kernel(kernel, d, false);
        return;
    }
    if (suite == "coalescent-reference") return;
    // instantiating the tables runs every kernel-side constraint
    for (std::uint32_t n : n_grid)
        ModelParams::create(LatticeSpec::create(L, d, n), kernel);
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream out;
    for (const auto& [k, v] : raw) out << k << "=" << v << "\n";
    return out.str();
}

std::uint64_t ExperimentConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : canonical_text())
        h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
    return h;
}

CsvWriter::CsvWriter(const std::string& path, const ExperimentConfig& cfg,
                     const std::string& columns)
    : path_(path) {
    if (std::filesystem::exists(path))
        throw std::runtime_error("output exists (write-once): " + path);
    stream_.open(path, std::ios::binary);  // LF endings on every platform
    if (!stream_) throw std::runtime_error("cannot open " + path);
    stream_ << "# schema=" << kCsvSchema << "\n";
    stream_ << "# code_version=" << kCodeVersion << "\n";
    for (const auto& [k, v] : cfg.raw) stream_ << "# " << k << "=" << v << "\n";
    stream_ << "# master_seed=" << cfg.master_seed << "\n";
    stream_ << columns << "\n";
}

void CsvWriter::row(const std::string& line) { stream_ << line << "\n"; }

std::vector<double> read_csv_column(const std::string& path,
                                    const std::string& column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::size_t col = std::string::npos;
    std::vector<double> out;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells = split(line, ',');
        if (col == std::string::npos) {
            for (std::size_t i = 0; i < cells.size(); ++i)
                if (cells[i] == column) col = i;
            if (col == std::string::npos)
                throw std::runtime_error("column '" + column + "' not in " +
                                         path);
            continue;
        }
        if (col >= cells.size())
            throw std::runtime_error("short row in " + path);
        out.push_back(std::stod(cells[col]));
    }
    return out;
}

DistanceReport compare_scalar(const std::vector<double>& a,
                              const std::vector<double>& b, Rng& rng) {
    if (a.size() < 100 || b.size() < 100)
        throw std::invalid_argument("compare: need >= 100 samples per side");
    return bootstrap_ks(a, b, rng);
}

DistanceReport compare_integer(const std::vector<std::int64_t>& a,
                               const std::vector<std::int64_t>& b, Rng& rng) {
    if (a.size() < 100 || b.size() < 100)
        throw std::invalid_argument("compare: need >= 100 samples per side");
    return bootstrap_tv(a, b, rng);
}

FileComparison compare_result_files(const std::string& file_a,
                                    const std::string& file_b,
                                    const std::string& column,
                                    std::uint64_t seed) {
    std::vector<double> a = read_csv_column(file_a, column);
    std::vector<double> b = read_csv_column(file_b, column);
    bool integral = true;
    for (double v : a)
        if (v != std::floor(v)) integral = false;
    for (double v : b)
        if (v != std::floor(v)) integral = false;
    Rng rng(seed);
    FileComparison out;
    out.rows_a = a.size();
    out.rows_b = b.size();
    if (integral) {
        std::vector<std::int64_t> ia(a.begin(), a.end());
        std::vector<std::int64_t> ib(b.begin(), b.end());
        out.statistic = "tv";
        out.report = compare_integer(ia, ib, rng);
    } else {
        out.statistic = "ks";
        out.report = compare_scalar(a, b, rng);
    }
    return out;
}

namespace {

struct SuiteContext {
    const ExperimentConfig& cfg;
    RngPolicy policy;
    RunManifest& manifest;

    std::string out_path(const std::string& name) const {
        return (std::filesystem::path(cfg.output_dir) / name).string();
    }
};

ModelParams make_params(const ExperimentConfig& cfg, std::uint32_t n) {
    KernelSpec kernel{cfg.alpha, cfg.A, cfg.theta, cfg.lambda};
    return ModelParams::create(LatticeSpec::create(cfg.L, cfg.d, n), kernel);
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

void suite_phase_sweep(SuiteContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    KernelSpec kernel{cfg.alpha, cfg.A, cfg.theta, cfg.lambda};
    auto rows = phase_sweep(cfg.L, cfg.d, kernel, cfg.epsilons, cfg.n_grid,
                            cfg.replicates, ctx.policy);
    CsvWriter csv(ctx.out_path("phase.csv"), cfg,
                  "eps,n,c1_median,sub_ratio_max,sup_frac_p5");
    for (const auto& r : rows)
        csv.row(fmt(r.eps) + "," + std::to_string(r.n) + "," +
                fmt(r.c1_median) + "," + fmt(r.sub_ratio_max) + "," +
                fmt(r.sup_frac_p5));
    ctx.manifest.outputs.push_back(csv.path());
    std::cout << "eps\tn\tc1_med\tsub_ratio_max\tsup_frac_p5\n";
    for (const auto& r : rows)
        std::cout << r.eps << "\t" << r.n << "\t" << r.c1_median << "\t"
                  << r.sub_ratio_max << "\t" << r.sup_frac_p5 << "\n";
}

void suite_critical_window(SuiteContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    CsvWriter sizes(ctx.out_path("window_sizes.csv"), cfg,
                    "n,replicate,rank,x");
    CsvWriter c1(ctx.out_path("window_c1.csv"), cfg,
                 "n,replicate,size,x,diam_rescaled,surplus,girth_rescaled");
    for (std::uint32_t n : cfg.n_grid) {
        ModelParams params = make_params(cfg, n);
        double mass_scale = std::pow(
            static_cast<double>(params.lattice.num_vertices), 2.0 / 3.0);
        double len_scale = std::cbrt(
            static_cast<double>(params.lattice.num_vertices));
        std::vector<std::string> size_rows(cfg.replicates), c1_rows(cfg.replicates);
#pragma omp parallel for schedule(dynamic, 4)
        for (std::int64_t rep = 0;
             rep < static_cast<std::int64_t>(cfg.replicates); ++rep) {
            PercolationSample s =
                sample_stratified(params, Stage::Critical, ctx.policy, rep);
            auto comps = components(s);
            std::ostringstream srow;
            for (std::size_t rank = 0; rank < comps.size() && rank < 4; ++rank)
                srow << n << "," << rep << "," << rank + 1 << ","
                     << fmt(comps[rank].size / mass_scale) << "\n";
            size_rows[rep] = srow.str();

            auto graphs = extract_components(s, 2);
            std::ostringstream crow;
            if (!graphs.empty()) {
                const ComponentGraph& g = graphs.front();
                DiameterResult dia = diameter(g, cfg.exact_cap);
                auto girth = shortest_cycle(g);
                crow << n << "," << rep << "," << g.size() << ","
                     << fmt(g.size() / mass_scale) << ","
                     << fmt(dia.value / len_scale) << "," << surplus(g) << ","
                     << (girth ? fmt(*girth / len_scale) : std::string("nan"));
            } else {
                crow << n << "," << rep << ",1," << fmt(1.0 / mass_scale)
                     << ",0,0,nan";
            }
            c1_rows[rep] = crow.str();
        }
        for (std::uint64_t rep = 0; rep < cfg.replicates; ++rep) {
            std::string s = size_rows[rep];
            if (!s.empty()) {
                s.pop_back();  // strip trailing newline, row() adds one
                sizes.row(s);
            }
            c1.row(c1_rows[rep]);
        }
        std::cout << "n=" << n << " done (" << cfg.replicates
                  << " replicates)\n";
    }
    ctx.manifest.outputs.push_back(sizes.path());
    ctx.manifest.outputs.push_back(c1.path());
}

void suite_surplus_girth(SuiteContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    CsvWriter comp(ctx.out_path("surplus_girth.csv"), cfg,
                   "n,replicate,component_rank,size,edges,surplus,diameter,"
                   "girth,longest_cycle,u_mean,u_se");
    std::vector<double> x1_samples;
    std::vector<std::int64_t> surplus_samples;
    for (std::uint32_t n : cfg.n_grid) {
        ModelParams params = make_params(cfg, n);
        double mass_scale = std::pow(
            static_cast<double>(params.lattice.num_vertices), 2.0 / 3.0);
        std::vector<std::string> rows(cfg.replicates);
        std::vector<double> x1(cfg.replicates);
        std::vector<std::int64_t> spl(cfg.replicates);
#pragma omp parallel for schedule(dynamic, 4)
        for (std::int64_t rep = 0;
             rep < static_cast<std::int64_t>(cfg.replicates); ++rep) {
            PercolationSample s =
                sample_stratified(params, Stage::Critical, ctx.policy, rep);
            auto graphs = extract_components(s, 2);
            Rng aux = ctx.policy.stream(rep, 102u, 0u);
            std::ostringstream out;
            std::size_t limit = std::min<std::size_t>(graphs.size(), 4);
            for (std::size_t rank = 0; rank < limit; ++rank) {
                ComponentGraph& g = graphs[rank];
                DiameterResult dia = diameter(g, cfg.exact_cap);
                auto girth = shortest_cycle(g);
                auto longest = longest_cycle(g, cfg.surplus_cap);
                MeanPairDistance u = mean_pair_distance(
                    g, cfg.exact_cap, aux, cfg.pair_samples);
                out << n << "," << rep << "," << rank + 1 << "," << g.size()
                    << "," << g.edge_count() << "," << surplus(g) << ","
                    << dia.value << ","
                    << (girth ? std::to_string(*girth) : std::string("nan"))
                    << ","
                    << (longest.value ? std::to_string(*longest.value)
                                      : (longest.computed
                                             ? std::string("nan")
                                             : std::string("skipped")))
                    << "," << fmt(u.mean) << "," << fmt(u.se) << "\n";
            }
            rows[rep] = out.str();
            x1[rep] = graphs.empty() ? 1.0 / mass_scale
                                     : graphs.front().size() / mass_scale;
            spl[rep] = graphs.empty() ? 0 : surplus(graphs.front());
        }
        for (auto& r : rows)
            if (!r.empty()) {
                r.pop_back();
                comp.row(r);
            }
        if (n == cfg.n_grid.back()) {
            x1_samples = x1;
            surplus_samples = spl;
        }
    }
    ctx.manifest.outputs.push_back(comp.path());

    // in-process coalescent reference at the same lambda
    std::vector<double> gamma1(cfg.replicates);
    std::vector<std::int64_t> ref_surplus(cfg.replicates);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t rep = 0; rep < static_cast<std::int64_t>(cfg.replicates);
         ++rep) {
        Rng r = ctx.policy.stream(rep, 103u, 0u);
        LimitSample lim = sample_limit(cfg.lambda, cfg.grid_dt,
                                       default_horizon(cfg.lambda), r);
        gamma1[rep] = lim.gamma.empty() ? 0.0 : lim.gamma.front();
        ref_surplus[rep] =
            lim.surplus_counts.empty()
                ? 0
                : static_cast<std::int64_t>(lim.surplus_counts.front());
    }
    Rng cr = ctx.policy.stream(0, 104u, 0u);
    DistanceReport ks = compare_scalar(x1_samples, gamma1, cr);
    DistanceReport tv = compare_integer(surplus_samples, ref_surplus, cr);
    CsvWriter cmp(ctx.out_path("comparison.csv"), cfg,
                  "statistic,value,ci_low,ci_high");
    cmp.row("ks_x1_vs_gamma1," + fmt(ks.value) + "," + fmt(ks.ci_low) + "," +
            fmt(ks.ci_high));
    cmp.row("tv_surplus," + fmt(tv.value) + "," + fmt(tv.ci_low) + "," +
            fmt(tv.ci_high));
    ctx.manifest.outputs.push_back(cmp.path());
    std::cout << "KS(x1, gamma1) = " << ks.value << " [" << ks.ci_low << ", "
              << ks.ci_high << "]\n"
              << "TV(surplus) = " << tv.value << " [" << tv.ci_low << ", "
              << tv.ci_high << "]\n";
}

void suite_diagnostics(SuiteContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    CsvWriter csv(ctx.out_path("diagnostics.csv"), cfg,
                  "n,statistic,q1,median,q3");
    for (std::uint32_t n : cfg.n_grid) {
        ModelParams params = make_params(cfg, n);
        DiagnosticsReport rep = criticality_diagnostics(
            params, cfg.replicates, ctx.policy, cfg.exact_cap);
        auto emit = [&](const std::string& name, const Quartiles& q) {
            csv.row(std::to_string(n) + "," + name + "," + fmt(q.q1) + "," +
                    fmt(q.med) + "," + fmt(q.q3));
            std::cout << "n=" << n << " " << name << ": median " << q.med
                      << " iqr " << q.iqr() << "\n";
        };
        emit("q_minus_inv_sigma2", rep.q_sigma2_quartiles);
        emit("sigma3_over_sigma2_cubed", rep.sigma_ratio_quartiles);
        emit("tau_rescaled", rep.tau_quartiles);
    }
    ctx.manifest.outputs.push_back(csv.path());
}

void suite_two_point(SuiteContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    CsvWriter csv(ctx.out_path("two_point.csv"), cfg,
                  "n,shell,p_hat,se,edge_prob");
    for (std::uint32_t n : cfg.n_grid) {
        ModelParams params = make_params(cfg, n);
        ShellEstimate est = two_point(params, cfg.replicates, ctx.policy);
        for (std::uint32_t i = 1; i <= n; ++i)
            csv.row(std::to_string(n) + "," + std::to_string(i) + "," +
                    fmt(est.p_hat[i]) + "," + fmt(est.se[i]) + "," +
                    fmt(params.prob_minus[i]));
        DeltaEstimates deltas = delta_estimates(est, params);
        std::cout << "n=" << n << " delta=" << deltas.delta
                  << " delta_tilde=" << deltas.delta_tilde << "\n";
        // slope over the pre-plateau shells
        double a0 = 2.0 - cfg.theta / cfg.alpha;
        std::vector<double> xs, ys;
        for (std::uint32_t i = 1; i <= n && i <= a0 * n; ++i)
            if (est.p_hat[i] > 0.0) {
                xs.push_back(i * std::log(static_cast<double>(cfg.L)));
                ys.push_back(std::log(est.p_hat[i]));
            }
        if (xs.size() >= 2)
            std::cout << "n=" << n
                      << " log-slope=" << linear_fit(xs, ys).slope << "\n";
    }
    ctx.manifest.outputs.push_back(csv.path());
}

void suite_branching(SuiteContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    std::string path = ctx.out_path("branching.jsonl");
    if (std::filesystem::exists(path))
        throw std::runtime_error("output exists (write-once): " + path);
    std::ofstream out(path, std::ios::binary);
    for (std::uint32_t n : cfg.n_grid) {
        ModelParams params = make_params(cfg, n);
        long double sum = 0.0L;
        std::uint64_t kept = 0;
        for (std::uint64_t rep = 0; rep < cfg.replicates; ++rep) {
            Rng r = ctx.policy.stream(rep, 105u, n);
            BranchingRun run = sample_tree(n, params, r, cfg.size_cap,
                                           cfg.height_cap);
            nlohmann::json j{{"j", n},
                             {"total_size", run.total_size},
                             {"height", run.height},
                             {"truncated", run.truncated}};
            out << j.dump() << "\n";
            if (!run.truncated) {
                sum += static_cast<long double>(run.total_size);
                ++kept;
            }
        }
        double expectation = 1.0 / (1.0 - params.branching_mean(n));
        std::cout << "n=" << n << " mean|T|="
                  << static_cast<double>(sum / std::max<std::uint64_t>(kept, 1))
                  << " target=" << expectation
                  << " excluded=" << cfg.replicates - kept << "\n";
    }
    ctx.manifest.outputs.push_back(path);
}

void suite_coalescent_reference(SuiteContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    std::string path = ctx.out_path("coalescent.jsonl");
    if (std::filesystem::exists(path))
        throw std::runtime_error("output exists (write-once): " + path);
    std::ofstream out(path, std::ios::binary);
    for (std::uint64_t rep = 0; rep < cfg.replicates; ++rep) {
        Rng r = ctx.policy.stream(rep, 103u, 0u);
        LimitSample lim = sample_limit(cfg.lambda, cfg.grid_dt,
                                       default_horizon(cfg.lambda), r);
        nlohmann::json j{{"lambda", cfg.lambda},
                         {"gamma", lim.gamma},
                         {"surplus", lim.surplus_counts}};
        out << j.dump() << "\n";
    }
    std::cout << "wrote " << cfg.replicates << " limit replicates\n";
    ctx.manifest.outputs.push_back(path);
}

void suite_torus(SuiteContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    TorusSpec spec = TorusSpec::create(cfg.torus_m, cfg.d);
    KernelSpec kernel{cfg.alpha, cfg.A, cfg.theta, cfg.lambda};
    double zeta = solve_zeta_torus(spec, kernel);
    std::vector<double> probs =
        torus_probs(spec, kernel, cfg.lambda, TorusStage::Critical);
    CsvWriter csv(ctx.out_path("torus.csv"), cfg,
                  "m,replicate,c1_size,c1_edges,x1");
    double mass_scale =
        std::pow(static_cast<double>(spec.num_vertices), 2.0 / 3.0);
    for (std::uint64_t rep = 0; rep < cfg.replicates; ++rep) {
        TorusSample s = sample_torus(spec, probs, ctx.policy, rep);
        auto comps = torus_components(s);
        csv.row(std::to_string(cfg.torus_m) + "," + std::to_string(rep) + "," +
                std::to_string(comps.front().size) + "," +
                std::to_string(comps.front().edges) + "," +
                fmt(comps.front().size / mass_scale));
    }
    std::cout << "torus zeta = " << zeta << "\n";
    ctx.manifest.outputs.push_back(csv.path());
}

}  // namespace

RunManifest run_suite(const ExperimentConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.output_dir);

    RunManifest manifest;
    manifest.code_version = kCodeVersion;
    {
        std::ostringstream h;
        h << std::hex << cfg.hash();
        manifest.config_hash = h.str();
    }
    RngPolicy policy{cfg.master_seed};
    manifest.replicate_seeds.resize(cfg.replicates);
    for (std::uint64_t rep = 0; rep < cfg.replicates; ++rep)
        manifest.replicate_seeds[rep] = mix_u64(cfg.master_seed, rep);

    SuiteContext ctx{cfg, policy, manifest};
    auto t0 = std::chrono::steady_clock::now();
    if (cfg.suite == "phase-sweep")
        suite_phase_sweep(ctx);
    else if (cfg.suite == "critical-window")
        suite_critical_window(ctx);
    else if (cfg.suite == "surplus-girth")
        suite_surplus_girth(ctx);
    else if (cfg.suite == "diagnostics")
        suite_diagnostics(ctx);
    else if (cfg.suite == "two-point")
        suite_two_point(ctx);
    else if (cfg.suite == "branching")
        suite_branching(ctx);
    else if (cfg.suite == "coalescent-reference")
        suite_coalescent_reference(ctx);
    else if (cfg.suite == "torus")
        suite_torus(ctx);
    auto t1 = std::chrono::steady_clock::now();
    manifest.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

    nlohmann::json j{{"config_hash", manifest.config_hash},
                     {"code_version", manifest.code_version},
                     {"master_seed", cfg.master_seed},
                     {"replicate_seeds", manifest.replicate_seeds},
                     {"wall_seconds", manifest.wall_seconds},
                     {"outputs", manifest.outputs}};
    std::ofstream mout(ctx.out_path("manifest.json"), std::ios::binary);
    mout << j.dump(2) << "\n";
    return manifest;
}

}  // namespace hlp
