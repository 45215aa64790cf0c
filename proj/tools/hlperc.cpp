// Command-line front end: validate configs, run experiment suites, compare
// result files, and dump single-sample edge lists.
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hlp/experiments.hpp"
#include "hlp/kernel.hpp"
#include "hlp/sampler.hpp"

namespace {

void apply_thread_env() {
#ifdef _OPENMP
    if (const char* env = std::getenv("HLPERC_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
#endif
}

int cmd_validate(const std::string& config_path) {
    hlp::ExperimentConfig cfg = hlp::ExperimentConfig::parse_file(config_path);
    cfg.validate();
    std::cout << "config ok: suite=" << cfg.suite << "\n";
    if (cfg.suite == "coalescent-reference") return 0;
    hlp::KernelSpec kernel{cfg.alpha, cfg.A, cfg.theta, cfg.lambda};
    if (cfg.suite == "torus") {
        hlp::TorusSpec spec = hlp::TorusSpec::create(cfg.torus_m, cfg.d);
        std::cout << "zeta_T = " << hlp::solve_zeta_torus(spec, kernel) << "\n";
        return 0;
    }
    for (std::uint32_t n : cfg.n_grid) {
        hlp::ModelParams params = hlp::ModelParams::create(
            hlp::LatticeSpec::create(cfg.L, cfg.d, n), kernel);
        std::cout << "n=" << n << " zeta_n=" << params.zeta
                  << " m_n=" << params.branching_mean(n)
                  << " t_n=" << params.sprinkle_t << " q=" << params.q
                  << " n0=" << params.n0 << "\n";
    }
    return 0;
}

int cmd_run(const std::string& config_path) {
    hlp::ExperimentConfig cfg = hlp::ExperimentConfig::parse_file(config_path);
    hlp::RunManifest manifest = hlp::run_suite(cfg);
    std::cout << "wall " << manifest.wall_seconds << " s; outputs:";
    for (const auto& f : manifest.outputs) std::cout << " " << f;
    std::cout << "\n";
    return 0;
}

int cmd_compare(const std::string& file_a, const std::string& file_b,
                const std::string& column, std::uint64_t seed) {
    hlp::FileComparison cmp =
        hlp::compare_result_files(file_a, file_b, column, seed);
    std::cout << cmp.statistic << "(" << column << ") = " << cmp.report.value
              << "  ci95 [" << cmp.report.ci_low << ", " << cmp.report.ci_high
              << "]  (" << cmp.rows_a << " vs " << cmp.rows_b << " rows)\n";
    return 0;
}

int cmd_dump_edges(const std::string& config_path, std::uint64_t replicate,
                   const std::string& stage_name) {
    hlp::ExperimentConfig cfg = hlp::ExperimentConfig::parse_file(config_path);
    if (cfg.n_grid.empty()) throw std::invalid_argument("config: missing n");
    hlp::KernelSpec kernel{cfg.alpha, cfg.A, cfg.theta, cfg.lambda};
    hlp::ModelParams params = hlp::ModelParams::create(
        hlp::LatticeSpec::create(cfg.L, cfg.d, cfg.n_grid.front()), kernel);
    hlp::Stage stage = stage_name == "minus" ? hlp::Stage::Minus
                                             : hlp::Stage::Critical;
    hlp::RngPolicy policy{cfg.master_seed};
    hlp::PercolationSample s =
        hlp::sample_stratified(params, stage, policy, replicate);
    std::cout << "shell,vertex_a,vertex_b\n";
    for (std::uint32_t i = 1; i < s.edges.size(); ++i)
        for (const auto& e : s.edges[i])
            std::cout << i << "," << e.first << "," << e.second << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_env();
    CLI::App app{"hierarchical long-range percolation toolkit"};
    app.require_subcommand(1);

    std::string config_path, file_a, file_b, column = "x";
    std::string stage_name = "critical";
    std::uint64_t replicate = 0, seed = 1;

    CLI::App* validate = app.add_subcommand("validate", "check a config and print derived quantities");
    validate->add_option("config", config_path, "config file")->required();

    CLI::App* run = app.add_subcommand("run", "run the configured suite");
    run->add_option("config", config_path, "config file")->required();

    CLI::App* compare = app.add_subcommand("compare", "compare a column of two result files");
    compare->add_option("file_a", file_a)->required();
    compare->add_option("file_b", file_b)->required();
    compare->add_option("--column", column, "CSV column to compare");
    compare->add_option("--seed", seed, "bootstrap seed");

    CLI::App* dump = app.add_subcommand("dump-edges", "print one sample's edge list");
    dump->add_option("config", config_path, "config file")->required();
    dump->add_option("--replicate", replicate);
    dump->add_option("--stage", stage_name, "minus | critical");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(config_path);
        if (run->parsed()) return cmd_run(config_path);
        if (compare->parsed())
            return cmd_compare(file_a, file_b, column, seed);
        if (dump->parsed())
            return cmd_dump_edges(config_path, replicate, stage_name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
