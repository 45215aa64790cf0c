// Experiment orchestration: flat key-value configs, suite runners with
// reproducible per-replicate seeding, CSV/JSONL artifacts with self-
// describing headers, and distribution comparison between result files.
#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "hlp/stats.hpp"

namespace hlp {

struct ExperimentConfig {
    // model
    std::uint32_t L = 2;
    std::uint32_t d = 1;
    double alpha = 0.5;
    double A = 1.0;
    double theta = 0.6;
    double lambda = 0.0;
    std::vector<std::uint32_t> n_grid;  // key "n": single value or comma list

    // run control
    std::string suite;  // phase-sweep | critical-window | surplus-girth |
                        // diagnostics | two-point | branching |
                        // coalescent-reference | torus
    std::uint64_t replicates = 100;
    std::uint64_t master_seed = 1;
    std::string output_dir = ".";

    // caps and knobs
    std::uint64_t size_cap = 10'000'000;
    std::uint64_t height_cap = 100'000;
    std::int64_t surplus_cap = 12;
    std::uint32_t pair_samples = 4096;
    std::uint64_t exact_cap = 512;
    double grid_dt = 1e-4;
    std::vector<double> epsilons = {-0.5, 0.5};

    // torus suite
    std::uint32_t torus_m = 0;
    double theta_prime = 0.0;

    std::map<std::string, std::string> raw;  // verbatim, for output headers

    static ExperimentConfig parse_file(const std::string& path);
    static ExperimentConfig parse_text(const std::string& text);

    // checks suite name, lattice feasibility, and kernel constraints
    void validate() const;

    std::string canonical_text() const;  // sorted key=value lines
    std::uint64_t hash() const;          // over canonical_text
};

struct RunManifest {
    std::string config_hash;
    std::string code_version;
    std::vector<std::uint64_t> replicate_seeds;
    double wall_seconds = 0.0;
    std::vector<std::string> outputs;
};

// Executes the configured suite, writes artifacts under output_dir (files
// are write-once), writes manifest.json, prints a summary table to stdout.
RunManifest run_suite(const ExperimentConfig& cfg);

// KS distance with bootstrap CI for scalar samples.
DistanceReport compare_scalar(const std::vector<double>& a,
                              const std::vector<double>& b, Rng& rng);
// TV distance with bootstrap CI for small-support integer samples.
DistanceReport compare_integer(const std::vector<std::int64_t>& a,
                               const std::vector<std::int64_t>& b, Rng& rng);

// Reads one named column from each CSV result file and compares: KS when
// either column has non-integer values, TV otherwise. Requires >= 100 rows.
struct FileComparison {
    std::string statistic;  // "ks" or "tv"
    DistanceReport report;
    std::size_t rows_a = 0, rows_b = 0;
};
FileComparison compare_result_files(const std::string& file_a,
                                    const std::string& file_b,
                                    const std::string& column,
                                    std::uint64_t seed);

// CSV helper: every artifact starts with '# key=value' header lines (full
// config, master seed, schema version) followed by the column header.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const ExperimentConfig& cfg,
              const std::string& columns);
    void row(const std::string& line);
    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::ofstream stream_;
};

std::vector<double> read_csv_column(const std::string& path,
                                    const std::string& column);

}  // namespace hlp
