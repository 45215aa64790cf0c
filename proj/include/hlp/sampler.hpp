// Percolation configuration samplers. The stratified sampler walks each
// distance shell with geometric skips over pair indices, so expected cost is
// vertices + open edges. The naive sampler iterates all pairs and is kept as
// the serial reference for equivalence testing.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hlp/geometry.hpp"
#include "hlp/kernel.hpp"
#include "hlp/rng.hpp"

namespace hlp {

class UnionFind {
  public:
    explicit UnionFind(std::uint64_t n);

    std::uint32_t find(std::uint32_t v);
    // union by size, ties broken toward the smaller root id
    void unite(std::uint32_t a, std::uint32_t b);
    std::uint32_t size_of(std::uint32_t v) { return size_[find(v)]; }
    std::uint64_t num_elements() const { return parent_.size(); }

  private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

using Edge = std::pair<std::uint64_t, std::uint64_t>;

struct PercolationSample {
    LatticeSpec lattice;
    double zeta = 0.0;
    std::vector<std::vector<Edge>> edges;  // per shell, [0] unused
    UnionFind partition{1};
    std::uint64_t master_seed = 0;
    std::uint64_t replicate = 0;
    Stage stage = Stage::Minus;
    bool sprinkled = false;  // built by the two-stage construction

    std::uint64_t edge_count() const;
};

struct ComponentSummary {
    std::uint32_t representative;  // smallest vertex id in the component
    std::uint64_t size;
    std::uint64_t edges;
};

// Stage Minus or Critical; probabilities taken from the ModelParams tables.
PercolationSample sample_stratified(const ModelParams& params, Stage stage,
                                    const RngPolicy& rng,
                                    std::uint64_t replicate);

// Same, for an arbitrary per-shell probability table (phase sweeps).
PercolationSample sample_table(const ModelParams& params,
                               const std::vector<double>& shell_probs,
                               Stage stage_tag, const RngPolicy& rng,
                               std::uint64_t replicate);

// Opens every pair closed in `base` independently with probability t_n.
// Candidate edges are drawn over all pairs and collisions with base edges
// are discarded, which realizes the closed-pair Bernoulli field exactly.
// The result is distributed as the critical-window graph.
PercolationSample sample_sprinkle_on(const PercolationSample& base,
                                     const ModelParams& params,
                                     const RngPolicy& rng,
                                     std::uint64_t replicate);

// O(|V|^2) reference; guarded to L^{nd} <= 2^16.
PercolationSample sample_naive(const ModelParams& params, Stage stage,
                               const RngPolicy& rng, std::uint64_t replicate);
PercolationSample sample_naive_table(const ModelParams& params,
                                     const std::vector<double>& probs,
                                     Stage stage_tag, const RngPolicy& rng,
                                     std::uint64_t replicate);

// Components sorted by size descending, ties by representative id ascending.
std::vector<ComponentSummary> components(PercolationSample& sample);

// ---- torus ----

struct TorusSample {
    TorusSpec spec;
    std::vector<std::vector<Edge>> edges;  // per distance class, [0] unused
    UnionFind partition{1};
    std::uint64_t master_seed = 0;
    std::uint64_t replicate = 0;
};

// Stratified by L-infinity distance class. Pairs within a class are indexed
// by (canonical offset, base point); antipodal offsets (m even, k = m/2)
// pair each base with its own translate and carry half the base range.
TorusSample sample_torus(const TorusSpec& spec,
                         const std::vector<double>& class_probs,
                         const RngPolicy& rng, std::uint64_t replicate);

// unordered pair count of a torus distance class (for tests and tables)
std::uint64_t torus_pair_count(std::uint32_t k, const TorusSpec& spec);

std::vector<ComponentSummary> torus_components(TorusSample& sample);

}  // namespace hlp
