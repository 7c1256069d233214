#pragma once

#include <cstdint>
#include <vector>

#include "offspring.hpp"
#include "recursors.hpp"

namespace gwg {

// Depth-truncated realization of a Galton-Watson tree. Vertices are numbered
// in breadth-first order, root = 0; children of a vertex occupy a contiguous
// slice of child_list.
struct SampledTree {
  std::vector<int32_t> first_child;  // index into child_list
  std::vector<int32_t> child_count;
  std::vector<int32_t> child_list;
  std::vector<int32_t> depth;
  int depth_cap = 0;
  bool node_cap_hit = false;
  // True when no vertex reached depth_cap, i.e. the realization died out on
  // its own and the tree is the complete (finite) realization.
  bool complete = false;

  size_t size() const { return first_child.size(); }

  // Builds a complete tree from parent pointers (parent[v] < v, root has
  // parent -1). Used by tests to drive hand-made and random shapes.
  static SampledTree from_parents(const std::vector<int>& parent);
};

enum class Label : uint8_t { Loss, Win, Undecided };

struct LabelTable {
  std::vector<Label> label;     // outcome within the horizon
  std::vector<int32_t> rounds;  // rounds to decision, -1 if undecided
  std::vector<uint8_t> exact;   // 1 if untouched by truncation
  // Per-vertex minimal horizon of membership (0 = never within horizon):
  std::vector<int32_t> loss_level;
  std::vector<int32_t> win_level;
};

uint64_t mix64(uint64_t x);

// Draws one offspring count by pgf-table / Poisson inversion from a uniform.
int sample_offspring(const OffspringDistribution& dist, double u);

SampledTree sample_tree(const OffspringDistribution& dist, int depth_cap,
                        long node_cap, uint64_t seed);

// Exact finite-horizon labels via the bottom-up recursions over Gamma_k
// neighborhoods. Throws HorizonError when exactness is requested but
// horizon*k exceeds depth_cap on a truncated tree.
LabelTable label_game(const SampledTree& tree, const GameSpec& spec,
                      int horizon, bool require_exact = true);

struct McRow {
  double loss = 0.0;
  double win = 0.0;
  double se_loss = 0.0;
  double se_win = 0.0;
};

struct McEstimate {
  std::vector<McRow> rows;  // index 1..horizon (index 0 unused)
  long samples = 0;
  long excluded = 0;  // trees dropped because they hit node_cap
};

// Monte Carlo estimate of loss^(n), win^(n) for n = 1..horizon. Trees are
// explored lazily with memoized game recursions instead of being fully
// materialized to depth horizon*k, which is out of reach for supercritical
// offspring means; results are distributed identically to sample_tree +
// label_game (tested against them on small cases). One RNG stream per tree
// index keeps results independent of the worker count.
McEstimate mc_estimate(const GameSpec& spec, int horizon, long samples,
                       uint64_t seed, long node_cap = 1000000);

// Root outcome labels for n = 1..horizon computed by the same lazy
// recursion mc_estimate uses, but replaying a materialized tree. Exists so
// tests can check the lazy path against label_game vertex-for-vertex.
struct RootLabels {
  std::vector<uint8_t> lose;  // index 1..horizon
  std::vector<uint8_t> win;
};
RootLabels lazy_root_labels(const SampledTree& tree, const GameSpec& spec,
                            int horizon);

struct McDuration {
  double duration_partial_sum = 0.0;  // sum over n of undecided fraction
  double undecided_fraction = 0.0;    // at the horizon
  long samples = 0;
  long excluded = 0;
};

McDuration mc_duration(const GameSpec& spec, int horizon, long samples,
                       uint64_t seed, long node_cap = 1000000);

}  // namespace gwg
