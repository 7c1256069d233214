#include "simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <thread>

#include "errors.hpp"

namespace gwg {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

uint64_t next_u64(uint64_t& state) {
  state += kGolden;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double next_unit(uint64_t& state) {
  return double(next_u64(state) >> 11) * 0x1.0p-53;
}

}  // namespace

uint64_t mix64(uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

int sample_offspring(const OffspringDistribution& dist, double u) {
  if (dist.is_poisson()) {
    const double rate = dist.rate();
    double p = std::exp(-rate);
    double cum = p;
    int n = 0;
    const int limit = int(rate * 20.0) + 200;
    while (u > cum && n < limit) {
      ++n;
      p *= rate / double(n);
      cum += p;
    }
    return n;
  }
  const std::vector<double>& mass = dist.mass();
  double cum = 0.0;
  for (size_t i = 0; i < mass.size(); ++i) {
    cum += mass[i];
    if (u <= cum) return int(i);
  }
  return int(mass.size()) - 1;
}

SampledTree SampledTree::from_parents(const std::vector<int>& parent) {
  if (parent.empty() || parent[0] != -1) {
    throw InvalidArgument("from_parents: root must have parent -1");
  }
  const size_t n = parent.size();
  SampledTree t;
  t.first_child.assign(n, 0);
  t.child_count.assign(n, 0);
  t.depth.assign(n, 0);
  for (size_t v = 1; v < n; ++v) {
    if (parent[v] < 0 || size_t(parent[v]) >= v) {
      throw InvalidArgument("from_parents: parent id must precede child");
    }
    ++t.child_count[size_t(parent[v])];
    t.depth[v] = t.depth[size_t(parent[v])] + 1;
  }
  int32_t off = 0;
  for (size_t v = 0; v < n; ++v) {
    t.first_child[v] = off;
    off += t.child_count[v];
  }
  t.child_list.assign(n - 1, 0);
  std::vector<int32_t> fill(t.first_child);
  for (size_t v = 1; v < n; ++v) {
    t.child_list[size_t(fill[size_t(parent[v])]++)] = int32_t(v);
  }
  t.depth_cap = *std::max_element(t.depth.begin(), t.depth.end());
  t.complete = true;
  return t;
}

SampledTree sample_tree(const OffspringDistribution& dist, int depth_cap,
                        long node_cap, uint64_t seed) {
  if (depth_cap < 1) throw InvalidArgument("depth_cap must be >= 1");
  if (node_cap < 1) throw InvalidArgument("node_cap must be >= 1");
  SampledTree t;
  t.depth_cap = depth_cap;
  uint64_t rng = seed;
  t.first_child.push_back(0);
  t.child_count.push_back(0);
  t.depth.push_back(0);
  size_t frontier = 0;
  for (size_t v = 0; v < t.first_child.size(); ++v) {
    if (t.depth[v] >= depth_cap) {
      ++frontier;
      continue;
    }
    const int c = sample_offspring(dist, next_unit(rng));
    if (long(t.first_child.size()) + c > node_cap) {
      t.node_cap_hit = true;
      break;
    }
    t.first_child[v] = int32_t(t.child_list.size());
    t.child_count[v] = int32_t(c);
    const int32_t d = t.depth[v] + 1;
    for (int i = 0; i < c; ++i) {
      t.child_list.push_back(int32_t(t.first_child.size()));
      t.first_child.push_back(0);
      t.child_count.push_back(0);
      t.depth.push_back(d);
    }
  }
  t.complete = !t.node_cap_hit && frontier == 0;
  return t;
}

namespace {

// Visits strict descendants of v within distance k; pred returning true
// stops the walk early. Returns true if stopped.
template <typename Pred>
bool scan_gamma_k(const SampledTree& t, int32_t v, int k, Pred&& pred) {
  const int32_t* kids = t.child_list.data() + t.first_child[size_t(v)];
  const int32_t cnt = t.child_count[size_t(v)];
  for (int32_t i = 0; i < cnt; ++i) {
    const int32_t w = kids[i];
    if (pred(w)) return true;
    if (k > 1 && scan_gamma_k(t, w, k - 1, pred)) return true;
  }
  return false;
}

}  // namespace

LabelTable label_game(const SampledTree& tree, const GameSpec& spec,
                      int horizon, bool require_exact) {
  if (horizon < 1) throw InvalidArgument("horizon must be >= 1");
  if (require_exact && !tree.complete &&
      (tree.node_cap_hit || horizon * spec.k > tree.depth_cap)) {
    throw HorizonError("exact labels need horizon*k <= depth_cap and no node cap");
  }
  const size_t n = tree.size();
  const bool misere = spec.variant == Variant::Misere;
  LabelTable out;
  out.loss_level.assign(n, 0);
  out.win_level.assign(n, 0);

  for (int lvl = 1; lvl <= horizon; ++lvl) {
    for (size_t v = 0; v < n; ++v) {
      const bool childless = tree.child_count[v] == 0;
      if (out.loss_level[v] == 0) {
        bool lose;
        if (childless) {
          lose = !misere;
        } else {
          // all of Gamma_k in the win set of the previous level
          lose = !scan_gamma_k(tree, int32_t(v), spec.k, [&](int32_t w) {
            return out.win_level[size_t(w)] == 0 ||
                   out.win_level[size_t(w)] > lvl - 1;
          });
        }
        if (lose) out.loss_level[v] = lvl;
      }
      if (out.win_level[v] == 0) {
        bool win;
        if (childless) {
          win = misere;
        } else {
          win = scan_gamma_k(tree, int32_t(v), spec.k, [&](int32_t w) {
            return out.loss_level[size_t(w)] != 0 &&
                   out.loss_level[size_t(w)] < lvl;
          });
        }
        if (win) out.win_level[v] = lvl;
      }
    }
  }

  out.label.assign(n, Label::Undecided);
  out.rounds.assign(n, -1);
  out.exact.assign(n, 0);
  for (size_t v = 0; v < n; ++v) {
    if (out.loss_level[v] != 0) {
      out.label[v] = Label::Loss;
      out.rounds[v] = out.loss_level[v] - 1;
    } else if (out.win_level[v] != 0) {
      out.label[v] = Label::Win;
      out.rounds[v] = out.win_level[v] - 1;
    }
    out.exact[v] = tree.complete ||
                   (!tree.node_cap_hit &&
                    tree.depth[v] + horizon * spec.k <= tree.depth_cap);
  }
  return out;
}

namespace {

struct CapHit {};

// Lazily grown tree with memoized win/lose recursions. Children of a vertex
// get consecutive ids, so a first-child index and count per node suffice.
// The memo exploits monotonicity in the horizon: lose/win true at n stays
// true for larger n, false stays false for smaller n. Offspring counts are
// sampled on first touch, which explores only the part of the tree the game
// recursions actually look at; a full depth-(horizon*k) realization is far
// beyond reach for supercritical means. Tests drive the same recursions over
// a pre-sampled tree through use_tree().
class LazyGame {
 public:
  LazyGame(const OffspringDistribution& dist, int k, bool misere,
           long node_cap)
      : k_(k), misere_(misere), node_cap_(node_cap) {
    // Cumulative offspring probabilities for inversion sampling.
    if (dist.is_poisson()) {
      const double rate = dist.rate();
      double p = std::exp(-rate);
      double cum = p;
      cdf_.push_back(cum);
      const int limit = int(rate * 20.0) + 200;
      for (int n = 1; n <= limit && cum < 1.0; ++n) {
        p *= rate / double(n);
        cum += p;
        cdf_.push_back(cum);
      }
    } else {
      double cum = 0.0;
      for (double m : dist.mass()) {
        cum += m;
        cdf_.push_back(cum);
      }
    }
    cdf_.back() = 2.0;  // sentinel: the scan always terminates
  }

  void reset(uint64_t stream_seed) {
    rng_ = stream_seed;
    tree_ = nullptr;
    nodes_.assign(1, Node{});
  }

  // Replays a materialized tree instead of sampling, so results can be
  // compared vertex-for-vertex with label_game.
  void use_tree(const SampledTree& tree) {
    tree_ = &tree;
    nodes_.assign(1, Node{});
    nodes_[0].tree_id = 0;
  }

  // Callers guarantee n >= 1; level 0 sets are empty by definition.
  bool lose(int32_t v, int n) {
    Node& nd = nodes_[size_t(v)];
    if (n >= nd.lose_true) return true;
    if (n <= nd.lose_false) return false;
    if (nd.count < 0) expand(v);
    bool res;
    if (nodes_[size_t(v)].count == 0) {
      res = !misere_;
    } else if (n == 1) {
      res = false;  // a vertex with moves is not yet lost at horizon 1
    } else {
      res = forall_win(v, k_, n - 1);
    }
    Node& nd2 = nodes_[size_t(v)];  // expand may reallocate
    if (res) {
      nd2.lose_true = uint8_t(n);
    } else {
      nd2.lose_false = uint8_t(n);
    }
    return res;
  }

  bool win(int32_t v, int n) {
    Node& nd = nodes_[size_t(v)];
    if (n >= nd.win_true) return true;
    if (n <= nd.win_false) return false;
    if (nd.count < 0) expand(v);
    bool res;
    if (nodes_[size_t(v)].count == 0) {
      res = misere_;
    } else if (n == 1) {
      res = false;
    } else {
      res = exists_lose(v, k_, n - 1);
    }
    Node& nd2 = nodes_[size_t(v)];
    if (res) {
      nd2.win_true = uint8_t(n);
    } else {
      nd2.win_false = uint8_t(n);
    }
    return res;
  }

 private:
  static constexpr uint8_t kNever = 255;

  struct Node {
    int32_t first = 0;
    int32_t count = -1;  // -1 = not yet expanded
    int32_t tree_id = 0;
    uint8_t lose_true = kNever;
    uint8_t lose_false = 0;
    uint8_t win_true = kNever;
    uint8_t win_false = 0;
  };

  void expand(int32_t v) {
    int32_t c;
    if (tree_) {
      c = tree_->child_count[size_t(nodes_[size_t(v)].tree_id)];
    } else {
      const double u = next_unit(rng_);
      c = 0;
      while (u > cdf_[size_t(c)]) ++c;
    }
    if (long(nodes_.size()) + c > node_cap_) throw CapHit{};
    const int32_t first = int32_t(nodes_.size());
    nodes_[size_t(v)].first = first;
    nodes_[size_t(v)].count = c;
    nodes_.resize(nodes_.size() + size_t(c));
    if (tree_) {
      const int32_t tid = nodes_[size_t(v)].tree_id;
      for (int32_t i = 0; i < c; ++i) {
        nodes_[size_t(first + i)].tree_id =
            tree_->child_list[size_t(tree_->first_child[size_t(tid)] + i)];
      }
    }
  }

  // Both scans are entered with v already expanded; after a lose/win call
  // on w, w is expanded too, so its count can be read to prune the descent.
  bool exists_lose(int32_t v, int dist_left, int n) {
    const int32_t first = nodes_[size_t(v)].first;
    const int32_t cnt = nodes_[size_t(v)].count;
    if (dist_left == 1) {
      for (int32_t w = first; w < first + cnt; ++w) {
        if (lose(w, n)) return true;
      }
      return false;
    }
    for (int32_t w = first; w < first + cnt; ++w) {
      if (lose(w, n)) return true;
      if (nodes_[size_t(w)].count > 0 && exists_lose(w, dist_left - 1, n)) {
        return true;
      }
    }
    return false;
  }

  bool forall_win(int32_t v, int dist_left, int n) {
    const int32_t first = nodes_[size_t(v)].first;
    const int32_t cnt = nodes_[size_t(v)].count;
    if (dist_left == 1) {
      for (int32_t w = first; w < first + cnt; ++w) {
        if (!win(w, n)) return false;
      }
      return true;
    }
    for (int32_t w = first; w < first + cnt; ++w) {
      if (!win(w, n)) return false;
      if (nodes_[size_t(w)].count > 0 && !forall_win(w, dist_left - 1, n)) {
        return false;
      }
    }
    return true;
  }

  int k_;
  bool misere_;
  long node_cap_;
  uint64_t rng_ = 0;
  const SampledTree* tree_ = nullptr;
  std::vector<double> cdf_;
  std::vector<Node> nodes_;
};

struct WorkerTallies {
  std::vector<long> loss, win;
  long excluded = 0;
};

}  // namespace

McEstimate mc_estimate(const GameSpec& spec, int horizon, long samples,
                       uint64_t seed, long node_cap) {
  if (horizon < 1) throw InvalidArgument("horizon must be >= 1");
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
  if (horizon > 125) throw HorizonError("horizon too large for the memo");

  unsigned n_workers = std::thread::hardware_concurrency();
  if (n_workers == 0) n_workers = 1;
  n_workers = std::min<unsigned>(n_workers, 16);
  if (samples < long(n_workers) * 64) n_workers = 1;

  std::vector<WorkerTallies> tallies(n_workers);
  const long per = (samples + long(n_workers) - 1) / long(n_workers);

  auto run_range = [&](unsigned wi, long begin, long end) {
    WorkerTallies& tl = tallies[wi];
    tl.loss.assign(size_t(horizon) + 1, 0);
    tl.win.assign(size_t(horizon) + 1, 0);
    LazyGame game(spec.dist, spec.k, spec.variant == Variant::Misere,
                  node_cap);
    std::vector<uint8_t> lflag(size_t(horizon) + 1), wflag(size_t(horizon) + 1);
    for (long t = begin; t < end; ++t) {
      game.reset(mix64(seed + kGolden * uint64_t(t + 1)));
      bool capped = false;
      try {
        for (int n = 1; n <= horizon; ++n) {
          lflag[size_t(n)] = game.lose(0, n) ? 1 : 0;
          wflag[size_t(n)] = game.win(0, n) ? 1 : 0;
        }
      } catch (const CapHit&) {
        capped = true;
      }
      if (capped) {
        ++tl.excluded;
        continue;
      }
      for (int n = 1; n <= horizon; ++n) {
        tl.loss[size_t(n)] += lflag[size_t(n)];
        tl.win[size_t(n)] += wflag[size_t(n)];
      }
    }
  };

  if (n_workers == 1) {
    run_range(0, 0, samples);
  } else {
    std::vector<std::thread> pool;
    for (unsigned wi = 0; wi < n_workers; ++wi) {
      const long begin = long(wi) * per;
      const long end = std::min(samples, begin + per);
      if (begin >= end) break;
      pool.emplace_back(run_range, wi, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  McEstimate est;
  est.samples = samples;
  est.rows.assign(size_t(horizon) + 1, McRow{});
  std::vector<long> loss(size_t(horizon) + 1, 0), win(size_t(horizon) + 1, 0);
  for (const WorkerTallies& tl : tallies) {
    est.excluded += tl.excluded;
    for (int n = 1; n <= horizon && !tl.loss.empty(); ++n) {
      loss[size_t(n)] += tl.loss[size_t(n)];
      win[size_t(n)] += tl.win[size_t(n)];
    }
  }
  const long m = samples - est.excluded;
  for (int n = 1; n <= horizon && m > 0; ++n) {
    McRow& r = est.rows[size_t(n)];
    r.loss = double(loss[size_t(n)]) / double(m);
    r.win = double(win[size_t(n)]) / double(m);
    r.se_loss = std::sqrt(r.loss * (1.0 - r.loss) / double(m));
    r.se_win = std::sqrt(r.win * (1.0 - r.win) / double(m));
  }
  return est;
}

RootLabels lazy_root_labels(const SampledTree& tree, const GameSpec& spec,
                            int horizon) {
  if (horizon < 1) throw InvalidArgument("horizon must be >= 1");
  if (horizon > 125) throw HorizonError("horizon too large for the memo");
  LazyGame game(spec.dist, spec.k, spec.variant == Variant::Misere,
                long(tree.size()) + 1);
  game.use_tree(tree);
  RootLabels out;
  out.lose.assign(size_t(horizon) + 1, 0);
  out.win.assign(size_t(horizon) + 1, 0);
  for (int n = 1; n <= horizon; ++n) {
    out.lose[size_t(n)] = game.lose(0, n) ? 1 : 0;
    out.win[size_t(n)] = game.win(0, n) ? 1 : 0;
  }
  return out;
}

McDuration mc_duration(const GameSpec& spec, int horizon, long samples,
                       uint64_t seed, long node_cap) {
  const McEstimate est = mc_estimate(spec, horizon, samples, seed, node_cap);
  McDuration d;
  d.samples = est.samples;
  d.excluded = est.excluded;
  for (int n = 1; n <= horizon; ++n) {
    const McRow& r = est.rows[size_t(n)];
    d.duration_partial_sum += 1.0 - r.loss - r.win;
  }
  d.undecided_fraction =
      1.0 - est.rows[size_t(horizon)].loss - est.rows[size_t(horizon)].win;
  return d;
}

}  // namespace gwg
