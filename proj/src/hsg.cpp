#include "hsgen/hsg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hsgen/error.hpp"

namespace hsgen {
namespace {

using Clock = std::chrono::steady_clock;

class SubstructureUnion {
 public:
  explicit SubstructureUnion(std::size_t count) : parent_(count) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

template <typename T>
const T& pick_uniform(const std::vector<T>& items, Rng& rng) {
  return items[uniform_below(rng, items.size())];
}

std::size_t remaining_capacity(const EntryList& entries, Node v) {
  const std::size_t deg = entries.degree_of(v);
  if (entries.enforces_dmax()) return deg < entries.d_max() ? entries.d_max() - deg : 0;
  const std::size_t limit = entries.num_nodes() - 1;
  return deg < limit ? limit - deg : 0;
}

struct WeightedPair {
  Node u;
  Node v;
  double weight;
};

// Draws one pair proportional to weight, uniformly if all weights are zero.
const WeightedPair& pick_pair(const std::vector<WeightedPair>& pairs, Rng& rng) {
  double total = 0.0;
  for (const auto& p : pairs) total += p.weight;
  if (!(total > 0.0) || !std::isfinite(total)) return pick_uniform(pairs, rng);
  double target = uniform01(rng) * total;
  for (const auto& p : pairs) {
    if (target < p.weight) return p;
    target -= p.weight;
  }
  return pairs.back();
}

}  // namespace

// --- GeneratorConfig --------------------------------------------------------

double GeneratorConfig::avg_degree() const {
  return n == 0 ? 0.0 : 2.0 * static_cast<double>(m) / static_cast<double>(n);
}

double GeneratorConfig::edge_probability() const {
  if (n < 2) return 0.0;
  return static_cast<double>(m) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

DegreeModel GeneratorConfig::resolved_model() const {
  return degree_model ? *degree_model : DegreeModel::poisson(avg_degree());
}

void GeneratorConfig::validate() const {
  auto fail = [](const std::string& what) { throw InvalidConfig(what); };
  if (n < 2) fail("n must be >= 2, got " + std::to_string(n));
  if (d_max < 1) fail("d_max must be >= 1");
  if (m + 1 < n) {
    fail("m=" + std::to_string(m) + " is below n-1=" + std::to_string(n - 1) +
         "; a connected graph is impossible");
  }
  const std::size_t simple_cap = n * (n - 1) / 2;
  if (m > simple_cap) {
    fail("m=" + std::to_string(m) + " exceeds n(n-1)/2=" + std::to_string(simple_cap));
  }
  if (use_dmax_limit && m > n * d_max / 2) {
    fail("m=" + std::to_string(m) + " exceeds the degree budget floor(n*d_max/2)=" +
         std::to_string(n * d_max / 2));
  }
  try {
    resolved_model().validate();
  } catch (const InvalidParameter& e) {
    fail(e.what());
  }
}

// --- SubstructureSet --------------------------------------------------------

std::size_t SubstructureSet::total_nodes() const {
  std::size_t total = 0;
  for (std::size_t d : anchor_degrees) total += d + 1;
  return total;
}

std::vector<Edge> SubstructureSet::star_edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < count(); ++i) {
    const Node a = anchor(i);
    for (std::size_t j = 1; j <= anchor_degrees[i]; ++j) {
      out.push_back({a, static_cast<Node>(a + static_cast<Node>(j))});
    }
  }
  return out;
}

// --- EntryList --------------------------------------------------------------

EntryList::EntryList(const SubstructureSet& subs, std::size_t d_max, bool enforce_dmax)
    : d_max_(d_max), enforce_dmax_(enforce_dmax) {
  const std::size_t n = subs.total_nodes();
  offsets_.reserve(subs.count() + 1);
  owner_.resize(n);
  degree_.assign(n, 1);
  leaves_below_cap_.assign(subs.count(), 0);
  std::size_t next = 0;
  for (std::size_t i = 0; i < subs.count(); ++i) {
    offsets_.push_back(next);
    const std::size_t size = subs.size(i);
    for (std::size_t j = 0; j < size; ++j) owner_[next + j] = i;
    degree_[next] = subs.anchor_degrees[i];
    leaves_below_cap_[i] = 1 < d_max ? subs.anchor_degrees[i] : 0;
    next += size;
  }
  offsets_.push_back(next);
}

EntryState EntryList::state(std::size_t i, std::size_t j) const {
  return is_active(node(i, j)) ? EntryState::kActive : EntryState::kMasked;
}

bool EntryList::has_capacity(Node v) const { return !enforce_dmax_ || degree_[v] < d_max_; }

bool EntryList::is_active(Node v) const {
  if (!is_anchor(v)) return has_capacity(v);
  return leaves_below_cap_[owner_[v]] == 0 && has_capacity(v);
}

void EntryList::bump(Node v) {
  const std::size_t before = degree_[v]++;
  if (!is_anchor(v) && before < d_max_ && before + 1 >= d_max_) --leaves_below_cap_[owner_[v]];
}

void EntryList::add_edge(Node u, Node v) {
  bump(u);
  bump(v);
}

// --- Probability list -------------------------------------------------------

SelectionWeights::SelectionWeights(const DegreeModel& model, std::size_t n)
    : next_mass_(n + 1), n_(static_cast<double>(n)) {
  for (std::size_t d = 0; d <= n; ++d) next_mass_[d] = model.pmf(d + 1);
}

double SelectionWeights::operator()(std::size_t substructure_size, std::size_t degree) const {
  const double share = static_cast<double>(substructure_size) / n_;
  return share * next_mass_[std::min(degree, next_mass_.size() - 1)];
}

Node ProbabilityList::sample(Rng& rng) const {
  const double x = uniform01(rng) * static_cast<double>(keep.size());
  const std::size_t k = std::min(static_cast<std::size_t>(x), keep.size() - 1);
  return nodes[x - static_cast<double>(k) < keep[k] ? k : alias[k]];
}

double ProbabilityList::weight_of(Node v) const {
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k] == v) return plist[k];
  }
  return 0.0;
}

namespace {

// Vose's construction.
void build_alias(ProbabilityList& list) {
  const std::size_t n = list.plist.size();
  list.keep.resize(n);
  list.alias.resize(n);
  std::vector<std::uint32_t> small, large;
  for (std::size_t k = 0; k < n; ++k) {
    list.keep[k] = list.plist[k] * static_cast<double>(n);
    (list.keep[k] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(k));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back(), l = large.back();
    small.pop_back();
    list.alias[s] = l;
    list.keep[l] -= 1.0 - list.keep[s];
    if (list.keep[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers differ from 1 only by rounding.
  for (std::uint32_t k : small) list.keep[k] = 1.0;
  for (std::uint32_t k : large) list.keep[k] = 1.0;
}

}  // namespace

ProbabilityList build_probability_list(const EntryList& entries, const SelectionWeights& weights,
                                       std::span<const char> excluded) {
  ProbabilityList list;
  double total = 0.0;
  for (std::size_t i = 0; i < entries.substructure_count(); ++i) {
    const std::size_t size = entries.row_size(i);
    for (std::size_t j = 0; j < size; ++j) {
      const Node v = entries.node(i, j);
      if (!excluded.empty() && excluded[v]) continue;
      if (!entries.is_active(v)) continue;
      const double w = weights(size, entries.degree(i, j));
      list.plist.push_back(w);
      list.nlist.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
      list.nodes.push_back(v);
      total += w;
    }
  }
  if (list.plist.empty()) return list;
  if (!(total > 0.0) || !std::isfinite(total)) {
    std::fill(list.plist.begin(), list.plist.end(), 1.0);
    total = static_cast<double>(list.plist.size());
    list.uniform_fallback = true;
  }
  list.cumulative.resize(list.plist.size());
  double running = 0.0;
  for (std::size_t k = 0; k < list.plist.size(); ++k) {
    list.plist[k] /= total;
    running += list.plist[k];
    list.cumulative[k] = running;
  }
  build_alias(list);
  return list;
}

ProbabilityList build_probability_list(const EntryList& entries, const SelectionWeights& weights) {
  ProbabilityList list = build_probability_list(entries, weights, std::span<const char>{});
  if (list.empty()) throw ExhaustedCapacity("every entry is masked; no node can take an edge");
  return list;
}

ProbabilityList build_probability_list(const EntryList& entries, const GeneratorConfig& cfg) {
  return build_probability_list(entries, SelectionWeights(cfg.resolved_model(), cfg.n));
}

// --- EdgeSet ----------------------------------------------------------------

EdgeSet::EdgeSet(std::size_t expected, std::size_t num_nodes) {
  edges_.reserve(expected);
  if (num_nodes > 0 && num_nodes <= kMatrixNodes) {
    row_words_ = (num_nodes + 63) / 64;
    bits_.assign(num_nodes * row_words_, 0);
    return;
  }
  std::size_t capacity = 16;
  while (capacity < 2 * expected) capacity *= 2;
  rehash(capacity);
}

std::size_t EdgeSet::find(std::uint64_t k) const {
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t i = home(k);; i = (i + 1) & mask) {
    if (slots_[i].key == k) return i;
    if (slots_[i].key == kEmpty) return kNone;
  }
}

void EdgeSet::rehash(std::size_t capacity) {
  slots_.assign(capacity, Slot{});
  const std::size_t mask = capacity - 1;
  for (std::size_t idx = 0; idx < edges_.size(); ++idx) {
    const std::uint64_t k = key(edges_[idx].u, edges_[idx].v);
    std::size_t i = home(k);
    while (slots_[i].key != kEmpty) i = (i + 1) & mask;
    slots_[i] = {k, idx};
  }
}

bool EdgeSet::insert(Node u, Node v) {
  if (!bits_.empty()) {
    if (test(u, v)) return false;
    flip(u, v);
    edges_.push_back(make_edge(u, v));
    return true;
  }
  const std::uint64_t k = key(u, v);
  if (find(k) != kNone) return false;
  if (2 * (edges_.size() + 1) > slots_.size()) rehash(2 * slots_.size());
  const std::size_t mask = slots_.size() - 1;
  std::size_t i = home(k);
  while (slots_[i].key != kEmpty) i = (i + 1) & mask;
  slots_[i] = {k, edges_.size()};
  edges_.push_back(make_edge(u, v));
  return true;
}

void EdgeSet::erase(Node u, Node v) {
  if (!bits_.empty()) {
    if (!test(u, v)) return;
    flip(u, v);
    const auto it = std::find(edges_.begin(), edges_.end(), make_edge(u, v));
    *it = edges_.back();
    edges_.pop_back();
    return;
  }
  std::size_t hole = find(key(u, v));
  if (hole == kNone) return;
  const std::size_t pos = slots_[hole].index;
  if (pos + 1 != edges_.size()) {
    edges_[pos] = edges_.back();
    slots_[find(key(edges_[pos].u, edges_[pos].v))].index = pos;
  }
  edges_.pop_back();

  // Backward-shift deletion: pull later members of the probe run into the
  // hole when their home slot does not lie strictly between hole and them.
  const std::size_t mask = slots_.size() - 1;
  slots_[hole].key = kEmpty;
  for (std::size_t i = (hole + 1) & mask; slots_[i].key != kEmpty; i = (i + 1) & mask) {
    const std::size_t h = home(slots_[i].key);
    const bool stays = hole <= i ? (hole < h && h <= i) : (hole < h || h <= i);
    if (stays) continue;
    slots_[hole] = slots_[i];
    slots_[i].key = kEmpty;
    hole = i;
  }
}

// --- Stage 1 ----------------------------------------------------------------

SubstructureSet parse_stage(const GeneratorConfig& cfg, Rng& rng) {
  const std::size_t n = cfg.n;
  const DegreeModel model = cfg.resolved_model();

  std::size_t cap = n - 1;
  if (cfg.use_dmax_limit) cap = std::min(cap, cfg.d_max);
  if (cfg.use_truncation_k) {
    if (const auto k = model.truncation(n)) cap = std::min(cap, *k - 1);
  }

  SubstructureSet subs;
  // The first star realises the maximum degree regardless of k.
  const std::size_t seed_degree = std::min(cfg.d_max, n - 1);
  subs.anchor_degrees.push_back(seed_degree);
  std::size_t left = n - seed_degree - 1;
  if (left > 0) {
    const DegreeSampler sampler(model, cap);
    while (left > 0) {
      // The last star is clamped so the node budget is met exactly.
      const std::size_t d = std::min(sampler(rng), left - 1);
      subs.anchor_degrees.push_back(d);
      left -= d + 1;
    }
  }
  Node offset = 0;
  for (std::size_t d : subs.anchor_degrees) {
    subs.node_offsets.push_back(offset);
    offset += static_cast<Node>(d + 1);
  }
  return subs;
}

// --- Stage 2a ---------------------------------------------------------------

std::vector<Edge> connect_stage(const SubstructureSet& subs, EntryList& entries, EdgeSet& edges,
                                const GeneratorConfig& cfg, Rng& rng,
                                const GeneratorHooks& hooks) {
  const std::size_t count = subs.count();
  std::vector<Edge> bridges;
  if (count < 2) return bridges;

  const SelectionWeights weights(cfg.resolved_model(), cfg.n);
  SubstructureUnion components(count);
  std::size_t remaining_components = count;
  std::vector<char> excluded(cfg.n, 0);
  std::vector<Node> candidates;

  for (std::size_t i = 0; i < count && remaining_components > 1; ++i) {
    const std::size_t own = components.find(i);

    // u: an active leaf of substructure i, else its anchor, else any node of
    // i's component that can still take an edge.
    candidates.clear();
    for (std::size_t j = 1; j < entries.row_size(i); ++j) {
      if (entries.is_active(entries.node(i, j))) candidates.push_back(entries.node(i, j));
    }
    if (candidates.empty() && entries.has_capacity(subs.anchor(i))) {
      candidates.push_back(subs.anchor(i));
    }
    for (std::size_t s = 0; s < count; ++s) {
      const bool inside = components.find(s) == own;
      for (std::size_t j = 0; j < entries.row_size(s); ++j) {
        excluded[entries.node(s, j)] = inside ? 1 : 0;
      }
    }
    if (candidates.empty()) {
      for (std::size_t v = 0; v < cfg.n; ++v) {
        if (excluded[v] && entries.has_capacity(static_cast<Node>(v))) {
          candidates.push_back(static_cast<Node>(v));
        }
      }
    }
    if (candidates.empty()) {
      throw ExhaustedCapacity("substructure " + std::to_string(i) + " has no node below d_max");
    }
    const Node u = pick_uniform(candidates, rng);

    // v: drawn from the probability list restricted to other components.
    const ProbabilityList list = build_probability_list(entries, weights, excluded);
    Node v;
    if (!list.empty()) {
      if (hooks.on_probability_list) hooks.on_probability_list(list, entries);
      v = list.sample(rng);
    } else {
      candidates.clear();
      for (std::size_t w = 0; w < cfg.n; ++w) {
        if (!excluded[w] && entries.has_capacity(static_cast<Node>(w))) {
          candidates.push_back(static_cast<Node>(w));
        }
      }
      if (candidates.empty()) {
        throw ExhaustedCapacity("no node outside substructure " + std::to_string(i) +
                                " can take a bridging edge");
      }
      v = pick_uniform(candidates, rng);
    }

    edges.insert(u, v);
    entries.add_edge(u, v);
    bridges.push_back(make_edge(u, v));
    components.unite(own, entries.substructure_of(v));
    --remaining_components;
  }
  return bridges;
}

// --- Stage 2b ---------------------------------------------------------------

namespace {

void record_added(DensifyResult& result, Node u, Node v) { result.added.push_back(make_edge(u, v)); }

void record_removed(DensifyResult& result, const Edge& e) {
  if (auto it = std::find(result.added.begin(), result.added.end(), e); it != result.added.end()) {
    result.added.erase(it);
  } else {
    result.removed.push_back(e);
  }
}

// Weights over list positions in a complete binary tree. Updates recompute
// the ancestors from their children, so removing a heavy entry leaves the
// light ones exact.
class SumTree {
 public:
  explicit SumTree(std::span<const double> weights) {
    while (leaves_ < weights.size()) leaves_ *= 2;
    tree_.assign(2 * leaves_, 0.0);
    std::copy(weights.begin(), weights.end(), tree_.begin() + static_cast<std::ptrdiff_t>(leaves_));
    for (std::size_t i = leaves_ - 1; i > 0; --i) tree_[i] = tree_[2 * i] + tree_[2 * i + 1];
  }

  bool has(std::size_t k) const { return tree_[k + leaves_] > 0.0; }

  void clear(std::size_t k) {
    std::size_t i = k + leaves_;
    tree_[i] = 0.0;
    for (i /= 2; i > 0; i /= 2) tree_[i] = tree_[2 * i] + tree_[2 * i + 1];
  }

  // Position drawn with probability proportional to its weight; -1 when all
  // weights are zero.
  std::ptrdiff_t sample(Rng& rng) const {
    if (!(tree_[1] > 0.0)) return -1;
    double t = uniform01(rng) * tree_[1];
    std::size_t i = 1;
    while (i < leaves_) {
      const double left = tree_[2 * i];
      if (t < left || !(tree_[2 * i + 1] > 0.0)) {
        i = 2 * i;
      } else {
        t -= left;
        i = 2 * i + 1;
      }
    }
    return static_cast<std::ptrdiff_t>(i - leaves_);
  }

 private:
  std::size_t leaves_ = 1;
  std::vector<double> tree_;
};

// Rejection sampling stalls once the heavy entries are saturated among
// themselves. Draw u from the list, then v from u's admissible partners with
// the same weights; entries left without partners drop out for the batch.
//
// v is first tried by plain rejection. Nodes where that fails (the hubs of
// the batch) get the admissible weight of each 64-node word tabulated. A
// draw picks a word from the table and an offset inside it, then walks the
// word's current admissible nodes. Admissibility only shrinks within a
// batch, so an offset past the current mass is a miss and every admissible
// node keeps its exact share. A miss corrects the word it hit; the whole
// table is refreshed after repeated misses, which also clears rounding.
class ConditionalPlacer {
 public:
  ConditionalPlacer(EntryList& entries, EdgeSet& edges, const ProbabilityList& list, Rng& rng,
                    DensifyResult& result)
      : entries_(entries), edges_(edges), list_(list), rng_(rng), result_(result),
        pos_of_(entries.num_nodes(), -1), weight_(entries.num_nodes(), 0.0), usable_(list.plist),
        open_((entries.num_nodes() + 63) / 64, 0), table_of_(entries.num_nodes(), -1) {
    for (std::size_t k = 0; k < list.size(); ++k) {
      const Node v = list.nodes[k];
      pos_of_[v] = static_cast<std::ptrdiff_t>(k);
      weight_[v] = list.plist[k];
      if (!entries.has_capacity(v)) {
        usable_.clear(k);
      } else if (list.plist[k] > 0.0) {
        open_[static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
      }
    }
  }

  std::size_t place(std::size_t wanted) {
    std::size_t placed = 0;
    while (placed < wanted) {
      const std::ptrdiff_t a = draw_u();
      if (a < 0) break;
      const std::size_t pa = static_cast<std::size_t>(a);
      const Node u = list_.nodes[pa];
      const std::ptrdiff_t b = draw_v(u);
      if (b < 0) {
        usable_.clear(pa);
        continue;
      }
      const std::size_t pb = static_cast<std::size_t>(b);
      const Node v = list_.nodes[pb];
      edges_.insert(u, v);
      entries_.add_edge(u, v);
      record_added(result_, u, v);
      if (!entries_.has_capacity(u)) close(pa);
      if (!entries_.has_capacity(v)) close(pb);
      ++placed;
    }
    return placed;
  }

 private:
  static constexpr int kQuickTries = 8;
  static constexpr int kMissesBeforeRefresh = 128;
  static constexpr std::size_t kTableBudget = std::size_t{1} << 22;

  struct Table {
    std::vector<double> cumulative;  // admissible weight of words 0..w
    int misses = 0;                  // since the last refresh
  };

  std::ptrdiff_t draw_u() {
    for (int i = 0; i < kQuickTries; ++i) {
      const std::ptrdiff_t k = pos_of_[list_.sample(rng_)];
      if (usable_.has(static_cast<std::size_t>(k))) return k;
    }
    return usable_.sample(rng_);
  }

  void close(std::size_t k) {
    usable_.clear(k);
    const Node v = list_.nodes[k];
    open_[static_cast<std::size_t>(v) / 64] &= ~(std::uint64_t{1} << (v % 64));
  }

  // Nodes of word w that u may connect to.
  std::uint64_t admissible_bits(Node u, std::size_t w) const {
    std::uint64_t bits = open_[w];
    if (w == static_cast<std::size_t>(u) / 64) bits &= ~(std::uint64_t{1} << (u % 64));
    if (const std::span<const std::uint64_t> row = edges_.row(u); !row.empty()) return bits & ~row[w];
    for (std::uint64_t rest = bits; rest != 0; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      if (edges_.contains(u, static_cast<Node>(w * 64 + static_cast<std::size_t>(i)))) {
        bits &= ~(std::uint64_t{1} << i);
      }
    }
    return bits;
  }

  void tabulate(Node u, Table& t) const {
    t.cumulative.resize(open_.size());
    t.misses = 0;
    double run = 0.0;
    for (std::size_t w = 0; w < open_.size(); ++w) {
      for (std::uint64_t bits = admissible_bits(u, w); bits != 0; bits &= bits - 1) {
        run += weight_[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))];
      }
      t.cumulative[w] = run;
    }
  }

  std::ptrdiff_t draw_v(Node u) {
    if (table_of_[u] >= 0) return draw_from_table(u, tables_[static_cast<std::size_t>(table_of_[u])]);
    for (int i = 0; i < kQuickTries; ++i) {
      const Node v = list_.sample(rng_);
      if (v != u && entries_.has_capacity(v) && !edges_.contains(u, v)) return pos_of_[v];
    }
    if (table_entries_ + open_.size() > kTableBudget) {
      // Over budget: one draw from a table that is dropped afterwards.
      Table t;
      tabulate(u, t);
      return draw_from_table(u, t);
    }
    table_entries_ += open_.size();
    table_of_[u] = static_cast<std::ptrdiff_t>(tables_.size());
    tabulate(u, tables_.emplace_back());
    return draw_from_table(u, tables_.back());
  }

  std::ptrdiff_t draw_from_table(Node u, Table& t) {
    std::vector<double>& c = t.cumulative;
    for (;;) {
      if (!(c.back() > 0.0)) return -1;
      const double x = uniform01(rng_) * c.back();
      const std::size_t w = std::min<std::size_t>(
          static_cast<std::size_t>(std::upper_bound(c.begin(), c.end(), x) - c.begin()), c.size() - 1);
      const double before = w > 0 ? c[w - 1] : 0.0;
      double offset = x - before;
      for (std::uint64_t bits = admissible_bits(u, w); bits != 0; bits &= bits - 1) {
        const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        offset -= weight_[v];
        if (offset < 0.0) return pos_of_[v];
      }
      if (++t.misses == kMissesBeforeRefresh) {
        tabulate(u, t);
        continue;
      }
      // The walk summed the word's current mass; drop the stale remainder.
      const double stale = c[w] - before - (x - before - offset);
      for (std::size_t j = w; j < c.size(); ++j) c[j] -= stale;
    }
  }

  EntryList& entries_;
  EdgeSet& edges_;
  const ProbabilityList& list_;
  Rng& rng_;
  DensifyResult& result_;

  std::vector<std::ptrdiff_t> pos_of_;
  std::vector<double> weight_;  // list weight by node, 0 when unlisted
  // List weights with exhausted positions zeroed, for drawing u.
  SumTree usable_;
  // Bit per node that can still take an edge and has positive weight.
  std::vector<std::uint64_t> open_;
  std::vector<std::ptrdiff_t> table_of_;
  std::vector<Table> tables_;
  std::size_t table_entries_ = 0;
};

std::size_t place_conditionally(EntryList& entries, EdgeSet& edges, const ProbabilityList& list,
                                std::size_t wanted, Rng& rng, DensifyResult& result) {
  return ConditionalPlacer(entries, edges, list, rng, result).place(wanted);
}

// Places one edge when rejection sampling made no progress: first by
// enumerating admissible pairs among active entries, then among every node
// with spare capacity, finally by a degree-preserving swap that frees a slot.
void place_one_exhaustively(EntryList& entries, EdgeSet& edges, const ProbabilityList& list,
                            const SelectionWeights& weights, Rng& rng, DensifyResult& result) {
  std::vector<WeightedPair> pairs;
  auto admissible = [&](Node a, Node b) {
    return a != b && entries.has_capacity(a) && entries.has_capacity(b) && !edges.contains(a, b);
  };

  for (std::size_t x = 0; x < list.size(); ++x) {
    for (std::size_t y = x + 1; y < list.size(); ++y) {
      if (admissible(list.nodes[x], list.nodes[y])) {
        pairs.push_back({list.nodes[x], list.nodes[y], list.plist[x] * list.plist[y]});
      }
    }
  }

  std::vector<Node> open;
  if (pairs.empty()) {
    for (std::size_t v = 0; v < entries.num_nodes(); ++v) {
      if (remaining_capacity(entries, static_cast<Node>(v)) > 0) open.push_back(static_cast<Node>(v));
    }
    auto weight = [&](Node v) {
      return weights(entries.row_size(entries.substructure_of(v)), entries.degree_of(v));
    };
    for (std::size_t x = 0; x < open.size(); ++x) {
      for (std::size_t y = x + 1; y < open.size(); ++y) {
        if (admissible(open[x], open[y])) {
          pairs.push_back({open[x], open[y], weight(open[x]) * weight(open[y])});
        }
      }
    }
  }

  if (!pairs.empty()) {
    const WeightedPair& p = pick_pair(pairs, rng);
    edges.insert(p.u, p.v);
    entries.add_edge(p.u, p.v);
    record_added(result, p.u, p.v);
    return;
  }

  // Every pair of open nodes is already adjacent. Remove some edge (x, y)
  // and attach both ends to open nodes: (u, x) and (v, y). Degrees of x and
  // y are unchanged, u and v gain one each, and connectivity is kept since
  // u and v are already connected.
  const std::span<const Edge> current = edges.edges();
  const std::size_t start = uniform_below(rng, current.size());
  for (std::size_t a = 0; a < open.size(); ++a) {
    for (std::size_t b = a; b < open.size(); ++b) {
      const Node u = open[a];
      const Node v = open[b];
      if (u == v && remaining_capacity(entries, u) < 2) continue;
      for (std::size_t k = 0; k < current.size(); ++k) {
        const Edge e = current[(start + k) % current.size()];
        for (int flip = 0; flip < 2; ++flip) {
          const Node x = flip ? e.v : e.u;
          const Node y = flip ? e.u : e.v;
          if (x == u || x == v || y == u || y == v) continue;
          if (edges.contains(u, x) || edges.contains(v, y)) continue;
          edges.erase(x, y);
          edges.insert(u, x);
          edges.insert(v, y);
          // x and y keep their degree; u and v gain one each.
          entries.add_edge(u, v);
          record_removed(result, e);
          record_added(result, u, x);
          record_added(result, v, y);
          ++result.swaps;
          return;
        }
      }
    }
  }
  throw ExhaustedCapacity("cannot place remaining edges under the degree limit");
}

}  // namespace

DensifyResult densify_stage(EntryList& entries, EdgeSet& edges, const GeneratorConfig& cfg,
                            Rng& rng, const GeneratorHooks& hooks) {
  DensifyResult result;
  const SelectionWeights weights(cfg.resolved_model(), cfg.n);

  while (edges.size() < cfg.m) {
    const std::size_t remaining = cfg.m - edges.size();
    const ProbabilityList list = build_probability_list(entries, weights, std::span<const char>{});
    if (hooks.on_probability_list && !list.empty()) hooks.on_probability_list(list, entries);

    const std::size_t batch = cfg.batch_halving ? (remaining + 1) / 2 : 1;
    constexpr std::size_t stall_limit = 32;  // consecutive misses
    std::size_t placed = 0;
    if (!list.empty()) {
      // The list stays frozen for the whole batch; degrees update live so
      // the d_max check sees edges placed earlier in the batch.
      std::size_t misses = 0;
      while (placed < batch && misses < stall_limit) {
        const Node u = list.sample(rng);
        const Node v = list.sample(rng);
        if (u == v || !entries.has_capacity(u) || !entries.has_capacity(v) || !edges.insert(u, v)) {
          ++misses;
          continue;
        }
        entries.add_edge(u, v);
        record_added(result, u, v);
        ++placed;
        misses = 0;
      }
      if (placed < batch) placed += place_conditionally(entries, edges, list, batch - placed, rng, result);
    }
    if (placed == 0) {
      place_one_exhaustively(entries, edges, list, weights, rng, result);
      placed = 1;
    }
    if (hooks.on_scan) hooks.on_scan({result.scans, batch, list.size(), placed});
    ++result.scans;
  }
  return result;
}

// --- Pipeline ---------------------------------------------------------------

GenerationResult generate_detailed(const GeneratorConfig& cfg, const GeneratorHooks& hooks) {
  cfg.validate();
  Rng rng(cfg.seed);
  GenerationResult out;

  auto t0 = Clock::now();
  out.substructures = parse_stage(cfg, rng);
  auto t1 = Clock::now();
  out.parse_time = t1 - t0;
  if (hooks.on_phase) hooks.on_phase(Phase::kParse, out.parse_time);

  EntryList entries(out.substructures, cfg.d_max, cfg.use_dmax_limit);
  EdgeSet edges(cfg.m, cfg.n);
  for (const Edge& e : out.substructures.star_edges()) edges.insert(e.u, e.v);

  out.bridges = connect_stage(out.substructures, entries, edges, cfg, rng, hooks).size();
  auto t2 = Clock::now();
  out.connect_time = t2 - t1;
  if (hooks.on_phase) hooks.on_phase(Phase::kConnect, out.connect_time);

  const DensifyResult dense = densify_stage(entries, edges, cfg, rng, hooks);
  auto t3 = Clock::now();
  out.densify_time = t3 - t2;
  if (hooks.on_phase) hooks.on_phase(Phase::kDensify, out.densify_time);
  out.scans = dense.scans;
  out.swaps = dense.swaps;

  if (edges.size() != cfg.m) {
    throw std::logic_error("generator produced " + std::to_string(edges.size()) +
                           " edges, expected " + std::to_string(cfg.m));
  }
  out.graph = Graph(cfg.n, std::vector<Edge>(edges.edges().begin(), edges.edges().end()));
  return out;
}

Graph generate(const GeneratorConfig& cfg) { return generate_detailed(cfg).graph; }

}  // namespace hsgen
