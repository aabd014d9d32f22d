#include "wcone/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "wcone/detail/compensated_sum.hpp"
#include "wcone/error.hpp"

namespace wcone {

using detail::CompensatedSum;

namespace {

struct Instance {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> cost;  // row-major n*m
};

Instance build_instance(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                        double p) {
  if (!mu.space().same_structure(nu.space())) {
    throw InvalidInput("measures live on different spaces: " +
                       mu.space().describe() + " vs " + nu.space().describe());
  }
  if (!std::isfinite(p) || p < 1.0) {
    throw InvalidInput("transport exponent must satisfy p >= 1");
  }
  Instance inst;
  inst.n = mu.size();
  inst.m = nu.size();
  inst.cost.resize(inst.n * inst.m);
  const Space& space = mu.space();
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = 0; j < inst.m; ++j) {
      double c;
      if (p == 2.0) {
        c = space.distance_squared(mu.point(i), nu.point(j));
      } else if (p == 1.0) {
        c = space.distance(mu.point(i), nu.point(j));
      } else {
        c = std::pow(space.distance(mu.point(i), nu.point(j)), p);
      }
      inst.cost[i * inst.m + j] = c;
    }
  }
  return inst;
}

double plan_cost(const std::vector<double>& coupling,
                 const std::vector<double>& cost) {
  CompensatedSum sum;
  for (std::size_t idx = 0; idx < coupling.size(); ++idx) {
    if (coupling[idx] != 0.0) sum.add(coupling[idx] * cost[idx]);
  }
  return sum.value();
}

TransportPlan make_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                        std::vector<double> coupling, double p,
                        const std::vector<double>& cost) {
  for (double& v : coupling) {
    if (v < 0.0) v = 0.0;  // strip -1e-17 artifacts of pivot arithmetic
  }
  const double total = plan_cost(coupling, cost);
  return TransportPlan{mu, nu, std::move(coupling), p, total};
}

/// Product coupling pi_ij = a_i * b_j; optimal whenever either side is a
/// single atom (it is then the only coupling).
std::vector<double> product_coupling(const std::vector<double>& a,
                                     const std::vector<double>& b) {
  std::vector<double> coupling(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      coupling[i * b.size() + j] = a[i] * b[j];
    }
  }
  return coupling;
}

/// Primal transportation simplex over the bipartite support graph.
///
/// The basis is always a spanning tree of the n+m node graph. Entering and
/// leaving variables follow Bland's smallest-index rule (row-major cell
/// index), which rules out cycling on degenerate bases; the entering
/// threshold is scaled to the cost magnitude so near-optimal ties caused by
/// float rounding in the duals are treated as optimal.
class TransportSimplex {
 public:
  TransportSimplex(const Instance& inst, const std::vector<double>& a,
                   const std::vector<double>& b)
      : n_(inst.n),
        m_(inst.m),
        cost_(inst.cost),
        basic_(n_ * m_, false),
        flow_(n_ * m_, 0.0) {
    double scale = 0.0;
    for (double c : cost_) scale = std::max(scale, std::abs(c));
    enter_eps_ = scale * 1e-13;
    init_northwest(a, b);
  }

  std::vector<double> solve() {
    const std::size_t pivot_budget = 100 * (n_ + m_) * (n_ + m_) + 1000;
    std::vector<double> u(n_), v(m_);
    for (std::size_t pivots = 0;; ++pivots) {
      if (pivots > pivot_budget) {
        throw Error("transport simplex exceeded its pivot budget");
      }
      compute_duals(u, v);
      std::size_t enter = kNone;
      for (std::size_t idx = 0; idx < n_ * m_; ++idx) {
        if (basic_[idx]) continue;
        if (cost_[idx] - u[idx / m_] - v[idx % m_] < -enter_eps_) {
          enter = idx;
          break;
        }
      }
      if (enter == kNone) break;
      pivot(enter);
    }
    return std::move(flow_);
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  // Northwest-corner start: walks the support grid from (0,0), at each step
  // saturating the smaller residual. Always places exactly n+m-1 basic
  // cells (some possibly degenerate with zero flow).
  void init_northwest(std::vector<double> ra, std::vector<double> rb) {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t placed = 0;
    while (true) {
      const double amount = std::min(ra[i], rb[j]);
      flow_[i * m_ + j] = std::max(amount, 0.0);
      basic_[i * m_ + j] = true;
      ++placed;
      if (placed == n_ + m_ - 1) break;
      ra[i] -= amount;
      rb[j] -= amount;
      const bool advance_row = (i + 1 < n_) && (ra[i] <= rb[j] || j + 1 == m_);
      if (advance_row) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  // Node ids: rows are 0..n-1, columns are n..n+m-1.
  void build_adjacency() {
    adj_.assign(n_ + m_, {});
    for (std::size_t idx = 0; idx < n_ * m_; ++idx) {
      if (!basic_[idx]) continue;
      const std::size_t row = idx / m_;
      const std::size_t col = n_ + idx % m_;
      adj_[row].push_back({col, idx});
      adj_[col].push_back({row, idx});
    }
  }

  // Solves c_ij = u_i + v_j over the basis tree, rooted at u_0 = 0.
  void compute_duals(std::vector<double>& u, std::vector<double>& v) {
    build_adjacency();
    std::vector<char> seen(n_ + m_, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    u[0] = 0.0;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      for (const auto& [other, idx] : adj_[node]) {
        if (seen[other]) continue;
        seen[other] = 1;
        ++reached;
        if (other >= n_) {
          v[other - n_] = cost_[idx] - u[node];
        } else {
          u[other] = cost_[idx] - v[node - n_];
        }
        stack.push_back(other);
      }
    }
    if (reached != n_ + m_) {
      throw Error("transport simplex basis lost connectivity");
    }
  }

  void pivot(std::size_t enter) {
    const std::size_t enter_row = enter / m_;
    const std::size_t enter_col = n_ + enter % m_;

    build_adjacency();
    std::vector<std::size_t> parent_node(n_ + m_, kNone);
    std::vector<std::size_t> parent_cell(n_ + m_, kNone);
    std::vector<char> seen(n_ + m_, 0);
    std::vector<std::size_t> queue{enter_row};
    seen[enter_row] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::size_t node = queue[qi];
      if (node == enter_col) break;
      for (const auto& [other, idx] : adj_[node]) {
        if (seen[other]) continue;
        seen[other] = 1;
        parent_node[other] = node;
        parent_cell[other] = idx;
        queue.push_back(other);
      }
    }
    if (!seen[enter_col]) {
      throw Error("transport simplex basis lost connectivity");
    }

    // The entering cell closes a unique cycle. Signs alternate around it,
    // + on the entering cell, - on the path edge incident to its column.
    std::vector<std::size_t> plus{enter};
    std::vector<std::size_t> minus;
    bool on_minus = true;
    for (std::size_t node = enter_col; node != enter_row;
         node = parent_node[node]) {
      (on_minus ? minus : plus).push_back(parent_cell[node]);
      on_minus = !on_minus;
    }

    double theta = std::numeric_limits<double>::infinity();
    for (std::size_t cell : minus) theta = std::min(theta, flow_[cell]);
    std::size_t leave = kNone;
    for (std::size_t cell : minus) {
      if (flow_[cell] == theta && (leave == kNone || cell < leave)) {
        leave = cell;
      }
    }

    for (std::size_t cell : plus) flow_[cell] += theta;
    for (std::size_t cell : minus) flow_[cell] -= theta;
    basic_[enter] = true;
    basic_[leave] = false;
    flow_[leave] = 0.0;
  }

  std::size_t n_;
  std::size_t m_;
  const std::vector<double>& cost_;
  std::vector<char> basic_;
  std::vector<double> flow_;
  double enter_eps_ = 0.0;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj_;
};

}  // namespace

double TransportPlan::max_marginal_residual() const {
  const std::size_t n = source.size();
  const std::size_t m = target.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    CompensatedSum row;
    for (std::size_t j = 0; j < m; ++j) row.add(coupling[i * m + j]);
    worst = std::max(worst, std::abs(row.value() - source.weight(i)));
  }
  for (std::size_t j = 0; j < m; ++j) {
    CompensatedSum col;
    for (std::size_t i = 0; i < n; ++i) col.add(coupling[i * m + j]);
    worst = std::max(worst, std::abs(col.value() - target.weight(j)));
  }
  return worst;
}

TransportPlan optimal_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           double p) {
  const Instance inst = build_instance(mu, nu, p);
  const auto& a = mu.weights();
  const auto& b = nu.weights();
  if (inst.n == 1 || inst.m == 1) {
    return make_plan(mu, nu, product_coupling(a, b), p, inst.cost);
  }
  TransportSimplex simplex(inst, a, b);
  return make_plan(mu, nu, simplex.solve(), p, inst.cost);
}

double wasserstein_distance(const DiscreteMeasure& mu,
                            const DiscreteMeasure& nu, double p) {
  const double cost = optimal_plan(mu, nu, p).cost;
  if (p == 2.0) return std::sqrt(cost);
  if (p == 1.0) return cost;
  return std::pow(cost, 1.0 / p);
}

namespace {

bool all_equal_weights(const std::vector<double>& w) {
  for (double v : w) {
    if (v != w.front()) return false;
  }
  return true;
}

std::vector<double> best_permutation_coupling(const Instance& inst,
                                              double atom_weight) {
  std::vector<std::size_t> perm(inst.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    CompensatedSum sum;
    for (std::size_t i = 0; i < inst.n; ++i) {
      sum.add(inst.cost[i * inst.m + perm[i]]);
    }
    if (sum.value() < best_cost) {
      best_cost = sum.value();
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<double> coupling(inst.n * inst.m, 0.0);
  for (std::size_t i = 0; i < inst.n; ++i) {
    coupling[i * inst.m + best[i]] = atom_weight;
  }
  return coupling;
}

// Exhaustive enumeration of basic feasible solutions: every spanning tree of
// the complete bipartite graph over the supports, with flows recovered by
// leaf elimination. Exponential, deliberately simple, and entirely
// independent of the simplex code path.
class TreeEnumerator {
 public:
  TreeEnumerator(const Instance& inst, const std::vector<double>& a,
                 const std::vector<double>& b)
      : n_(inst.n),
        m_(inst.m),
        cost_(inst.cost),
        a_(a),
        b_(b),
        nodes_(n_ + m_),
        parent_(nodes_),
        comp_size_(nodes_, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::vector<double> run() {
    chosen_.clear();
    recurse(0, n_ + m_ - 1);
    if (best_cost_ == std::numeric_limits<double>::infinity()) {
      throw Error("tree enumeration found no feasible plan");
    }
    std::vector<double> coupling(n_ * m_, 0.0);
    for (std::size_t k = 0; k < best_cells_.size(); ++k) {
      coupling[best_cells_[k]] = best_flows_[k];
    }
    return coupling;
  }

 private:
  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (comp_size_[x] < comp_size_[y]) std::swap(x, y);
    parent_[y] = x;
    comp_size_[x] += comp_size_[y];
    undo_.push_back({x, y});
    return true;
  }

  void undo_last_union() {
    const auto [x, y] = undo_.back();
    undo_.pop_back();
    parent_[y] = y;
    comp_size_[x] -= comp_size_[y];
  }

  void recurse(std::size_t cell, std::size_t remaining) {
    if (remaining == 0) {
      evaluate();
      return;
    }
    if (n_ * m_ - cell < remaining) return;
    // Branch 1: use this cell as a tree edge (skip if it closes a cycle).
    if (unite(cell / m_, n_ + cell % m_)) {
      chosen_.push_back(cell);
      recurse(cell + 1, remaining - 1);
      chosen_.pop_back();
      undo_last_union();
    }
    // Branch 2: leave the cell out.
    recurse(cell + 1, remaining);
  }

  void evaluate() {
    const std::size_t edges = chosen_.size();
    std::vector<int> degree(nodes_, 0);
    for (std::size_t cell : chosen_) {
      ++degree[cell / m_];
      ++degree[n_ + cell % m_];
    }
    std::vector<double> rem(nodes_);
    for (std::size_t i = 0; i < n_; ++i) rem[i] = a_[i];
    for (std::size_t j = 0; j < m_; ++j) rem[n_ + j] = b_[j];

    std::vector<double> flow(edges, 0.0);
    std::vector<char> active(edges, 1);
    for (std::size_t step = 0; step < edges; ++step) {
      // Locate a leaf of the remaining forest and resolve its single edge.
      std::size_t leaf = kNone;
      for (std::size_t node = 0; node < nodes_; ++node) {
        if (degree[node] == 1) {
          leaf = node;
          break;
        }
      }
      if (leaf == kNone) return;  // should not happen on a spanning tree
      std::size_t edge = kNone;
      for (std::size_t k = 0; k < edges; ++k) {
        if (!active[k]) continue;
        const std::size_t row = chosen_[k] / m_;
        const std::size_t col = n_ + chosen_[k] % m_;
        if (row == leaf || col == leaf) {
          edge = k;
          break;
        }
      }
      const std::size_t row = chosen_[edge] / m_;
      const std::size_t col = n_ + chosen_[edge] % m_;
      const std::size_t other = (row == leaf) ? col : row;
      double f = rem[leaf];
      if (f < -1e-12) return;  // infeasible tree
      if (f < 0.0) f = 0.0;
      flow[edge] = f;
      rem[other] -= f;
      rem[leaf] = 0.0;
      active[edge] = 0;
      --degree[leaf];
      --degree[other];
    }

    CompensatedSum sum;
    for (std::size_t k = 0; k < edges; ++k) {
      sum.add(flow[k] * cost_[chosen_[k]]);
    }
    if (sum.value() < best_cost_) {
      best_cost_ = sum.value();
      best_cells_ = chosen_;
      best_flows_ = flow;
    }
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t n_;
  std::size_t m_;
  const std::vector<double>& cost_;
  const std::vector<double>& a_;
  const std::vector<double>& b_;
  std::size_t nodes_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> comp_size_;
  std::vector<std::pair<std::size_t, std::size_t>> undo_;
  std::vector<std::size_t> chosen_;
  double best_cost_ = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_cells_;
  std::vector<double> best_flows_;
};

}  // namespace

TransportPlan brute_force_plan(const DiscreteMeasure& mu,
                               const DiscreteMeasure& nu, double p) {
  const Instance inst = build_instance(mu, nu, p);
  const auto& a = mu.weights();
  const auto& b = nu.weights();

  if (inst.n == 1 || inst.m == 1) {
    return make_plan(mu, nu, product_coupling(a, b), p, inst.cost);
  }

  if (inst.n == inst.m && inst.n <= 6 && all_equal_weights(a) &&
      all_equal_weights(b) && a.front() == b.front()) {
    // Equal atoms: some permutation coupling is optimal, and there are at
    // most 6! of them.
    return make_plan(mu, nu, best_permutation_coupling(inst, a.front()), p,
                     inst.cost);
  }

  // Spanning-tree count of the complete bipartite support graph.
  const double log_tree_count =
      static_cast<double>(inst.m - 1) * std::log(static_cast<double>(inst.n)) +
      static_cast<double>(inst.n - 1) * std::log(static_cast<double>(inst.m));
  constexpr double kTreeBudget = 1e6;
  if (log_tree_count > std::log(kTreeBudget)) {
    throw TooLarge(
        "brute_force_plan: " + std::to_string(inst.n) + "x" +
        std::to_string(inst.m) +
        " support graph has too many spanning trees to enumerate (budget 1e6)");
  }

  TreeEnumerator enumerator(inst, a, b);
  return make_plan(mu, nu, enumerator.run(), p, inst.cost);
}

}  // namespace wcone
