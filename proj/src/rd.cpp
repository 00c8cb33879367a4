#include "regdecomp/rd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "regdecomp/parallel.hpp"
#include "regdecomp/rng.hpp"

namespace regdecomp {

std::vector<std::size_t> Labeling::group_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (GroupId g : groups) {
    if (g < k) ++sizes[g];
  }
  return sizes;
}

bool Labeling::all_groups_nonempty() const {
  const auto sizes = group_sizes();
  return std::none_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 0; });
}

void Labeling::validate() const {
  if (k == 0) throw Error("labeling: k must be positive");
  for (GroupId g : groups) {
    if (g >= k) throw Error("labeling: group index out of range");
  }
}

void RDConfig::validate() const {
  if (k < 1) throw Error("RDConfig: k must be at least 1");
  if (max_restarts < 1) throw Error("RDConfig: restarts must be at least 1");
  if (max_iterations < 1) throw Error("RDConfig: iterations must be at least 1");
  if (!(epsilon_floor > 0.0 && epsilon_floor < 1.0)) {
    throw Error("RDConfig: epsilon floor must lie in (0, 1)");
  }
}

namespace {

// Distances laid out per target so one target's m distances are contiguous.
class TargetMajor {
 public:
  explicit TargetMajor(const DistanceMatrix& d)
      : refs_(d.rows()), targets_(d.cols()), values_(d.rows() * d.cols()) {
    for (std::size_t i = 0; i < refs_; ++i) {
      const auto row = d.row(i);
      for (std::size_t j = 0; j < targets_; ++j) values_[j * refs_ + i] = row[j];
    }
  }
  std::size_t refs() const noexcept { return refs_; }
  std::size_t targets() const noexcept { return targets_; }
  const double* target(std::size_t j) const noexcept { return values_.data() + j * refs_; }

 private:
  std::size_t refs_;
  std::size_t targets_;
  std::vector<double> values_;
};

// Fixed summation order, shared by every cost evaluation so that in-sample
// assignment and classify() agree to the last bit.
double dot(const double* a, const double* b, std::size_t m) noexcept {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < m; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

// Per-group log-means and mean sums, group-major.
struct GroupModel {
  std::size_t refs = 0;
  std::size_t k = 0;
  std::vector<double> means;  // k x refs
  std::vector<double> logs;   // k x refs
  std::vector<double> sums;   // k

  void finish() {
    logs.resize(means.size());
    sums.assign(k, 0.0);
    for (std::size_t v = 0; v < k; ++v) {
      double s = 0.0;
      for (std::size_t i = 0; i < refs; ++i) {
        const double mu = means[v * refs + i];
        logs[v * refs + i] = std::log(mu);
        s += mu;
      }
      sums[v] = s;
    }
  }

  double cost(const double* x, std::size_t v) const noexcept {
    return sums[v] - dot(x, logs.data() + v * refs, refs);
  }

  GroupId cheapest(const double* x, double* out_costs) const noexcept {
    GroupId best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < k; ++v) {
      const double c = cost(x, v);
      if (out_costs) out_costs[v] = c;
      if (c < best_cost) {
        best_cost = c;
        best = static_cast<GroupId>(v);
      }
    }
    return best;
  }

  static GroupModel from_means(const MeanMatrix& means) {
    GroupModel model;
    model.refs = means.rows();
    model.k = means.cols();
    model.means.resize(model.refs * model.k);
    for (std::size_t i = 0; i < model.refs; ++i) {
      for (std::size_t v = 0; v < model.k; ++v) {
        const double mu = means(i, v);
        if (!(mu > 0.0) || !std::isfinite(mu)) {
          throw Error("mean matrix entries must be positive and finite");
        }
        model.means[v * model.refs + i] = mu;
      }
    }
    model.finish();
    return model;
  }

  MeanMatrix to_means() const {
    MeanMatrix out(refs, k);
    for (std::size_t i = 0; i < refs; ++i) {
      for (std::size_t v = 0; v < k; ++v) out(i, v) = means[v * refs + i];
    }
    return out;
  }
};

void check_labeling(const TargetMajor& d, std::span<const GroupId> z, std::size_t k) {
  if (z.size() != d.targets()) throw Error("labeling length does not match target count");
  if (k == 0) throw Error("labeling: k must be positive");
  for (GroupId g : z) {
    if (g >= k) throw Error("labeling: group index out of range");
  }
}

// Averaging step.
void fit(const TargetMajor& d, std::span<const GroupId> z, std::size_t k, double floor,
         GroupModel& model) {
  const std::size_t m = d.refs();
  model.refs = m;
  model.k = k;
  model.means.assign(k * m, 0.0);
  std::vector<std::size_t> count(k, 0);
  for (std::size_t j = 0; j < z.size(); ++j) {
    double* acc = model.means.data() + z[j] * m;
    const double* x = d.target(j);
    for (std::size_t i = 0; i < m; ++i) acc[i] += x[i];
    ++count[z[j]];
  }
  for (std::size_t v = 0; v < k; ++v) {
    if (count[v] == 0) {
      throw Error("group " + std::to_string(v + 1) + " is empty; means undefined");
    }
    const double size = static_cast<double>(count[v]);
    for (std::size_t i = 0; i < m; ++i) {
      double& mu = model.means[v * m + i];
      mu = std::max(mu / size, floor);
    }
  }
  model.finish();
}

double labeling_cost(const TargetMajor& d, std::span<const GroupId> z, std::size_t k,
                     double floor) {
  GroupModel model;
  fit(d, z, k, floor, model);
  double total = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) total += model.cost(d.target(j), z[j]);
  return total;
}

// Optimization step plus empty-group repair. `costs` is n x k scratch.
bool update(const TargetMajor& d, std::span<const GroupId> z, std::size_t k, double floor,
            std::vector<GroupId>& next, std::vector<double>& costs) {
  GroupModel model;
  fit(d, z, k, floor, model);
  const std::size_t n = d.targets();
  next.resize(n);
  costs.resize(n * k);
  std::vector<std::size_t> size(k, 0);
  for (std::size_t j = 0; j < n; ++j) {
    next[j] = model.cheapest(d.target(j), costs.data() + j * k);
    ++size[next[j]];
  }

  bool repaired = false;
  std::vector<bool> moved;
  for (std::size_t v = 0; v < k; ++v) {
    if (size[v] != 0) continue;
    if (moved.empty()) moved.assign(n, false);
    repaired = true;
    std::size_t donor = n;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (moved[j] || size[next[j]] < 2) continue;
      const double c = costs[j * k + next[j]];
      if (c > worst) {
        worst = c;
        donor = j;
      }
    }
    if (donor == n) throw Error("empty-group repair found no donor (n < k?)");
    --size[next[donor]];
    next[donor] = static_cast<GroupId>(v);
    ++size[v];
    moved[donor] = true;
  }
  return repaired;
}

std::vector<GroupId> random_labeling(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<GroupId> z(n);
  std::vector<std::size_t> size(k);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::fill(size.begin(), size.end(), 0);
    for (auto& g : z) {
      g = static_cast<GroupId>(rng.below(k));
      ++size[g];
    }
    if (std::none_of(size.begin(), size.end(), [](std::size_t s) { return s == 0; })) return z;
  }
  // Only reachable when n is barely above k: seed each group with one node of
  // a random permutation and draw the rest freely.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i + 1 < n; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
  for (std::size_t i = 0; i < n; ++i) {
    z[order[i]] = i < k ? static_cast<GroupId>(i) : static_cast<GroupId>(rng.below(k));
  }
  return z;
}

struct RestartResult {
  std::vector<GroupId> labels;
  double cost = 0.0;
  std::size_t iterations = 0;
};

}  // namespace

MeanMatrix estimate_means(const DistanceMatrix& d, const Labeling& z, double epsilon_floor) {
  const TargetMajor tm(d);
  check_labeling(tm, z.groups, z.k);
  GroupModel model;
  fit(tm, z.groups, z.k, epsilon_floor, model);
  return model.to_means();
}

CostMatrix node_costs(const DistanceMatrix& d, const MeanMatrix& means) {
  if (means.rows() != d.rows()) throw Error("node_costs: mean matrix rows != reference count");
  const TargetMajor tm(d);
  const GroupModel model = GroupModel::from_means(means);
  CostMatrix out(d.cols(), model.k);
  for (std::size_t j = 0; j < d.cols(); ++j) {
    for (std::size_t v = 0; v < model.k; ++v) out(j, v) = model.cost(tm.target(j), v);
  }
  return out;
}

double total_cost(const DistanceMatrix& d, const Labeling& z, double epsilon_floor) {
  const TargetMajor tm(d);
  check_labeling(tm, z.groups, z.k);
  return labeling_cost(tm, z.groups, z.k, epsilon_floor);
}

LocalUpdateResult local_update(const DistanceMatrix& d, const Labeling& z,
                               double epsilon_floor) {
  const TargetMajor tm(d);
  check_labeling(tm, z.groups, z.k);
  LocalUpdateResult result;
  result.labeling.k = z.k;
  std::vector<double> costs;
  result.repaired = update(tm, z.groups, z.k, epsilon_floor, result.labeling.groups, costs);
  return result;
}

RDModel regular_decomposition(const DistanceMatrix& d, const RDConfig& config,
                              std::uint64_t seed) {
  config.validate();
  const std::size_t n = d.cols();
  const std::size_t k = config.k;
  if (d.rows() == 0) throw Error("regular_decomposition: no reference nodes");
  if (n < k) {
    throw Error("regular_decomposition: fewer targets (" + std::to_string(n) +
                ") than groups (" + std::to_string(k) + ")");
  }
  const TargetMajor tm(d);

  std::vector<RestartResult> results(config.max_restarts);
  parallel_for(config.max_restarts, config.threads, [&](std::size_t r) {
    Rng rng = Rng::child(seed, r);
    std::vector<GroupId> z = random_labeling(n, k, rng);
    std::vector<GroupId> next;
    std::vector<double> costs;
    std::size_t t = 0;
    while (t < config.max_iterations) {
      update(tm, z, k, config.epsilon_floor, next, costs);
      ++t;
      if (config.early_stop && next == z) break;
      z.swap(next);
    }
    results[r].cost = labeling_cost(tm, z, k, config.epsilon_floor);
    results[r].iterations = t;
    results[r].labels = std::move(z);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].cost < results[best].cost) best = r;
  }

  RDModel model;
  model.labeling = Labeling{std::move(results[best].labels), k};
  model.cost = results[best].cost;
  model.iterations_used = results[best].iterations;
  model.best_restart = best;
  model.restarts_run = config.max_restarts;
  model.seed = seed;
  model.config = config;
  GroupModel fitted;
  fit(tm, model.labeling.groups, k, config.epsilon_floor, fitted);
  model.means = fitted.to_means();
  return model;
}

GroupId classify(std::span<const Distance> dist_to_refs, const MeanMatrix& means) {
  if (dist_to_refs.size() != means.rows()) {
    throw Error("classify: distance vector length != reference count");
  }
  const GroupModel model = GroupModel::from_means(means);
  std::vector<double> x(dist_to_refs.begin(), dist_to_refs.end());
  return model.cheapest(x.data(), nullptr);
}

std::vector<GroupId> classify_columns(const DistanceMatrix& d, const MeanMatrix& means) {
  if (d.rows() != means.rows()) throw Error("classify: mean matrix rows != reference count");
  const TargetMajor tm(d);
  const GroupModel model = GroupModel::from_means(means);
  std::vector<GroupId> out(d.cols());
  for (std::size_t j = 0; j < d.cols(); ++j) out[j] = model.cheapest(tm.target(j), nullptr);
  return out;
}

std::size_t knee_point(std::span<const double> costs, double tau) {
  const std::size_t k_max = costs.size();
  if (k_max == 0) throw Error("knee_point: empty cost curve");
  const double total = costs.front() - costs.back();
  const double tiny = 1e-12 * std::max(1.0, std::abs(costs.front()));
  const double scale = std::max(total, tiny);
  for (std::size_t k = 1; k < k_max; ++k) {
    if ((costs[k - 1] - costs[k]) / scale < tau) return k;
  }
  return k_max;
}

KSelection select_k(const DistanceMatrix& d, std::size_t k_max, const RDConfig& config,
                    std::uint64_t seed, double tau) {
  if (k_max < 1) throw Error("select_k: k_max must be at least 1");
  if (k_max > d.cols()) throw Error("select_k: k_max exceeds target count");
  KSelection out;
  for (std::size_t k = 1; k <= k_max; ++k) {
    RDConfig cfg = config;
    cfg.k = k;
    out.models.push_back(regular_decomposition(d, cfg, derive_seed(seed, k)));
    out.costs.push_back(out.models.back().cost);
    if (k > 1 && out.costs[k - 1] > out.costs[k - 2]) out.monotone = false;
  }
  out.k_star = knee_point(out.costs, tau);
  return out;
}

}  // namespace regdecomp
