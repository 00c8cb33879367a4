#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "regdecomp/graph.hpp"

namespace regdecomp {

using GroupId = std::uint32_t;

inline constexpr double kDefaultEpsilonFloor = 1e-6;
inline constexpr double kDefaultKneeThreshold = 0.02;

/// Group index per target node. Groups are numbered 0..k-1 in memory;
/// files written by the CLI use 1..k.
struct Labeling {
  std::vector<GroupId> groups;
  std::size_t k = 0;

  std::size_t size() const noexcept { return groups.size(); }
  std::vector<std::size_t> group_sizes() const;
  bool all_groups_nonempty() const;
  /// Throws Error if any index is >= k.
  void validate() const;

  friend bool operator==(const Labeling&, const Labeling&) = default;
};

/// Dense row-major matrix of doubles.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  friend bool operator==(const RealMatrix&, const RealMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Fitted mean distance from each reference (row) to each group (column).
struct MeanMatrix : RealMatrix {
  using RealMatrix::RealMatrix;
};

/// Cost of placing each target (row) in each group (column).
struct CostMatrix : RealMatrix {
  using RealMatrix::RealMatrix;
};

struct RDConfig {
  std::size_t k = 2;
  std::size_t max_restarts = 100;   // restarts from random labelings
  std::size_t max_iterations = 30;  // local updates per restart
  double epsilon_floor = kDefaultEpsilonFloor;
  bool early_stop = true;           // stop a restart at a fixed point
  std::size_t threads = 1;          // 0 = hardware concurrency

  void validate() const;
};

struct RDModel {
  Labeling labeling;
  MeanMatrix means;
  double cost = 0.0;
  std::size_t restarts_run = 0;
  std::size_t iterations_used = 0;  // local updates in the winning restart
  std::size_t best_restart = 0;
  std::uint64_t seed = 0;
  RDConfig config;
};

/// Group-conditional row averages of D, floored at `epsilon_floor`.
/// Every group must be nonempty.
MeanMatrix estimate_means(const DistanceMatrix& d, const Labeling& z,
                          double epsilon_floor = kDefaultEpsilonFloor);

/// cost(j, v) = sum_i means(i, v) - D(i, j) * log(means(i, v)).
/// The log-factorial term of the Poisson likelihood is constant in the
/// labeling and is left out.
CostMatrix node_costs(const DistanceMatrix& d, const MeanMatrix& means);

/// Negative log-likelihood of a labeling with means re-estimated from it.
double total_cost(const DistanceMatrix& d, const Labeling& z,
                  double epsilon_floor = kDefaultEpsilonFloor);

struct LocalUpdateResult {
  Labeling labeling;
  /// True when some group came out empty and had nodes donated to it.
  bool repaired = false;
};

/// One averaging + reassignment step. Each target moves to its cheapest
/// group (ties to the smallest index). Groups left empty are then filled in
/// increasing order, each with the highest-cost node (under its new group)
/// that has not been moved by the repair and whose group keeps at least one
/// member; ties go to the smallest node index.
LocalUpdateResult local_update(const DistanceMatrix& d, const Labeling& z,
                               double epsilon_floor = kDefaultEpsilonFloor);

/// Multi-restart search for the minimum-cost labeling. Restart r draws its
/// initial labeling from child stream r of `seed`, so the result is the same
/// for every thread count. Ties in cost go to the earliest restart.
RDModel regular_decomposition(const DistanceMatrix& d, const RDConfig& config,
                              std::uint64_t seed);

/// Cheapest group for a node given its distances to the m references.
GroupId classify(std::span<const Distance> dist_to_refs, const MeanMatrix& means);

/// classify() applied to every column of D.
std::vector<GroupId> classify_columns(const DistanceMatrix& d, const MeanMatrix& means);

/// Smallest k whose relative cost drop to k+1 falls below tau, where drops
/// are relative to the total drop L(1) - L(k_max). `costs[i]` is L(i + 1).
std::size_t knee_point(std::span<const double> costs, double tau = kDefaultKneeThreshold);

struct KSelection {
  std::size_t k_star = 1;
  std::vector<double> costs;  // costs[i] = L(i + 1)
  std::vector<RDModel> models;
  bool monotone = true;       // false if some L(k + 1) > L(k)
};

/// Runs regular_decomposition for k = 1..k_max (stream k of `seed` for each)
/// and picks the knee of the cost curve.
KSelection select_k(const DistanceMatrix& d, std::size_t k_max, const RDConfig& config,
                    std::uint64_t seed, double tau = kDefaultKneeThreshold);

}  // namespace regdecomp
