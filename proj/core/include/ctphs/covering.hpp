#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ctphs/manifold.hpp"

namespace ctphs {

struct CoverageCheck {
  bool covered = false;
  /// Largest distance from a probe to its nearest node.
  double max_gap = 0.0;
  /// max #(nodes ∩ B(x, r)) over probes x and nodes x.
  int multiplicity = 0;
  int probes = 0;
};

struct CoveringOptions {
  /// Stop after this many consecutive rejected proposals.
  int rejection_budget = 10000;
  /// Abort with BudgetExceeded beyond this many nodes.
  std::size_t max_nodes = 100000;
  /// Separation as a fraction of r.
  double separation_factor = 0.5;
  /// Probes used by the verification that always follows construction.
  int verify_probes = 100000;
  int threads = 0;
};

struct Covering {
  ManifoldSpec spec;
  std::vector<Point> nodes;
  double r = 0.0;
  double separation = 0.0;
  int multiplicity_observed = 0;
  std::uint64_t seed = 0;
  std::size_t proposals = 0;
  CoverageCheck verification;
};

/// Greedy maximal separated set grown from uniform proposals. Throws
/// UnsupportedKind for the Cayley plane, ParameterError for r outside
/// (0, π], and BudgetExceeded when the node budget would be exceeded.
Covering build_covering(const ManifoldSpec& spec, double r, std::uint64_t seed,
                        const CoveringOptions& opts = {});

/// Monte Carlo probes plus node-based probes (points at distance r/2 from
/// nodes, where greedy gaps concentrate).
CoverageCheck verify_covering(const ManifoldSpec& spec, const std::vector<Point>& nodes, double r,
                              int probes, std::uint64_t seed = 0, int threads = 0);

struct ShellCounts {
  /// counts[k] = #{ω : kπ/n <= d(ω, y) < (k+1)π/n}; the last shell is closed.
  std::vector<int> counts;
  /// #{ω : d(ω, y) <= inner_radius}.
  int inner = 0;
};

ShellCounts shell_counts(const ManifoldSpec& spec, const std::vector<Point>& nodes, const Point& y,
                         int n, double inner_radius = 0.0);

/// Smallest pairwise node distance (O(m²) unless an index applies).
double min_separation(const ManifoldSpec& spec, const std::vector<Point>& nodes, int threads = 0);

}  // namespace ctphs
