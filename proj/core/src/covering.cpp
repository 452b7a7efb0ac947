#include "ctphs/covering.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "ctphs/error.hpp"
#include "ctphs/parallel.hpp"

namespace ctphs {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxIndexedDim = 5;

// Uniform grid over ambient coordinates of sphere points. Points within
// geodesic distance s have chord < 2 sin(s/2) = cell, so neighbors sit in
// adjacent cells.
class SphereGrid {
 public:
  SphereGrid(int dim, double radius) : dim_(dim), cell_(2.0 * std::sin(0.5 * std::min(radius, kPi))) {}

  void insert(const Point& p, int idx) { cells_[key(p, 0)].push_back(idx); }

  template <class F>
  void for_each_near(const Point& p, F&& f) const {
    std::array<long, kMaxIndexedDim> base{};
    for (int i = 0; i < dim_; ++i) base[i] = static_cast<long>(std::floor(p.coords[i] / cell_));
    const int total = static_cast<int>(std::pow(3, dim_));
    for (int code = 0; code < total; ++code) {
      std::array<long, kMaxIndexedDim> c{};
      int rem = code;
      for (int i = 0; i < dim_; ++i) {
        c[i] = base[i] + rem % 3 - 1;
        rem /= 3;
      }
      auto it = cells_.find(hash(c));
      if (it == cells_.end()) continue;
      for (int idx : it->second) f(idx);
    }
  }

 private:
  std::uint64_t key(const Point& p, int) const {
    std::array<long, kMaxIndexedDim> c{};
    for (int i = 0; i < dim_; ++i) c[i] = static_cast<long>(std::floor(p.coords[i] / cell_));
    return hash(c);
  }
  std::uint64_t hash(const std::array<long, kMaxIndexedDim>& c) const {
    // Cell indices are bounded by 1/cell, far below 2^12 per axis in practice.
    std::uint64_t h = 0;
    for (int i = 0; i < dim_; ++i) h = (h << 12) ^ static_cast<std::uint64_t>(c[i] + 2048);
    return h;
  }

  int dim_;
  double cell_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

bool indexable(const ManifoldSpec& spec, double radius) {
  return spec.kind == Kind::Sphere && spec.d <= kMaxIndexedDim && radius < 0.5 && radius > 2e-3;
}

// Nearest node distance and the count of nodes within r, for one query.
struct Query {
  double nearest = std::numeric_limits<double>::infinity();
  int within = 0;
};

Query brute_query(const ManifoldSpec& spec, const std::vector<Point>& nodes, const Point& x, double r) {
  Query q;
  for (const auto& n : nodes) {
    const double t = distance(spec, x, n);
    q.nearest = std::min(q.nearest, t);
    if (t <= r) ++q.within;
  }
  return q;
}

}  // namespace

Covering build_covering(const ManifoldSpec& spec, double r, std::uint64_t seed,
                        const CoveringOptions& opts) {
  if (!spec.supports_points()) throw UnsupportedKind("build_covering: no point model for the Cayley plane");
  if (!(r > 0.0 && r <= kPi)) throw ParameterError("build_covering: r must lie in (0, pi]");
  if (opts.rejection_budget < 1) throw ParameterError("build_covering: rejection budget must be >= 1");

  Covering cov;
  cov.spec = spec;
  cov.r = r;
  cov.seed = seed;
  cov.separation = opts.separation_factor * r;
  Rng rng = make_rng(seed);

  if (r >= kPi) {
    cov.nodes.push_back(sample_uniform(spec, rng));
    cov.proposals = 1;
  } else {
    // A maximal s-separated set has at least 1/|B(s)| points.
    const double lower = 1.0 / ball_measure(spec, cov.separation);
    if (lower > static_cast<double>(opts.max_nodes)) {
      std::ostringstream diag;
      diag << "{\"nodes\":0,\"lower_bound_nodes\":" << lower << ",\"max_nodes\":" << opts.max_nodes << "}";
      throw BudgetExceeded("build_covering: a " + std::to_string(cov.separation) +
                               "-separated maximal set needs at least " +
                               std::to_string(static_cast<long long>(lower)) + " nodes",
                           diag.str());
    }
    const double sep = cov.separation;
    const bool indexed = indexable(spec, sep);
    SphereGrid grid(spec.ambient_dim(), sep);
    int rejections = 0;
    while (rejections < opts.rejection_budget) {
      Point p = sample_uniform(spec, rng);
      ++cov.proposals;
      bool ok = true;
      auto check = [&](int idx) {
        if (ok && distance(spec, p, cov.nodes[idx]) < sep) ok = false;
      };
      if (indexed) {
        grid.for_each_near(p, check);
      } else {
        for (int i = 0; ok && i < static_cast<int>(cov.nodes.size()); ++i) check(i);
      }
      if (!ok) {
        ++rejections;
        continue;
      }
      rejections = 0;
      if (indexed) grid.insert(p, static_cast<int>(cov.nodes.size()));
      cov.nodes.push_back(std::move(p));
      if (cov.nodes.size() > opts.max_nodes) {
        std::ostringstream diag;
        diag << "{\"nodes\":" << cov.nodes.size() << ",\"proposals\":" << cov.proposals
             << ",\"max_nodes\":" << opts.max_nodes << "}";
        throw BudgetExceeded("build_covering: node budget exhausted", diag.str());
      }
    }
  }
  cov.verification = verify_covering(spec, cov.nodes, r, opts.verify_probes, seed ^ 0x5eedc0feULL, opts.threads);
  cov.multiplicity_observed = cov.verification.multiplicity;
  return cov;
}

CoverageCheck verify_covering(const ManifoldSpec& spec, const std::vector<Point>& nodes, double r,
                              int probes, std::uint64_t seed, int threads) {
  if (nodes.empty()) throw ParameterError("verify_covering: empty node set");
  if (probes < 1) throw ParameterError("verify_covering: probes must be >= 1");
  const std::size_t m = nodes.size();
  const std::size_t total = static_cast<std::size_t>(probes) + 2 * m;
  const bool indexed = indexable(spec, r);
  SphereGrid grid(spec.ambient_dim(), r);
  if (indexed) {
    for (std::size_t i = 0; i < m; ++i) grid.insert(nodes[i], static_cast<int>(i));
  }

  std::vector<double> nearest(total);
  std::vector<int> within(total);
  parallel_for(
      total,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          // Probe i: uniform for i < probes, then node i', then a point at
          // distance r/2 from node i' in a seeded random direction.
          Point x;
          if (i < static_cast<std::size_t>(probes)) {
            Rng rng = make_rng(seed, i);
            x = sample_uniform(spec, rng);
          } else if (i < static_cast<std::size_t>(probes) + m) {
            x = nodes[i - probes];
          } else {
            Rng rng = make_rng(seed, i);
            x = point_at_distance(spec, nodes[i - probes - m], std::min(0.5 * r, kPi), rng);
          }
          Query q;
          if (indexed) {
            grid.for_each_near(x, [&](int idx) {
              const double t = distance(spec, x, nodes[idx]);
              q.nearest = std::min(q.nearest, t);
              if (t <= r) ++q.within;
            });
            if (!(q.nearest <= r)) q = brute_query(spec, nodes, x, r);
          } else {
            q = brute_query(spec, nodes, x, r);
          }
          nearest[i] = q.nearest;
          within[i] = q.within;
        }
      },
      threads);

  CoverageCheck out;
  out.probes = static_cast<int>(total);
  for (std::size_t i = 0; i < total; ++i) {
    out.max_gap = std::max(out.max_gap, nearest[i]);
    out.multiplicity = std::max(out.multiplicity, within[i]);
  }
  out.covered = out.max_gap <= r;
  return out;
}

ShellCounts shell_counts(const ManifoldSpec& spec, const std::vector<Point>& nodes, const Point& y,
                         int n, double inner_radius) {
  if (n < 1) throw ParameterError("shell_counts: n must be >= 1");
  ShellCounts sc;
  sc.counts.assign(static_cast<std::size_t>(n), 0);
  for (const auto& w : nodes) {
    const double t = distance(spec, w, y);
    const int k = std::clamp(static_cast<int>(std::floor(t * n / kPi)), 0, n - 1);
    ++sc.counts[k];
    if (t <= inner_radius) ++sc.inner;
  }
  return sc;
}

double min_separation(const ManifoldSpec& spec, const std::vector<Point>& nodes, int threads) {
  const std::size_t m = nodes.size();
  if (m < 2) return kPi;
  std::vector<double> row(m, kPi);
  parallel_for(
      m,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          for (std::size_t j = i + 1; j < m; ++j) row[i] = std::min(row[i], distance(spec, nodes[i], nodes[j]));
        }
      },
      threads);
  return *std::min_element(row.begin(), row.end());
}

}  // namespace ctphs
