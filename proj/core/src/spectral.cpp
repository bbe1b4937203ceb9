#include "majority/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "majority/errors.hpp"
#include "majority/rng.hpp"

namespace majority {
namespace {

std::vector<double> inv_sqrt_degrees(const Graph& g) {
  const NodeId n = g.node_count();
  std::vector<double> inv(n);
  for (NodeId v = 0; v < n; ++v) {
    const std::uint32_t d = g.degree(v);
    if (d == 0) {
      throw DomainError("graph has an isolated vertex (node " +
                        std::to_string(v) + ")");
    }
    inv[v] = 1.0 / std::sqrt(static_cast<double>(d));
  }
  return inv;
}

// y = M x through the adjacency lists, O(n + m).
void apply_weighted(const Graph& g, const std::vector<double>& inv_sqrt_deg,
                    const std::vector<double>& x, std::vector<double>& y) {
  const NodeId n = g.node_count();
  for (NodeId v = 0; v < n; ++v) {
    double acc = 0.0;
    for (const NodeId u : g.neighbors(v)) acc += x[u] * inv_sqrt_deg[u];
    y[v] = acc * inv_sqrt_deg[v];
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(std::vector<double>& y, double alpha, const std::vector<double>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace

DenseMatrix weighted_adjacency(const Graph& g) {
  const NodeId n = g.node_count();
  if (n > kDenseSpectralCap) {
    throw SizeError("weighted_adjacency: n = " + std::to_string(n) +
                    " exceeds the dense cap of " +
                    std::to_string(kDenseSpectralCap));
  }
  const auto inv = inv_sqrt_degrees(g);
  DenseMatrix m(n);
  for (NodeId v = 0; v < n; ++v) {
    for (const NodeId u : g.neighbors(v)) {
      m.at(v, u) = inv[v] * inv[u];
    }
  }
  return m;
}

SpectralReport spectrum(const Graph& g) {
  const NodeId n = g.node_count();
  if (n > kDenseSpectralCap) {
    throw SizeError("spectrum: n = " + std::to_string(n) +
                    " exceeds the dense cap of " +
                    std::to_string(kDenseSpectralCap));
  }
  if (!g.connected()) {
    throw DomainError("spectrum requires a connected graph");
  }
  const auto inv = inv_sqrt_degrees(g);
  const DenseMatrix m = weighted_adjacency(g);
  EigenDecomposition eig = sym_eigen(m);

  const std::size_t count = eig.values.size();
  SpectralReport report;
  report.eigenvalues.assign(eig.values.rbegin(), eig.values.rend());

  for (const double v : report.eigenvalues) {
    if (std::fabs(v) > 1.0 + 1e-9) {
      throw std::runtime_error(
          "spectrum: eigenvalue " + std::to_string(v) + " outside [-1, 1]");
    }
  }
  if (std::fabs(report.eigenvalues.front() - 1.0) > 1e-8) {
    throw std::runtime_error(
        "spectrum: top eigenvalue of a connected graph is not 1");
  }

  // Residuals computed through the adjacency lists, not the dense matrix,
  // so they independently check the assembled eigenpairs.
  std::vector<double> mv(n);
  double worst = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    // eig is ascending; walk it in the report's descending order.
    const std::size_t src = count - 1 - k;
    apply_weighted(g, inv, eig.vectors[src], mv);
    axpy(mv, -eig.values[src], eig.vectors[src]);
    worst = std::max(worst, norm2(mv));
  }
  report.max_residual = worst;
  if (worst > 1e-8) {
    throw std::runtime_error("spectrum: eigenpair residual " +
                             std::to_string(worst) + " exceeds 1e-8");
  }

  report.lambda = 0.0;
  if (count >= 2) {
    report.lambda = std::max(std::fabs(report.eigenvalues[1]),
                             std::fabs(report.eigenvalues.back()));
  }
  return report;
}

LambdaEstimate estimate_lambda(const Graph& g, std::uint64_t seed,
                               std::uint64_t max_iterations,
                               double tolerance) {
  const NodeId n = g.node_count();
  if (n < 2) throw DomainError("estimate_lambda requires n >= 2");
  if (!g.connected()) {
    throw DomainError("estimate_lambda requires a connected graph");
  }
  const auto inv = inv_sqrt_degrees(g);

  // Principal unit eigenvector of M.
  std::vector<double> u(n);
  for (NodeId v = 0; v < n; ++v) {
    u[v] = std::sqrt(static_cast<double>(g.degree(v)));
  }
  const double un = norm2(u);
  for (double& c : u) c /= un;

  SplitMix64 rng(derive_stream(seed, 0x4c616d6264614573ULL));
  std::vector<double> x(n);
  std::vector<double> y(n);
  std::vector<double> tmp(n);

  auto reseed = [&]() {
    for (NodeId v = 0; v < n; ++v) x[v] = rng.uniform01() - 0.5;
    axpy(x, -dot(u, x), u);
    const double nx = norm2(x);
    if (nx > 0) {
      for (double& c : x) c /= nx;
    }
  };
  reseed();

  LambdaEstimate est;
  int reseeds = 0;
  for (std::uint64_t it = 1; it <= max_iterations; ++it) {
    apply_weighted(g, inv, x, tmp);
    apply_weighted(g, inv, tmp, y);
    axpy(y, -dot(u, y), u);

    const double rho = dot(x, y);
    // residual of (rho, x) as an eigenpair of the deflated M^2
    tmp = y;
    axpy(tmp, -rho, x);
    const double res = norm2(tmp);

    est.iterations = it;
    est.residual = res;
    est.lambda = std::sqrt(std::max(rho, 0.0));
    if (res <= tolerance) {
      est.converged = true;
      return est;
    }

    const double ny = norm2(y);
    if (ny < 1e-200) {
      // x fell into the kernel of the deflated operator; restart.
      if (++reseeds > 3) {
        est.lambda = 0.0;
        est.converged = true;
        return est;
      }
      reseed();
      continue;
    }
    x = y;
    for (double& c : x) c /= ny;
  }
  return est;
}

double estimate_top_eigenvalue(const Graph& g, std::uint64_t seed,
                               std::uint64_t iterations) {
  const NodeId n = g.node_count();
  if (n < 1) throw DomainError("estimate_top_eigenvalue requires n >= 1");
  const auto inv = inv_sqrt_degrees(g);

  SplitMix64 rng(derive_stream(seed, 0x546f704569674573ULL));
  std::vector<double> x(n);
  std::vector<double> y(n);
  for (NodeId v = 0; v < n; ++v) x[v] = 0.5 + rng.uniform01();
  const double nx = norm2(x);
  for (double& c : x) c /= nx;

  double rho = 0.0;
  for (std::uint64_t it = 0; it < iterations; ++it) {
    apply_weighted(g, inv, x, y);
    rho = dot(x, y);
    const double ny = norm2(y);
    if (ny == 0.0) return 0.0;
    for (double& c : y) c /= ny;
    x = y;
  }
  return rho;
}

MixingCheck mixing_check(const Graph& g, double lambda,
                         std::span<const NodeId> s_nodes,
                         std::span<const NodeId> t_nodes) {
  const NodeId n = g.node_count();
  std::vector<std::uint8_t> in_s(n, 0);
  std::vector<std::uint8_t> in_t(n, 0);
  for (const NodeId v : s_nodes) {
    if (v >= n) throw ParameterError("mixing_check: S node out of range");
    in_s[v] = 1;
  }
  for (const NodeId v : t_nodes) {
    if (v >= n) throw ParameterError("mixing_check: T node out of range");
    in_t[v] = 1;
  }

  MixingCheck c;
  for (NodeId v = 0; v < n; ++v) {
    const std::uint32_t d = g.degree(v);
    if (in_s[v]) {
      c.vol_s += d;
      for (const NodeId w : g.neighbors(v)) {
        if (in_t[w]) ++c.e_st;
      }
    }
    if (in_t[v]) c.vol_t += d;
  }

  const double vol_total = static_cast<double>(g.total_volume());
  c.expected = vol_total > 0.0 ? static_cast<double>(c.vol_s) *
                                     static_cast<double>(c.vol_t) / vol_total
                               : 0.0;
  c.lhs = std::fabs(static_cast<double>(c.e_st) - c.expected);
  c.rhs = lambda * std::sqrt(static_cast<double>(c.vol_s) *
                             static_cast<double>(c.vol_t));
  c.holds = c.lhs <= c.rhs + 1e-9;
  return c;
}

}  // namespace majority
