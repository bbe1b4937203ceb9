#include "majority/sym_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace majority {
namespace {

double sign_with(double magnitude, double s) {
  return s >= 0.0 ? std::fabs(magnitude) : -std::fabs(magnitude);
}

// Householder reduction of z (in place) to tridiagonal form with
// accumulation of the orthogonal transform.  d receives the diagonal,
// e the subdiagonal in e[1..n-1].
void tridiagonalize(std::vector<std::vector<double>>& z, std::vector<double>& d,
                    std::vector<double>& e) {
  const std::size_t n = d.size();

  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    double scale = 0.0;
    if (l > 0) {
      for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(z[i][k]);
      if (scale == 0.0) {
        e[i] = z[i][l];
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          z[i][k] /= scale;
          h += z[i][k] * z[i][k];
        }
        double f = z[i][l];
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        z[i][l] = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          z[j][i] = z[i][j] / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += z[j][k] * z[i][k];
          for (std::size_t k = j + 1; k <= l; ++k) g += z[k][j] * z[i][k];
          e[j] = g / h;
          f += e[j] * z[i][j];
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = z[i][j];
          g = e[j] - hh * f;
          e[j] = g;
          for (std::size_t k = 0; k <= j; ++k) {
            z[j][k] -= f * e[k] + g * z[i][k];
          }
        }
      }
    } else {
      e[i] = z[i][l];
    }
    d[i] = h;
  }

  d[0] = 0.0;
  e[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] != 0.0) {
      for (std::size_t j = 0; j < i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k < i; ++k) g += z[i][k] * z[k][j];
        for (std::size_t k = 0; k < i; ++k) z[k][j] -= g * z[k][i];
      }
    }
    d[i] = z[i][i];
    z[i][i] = 1.0;
    for (std::size_t j = 0; j < i; ++j) {
      z[j][i] = 0.0;
      z[i][j] = 0.0;
    }
  }
}

// Implicit-shift QL on the tridiagonal (d, e), rotating the columns of z so
// they become the eigenvectors of the original matrix.
void ql_implicit(std::vector<double>& d, std::vector<double>& e,
                 std::vector<std::vector<double>>& z) {
  const std::size_t n = d.size();
  constexpr int kMaxSweeps = 50;
  const double eps = std::numeric_limits<double>::epsilon();

  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps) {
          throw std::runtime_error("eigensolver: QL failed to converge");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + sign_with(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (std::size_t k = 0; k < n; ++k) {
            f = z[k][i + 1];
            z[k][i + 1] = s * z[k][i] + c * f;
            z[k][i] = c * z[k][i] - s * f;
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

EigenDecomposition sym_eigen(const DenseMatrix& mat) {
  const std::size_t n = mat.n;
  if (n == 0) throw std::invalid_argument("sym_eigen: empty matrix");

  std::vector<std::vector<double>> z(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) z[i][j] = mat.at(i, j);
  }
  std::vector<double> d(n, 0.0);
  std::vector<double> e(n, 0.0);

  if (n == 1) {
    d[0] = z[0][0];
    z[0][0] = 1.0;
  } else {
    tridiagonalize(z, d, e);
    ql_implicit(d, e, z);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.assign(n, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors[k][i] = z[i][order[k]];
  }
  return out;
}

}  // namespace majority
