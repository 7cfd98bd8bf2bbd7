#include "tml/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tml {

ConvergenceError::ConvergenceError(std::size_t index, double residual)
    : std::runtime_error("QL iteration did not converge for eigenvalue " + std::to_string(index) +
                         " (residual " + std::to_string(residual) + ")"),
      index_(index),
      residual_(residual) {}

namespace {

// Turns row `i` (entries 0..i-1, already the current lower triangle) into a
// scaled Householder vector in u[0..i). Returns H = u.u / 2, or 0 when the row
// is already zero (no reflection needed). Writes the subdiagonal to *sub.
double make_reflector(const double* row, std::size_t i, double* u, double* sub) {
  double scale = 0.0;
  for (std::size_t k = 0; k < i; ++k) scale += std::abs(row[k]);
  if (scale == 0.0) {
    *sub = 0.0;
    return 0.0;
  }
  double h = 0.0;
  for (std::size_t k = 0; k < i; ++k) {
    u[k] = row[k] / scale;
    h += u[k] * u[k];
  }
  const double f = u[i - 1];
  const double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
  *sub = scale * g;
  h -= f * g;
  u[i - 1] = f - g;
  return h;
}

// p[0..m) = A[0..m, 0..m) * u using the lower triangle only.
void symmetric_matvec(const double* a, std::size_t n, std::size_t m, const double* u, double* p) {
  std::fill(p, p + m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double* row = a + j * n;
    const double uj = u[j];
    double dot = 0.0;
#pragma omp simd reduction(+ : dot)
    for (std::size_t k = 0; k < j; ++k) {
      dot += row[k] * u[k];
      p[k] += row[k] * uj;
    }
    p[j] += dot + row[j] * uj;
  }
}

}  // namespace

Tridiagonal tridiagonalize(std::span<const double> input, std::size_t n) {
  if (input.size() != n * n) throw std::invalid_argument("matrix span has wrong size");
  Tridiagonal t;
  t.diag.assign(n, 0.0);
  t.offdiag.assign(n > 0 ? n - 1 : 0, 0.0);
  if (n == 0) return t;
  if (n == 1) {
    t.diag[0] = input[0];
    return t;
  }

  // Work on a lower-triangular copy; the upper triangle is never read.
  std::vector<double> a(input.begin(), input.end());
  std::vector<double> u(n), p(n), q(n), next_u(n), next_p(n);

  // Reflection for the last row, then its matvec, before the fused sweeps.
  std::size_t i = n - 1;
  double h = (i >= 2) ? make_reflector(&a[i * n], i, u.data(), &t.offdiag[i - 1]) : 0.0;
  if (i < 2) t.offdiag[0] = a[1 * n + 0];
  if (h != 0.0) symmetric_matvec(a.data(), n, i, u.data(), p.data());

  for (; i >= 1; --i) {
    t.diag[i] = a[i * n + i];
    if (i == 1) break;
    const std::size_t m = i;  // size of the block being transformed
    const bool reflect = h != 0.0;
    if (reflect) {
      // q = p/H - K u, K = u.p / (2 H^2), so that A' = A - u q^T - q u^T.
      double up = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        p[k] /= h;
        up += u[k] * p[k];
      }
      const double kk = up / (2.0 * h);
      for (std::size_t k = 0; k < m; ++k) q[k] = p[k] - kk * u[k];
    }

    // Row m-1 of the updated block becomes the next reflector source.
    const std::size_t last = m - 1;
    double* last_row = &a[last * n];
    if (reflect) {
      const double ul = u[last];
      const double ql = q[last];
      for (std::size_t k = 0; k <= last; ++k) last_row[k] -= ul * q[k] + ql * u[k];
    }
    double next_h = 0.0;
    if (last >= 2) {
      next_h = make_reflector(last_row, last, next_u.data(), &t.offdiag[last - 1]);
    } else {
      t.offdiag[0] = last_row[0];
    }

    // Fused sweep over rows 0..last-1: apply this step's update and accumulate
    // the next step's matvec with next_u.
    const bool next_reflect = next_h != 0.0;
    if (next_reflect) std::fill(next_p.begin(), next_p.begin() + static_cast<std::ptrdiff_t>(last), 0.0);
    if (reflect || next_reflect) {
      for (std::size_t j = 0; j < last; ++j) {
        double* row = &a[j * n];
        const double uj = u[j];
        const double qj = q[j];
        if (reflect) {
#pragma omp simd
          for (std::size_t k = 0; k <= j; ++k) row[k] -= uj * q[k] + qj * u[k];
        }
        if (next_reflect) {
          const double vj = next_u[j];
          double dot = 0.0;
#pragma omp simd reduction(+ : dot)
          for (std::size_t k = 0; k < j; ++k) {
            dot += row[k] * next_u[k];
            next_p[k] += row[k] * vj;
          }
          next_p[j] += dot + row[j] * vj;
        }
      }
    }

    std::swap(u, next_u);
    std::swap(p, next_p);
    h = next_h;
  }
  t.diag[0] = a[0];
  return t;
}

std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t, const EigenOptions& opt) {
  const std::size_t n = t.diag.size();
  std::vector<double> d = t.diag;
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = t.offdiag[i];
  if (n <= 1) return d;

  double anorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(d[i]) + std::abs(e[i]));
  const double floor = std::numeric_limits<double>::epsilon() * anorm;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= opt.tolerance * dd || std::abs(e[m]) <= floor) break;
      }
      if (m == l) break;
      if (iter++ == opt.max_iterations) throw ConvergenceError(l, std::abs(e[l]));

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t ii = m; ii-- > l;) {
        double f = s * e[ii];
        const double b = c * e[ii];
        r = std::hypot(f, g);
        e[ii + 1] = r;
        if (r == 0.0) {
          d[ii + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[ii + 1] - p;
        r = (d[ii] - g) * s + 2.0 * c * b;
        p = s * r;
        d[ii + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> symmetric_eigenvalues(std::span<const double> a, std::size_t n,
                                          const EigenOptions& opt) {
  return tridiagonal_eigenvalues(tridiagonalize(a, n), opt);
}

}  // namespace tml
