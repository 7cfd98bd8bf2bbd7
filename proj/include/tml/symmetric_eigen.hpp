#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace tml {

struct EigenOptions {
  /// Off-diagonal entries below tolerance * (|d_m| + |d_m+1|) are deflated.
  double tolerance = 1e-10;
  /// QL sweeps allowed per eigenvalue before giving up.
  int max_iterations = 60;
};

/// Raised when the QL iteration fails to deflate an eigenvalue.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::size_t index, double residual);

  std::size_t index() const noexcept { return index_; }
  /// |off-diagonal| that was still above tolerance when iterations ran out.
  double residual() const noexcept { return residual_; }

 private:
  std::size_t index_;
  double residual_;
};

/// Symmetric tridiagonal matrix: diag[0..n), offdiag[i] couples i and i+1.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;  // size n-1 (empty for n <= 1)
};

/// Householder reduction of a dense symmetric row-major matrix. Reads only the
/// lower triangle. Each step applies the previous reflection and forms the
/// next matrix-vector product in a single sweep over the trailing block.
Tridiagonal tridiagonalize(std::span<const double> a, std::size_t n);

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with shifts,
/// sorted ascending.
std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t, const EigenOptions& opt = {});

/// Full spectrum of a dense symmetric matrix, sorted ascending.
std::vector<double> symmetric_eigenvalues(std::span<const double> a, std::size_t n,
                                          const EigenOptions& opt = {});

}  // namespace tml
