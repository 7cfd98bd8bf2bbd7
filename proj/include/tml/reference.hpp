#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tml/dyck.hpp"
#include "tml/ensemble.hpp"
#include "tml/spectral.hpp"

/// Serial, unoptimized counterparts of the parallel kernels. Kept for tests
/// and the benchmark; they share the RNG streams, so samples agree exactly.
namespace tml::reference {

MatrixSample sample_symmetric_matrix(const EntryDistribution& dist, std::size_t n,
                                     std::uint64_t seed);

/// Tr A^{2s} by 2s - 1 plain matrix products.
double trace_power(std::span<const double> a, std::size_t n, int s);

TraceEstimate mc_expected_trace(const EntryDistribution& dist, std::size_t n, int s,
                                std::size_t trials, std::uint64_t seed);

/// Sum of path_weight over for_each_closed_path.
double exact_expected_trace(const EntryDistribution& dist, int n, int s, bool normalized);

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// tol times the matrix norm. Ascending.
std::vector<double> jacobi_eigenvalues(std::span<const double> a, std::size_t n,
                                       double tol = 1e-12, int max_sweeps = 100);

std::vector<double> sample_lambda_max(const EntryDistribution& dist, std::size_t n,
                                      std::size_t trials, std::uint64_t seed);

/// Monte Carlo E[K] with the same per-sample seeds as the parallel version.
ExpectationResult expected_k_functional_mc(int s, std::size_t trials, std::uint64_t seed);

}  // namespace tml::reference
