#pragma once

#include "rkgal/correlation.hpp"
#include "rkgal/family.hpp"

namespace rkgal {

/// Gram-type matrix of inner products between shifted trial and test
/// generators: entries(i, j) = <phi(. - i - theta_i), phit(. - j - thetat_j)>
/// for i, j in [-L, L], stored with the flat map i -> i + L.
struct CorrelationMatrix {
  Matrix entries;
  ShiftedFamily trial;
  ShiftedFamily test;
  IndexWindow window;

  Scalar entry(int i, int j) const {
    return entries(window.to_flat(i), window.to_flat(j));
  }
};

CorrelationMatrix assemble_correlation(const ShiftedFamily& trial,
                                       const ShiftedFamily& test, int L,
                                       const QuadratureSpec& spec = {});

/// Trial Gram matrix of a single family (trial = test).
Matrix gram_matrix(const ShiftedFamily& family, int L,
                   const QuadratureSpec& spec = {});

/// Reproducing kernel built from the inverse of the correlation matrix over
/// the padded window [-L-M, L+M]:
///   K(x, y) = sum_{i,j} phi_i(x - i) b_ji phit_j(y - j),  (b_ij) = A^{-1}.
/// Stored as kernel_coeffs = (A^{-1})^T so K(x, y) = phi(x)^T B phit(y).
struct TruncatedKernel {
  ShiftedFamily trial;
  ShiftedFamily test;
  IndexWindow padded;
  int padding = 0;
  Matrix kernel_coeffs;

  Scalar operator()(Scalar x, Scalar y) const;
  /// Column vector phi_i(x - i - theta_i) over the padded window.
  Vector trial_stack(Scalar x) const;
  Vector test_stack(Scalar y) const;
  /// Rows = grid points, columns = padded basis indices.
  Matrix trial_stack_rows(const Vector& xs) const;
  Matrix test_stack_rows(const Vector& ys) const;
};

/// Inverts the padded correlation matrix. Throws SingularCorrelation when its
/// spectral condition number exceeds 1e12.
TruncatedKernel build_truncated_kernel(const ShiftedFamily& trial,
                                       const ShiftedFamily& test, int L,
                                       int padding,
                                       const QuadratureSpec& spec = {});

/// Trapezoid-rule discretization of T0 f(x) = int K(x, y) f(y) dy on the
/// grid; `values` holds f at the grid points. Throws GridTooCoarse when the
/// spacing exceeds 0.05, WindowMismatch when the grid does not cover the
/// kernel's active test-side window.
Vector apply_integral_operator(const TruncatedKernel& kernel,
                               const Vector& values, const UniformGrid& grid);

/// Basis evaluations of a family at arbitrary points: entry (n, i) =
/// phi(x_n - i - theta_i) for i in [-L, L]. Shared by Galerkin assembly,
/// stability bounds and the kernel grid sweeps.
Matrix sample_stack(const ShiftedFamily& family, const Vector& points, int L);

/// Spectral condition number via singular values (+inf when the smallest
/// singular value underflows).
Scalar condition_number(const Matrix& m);

}  // namespace rkgal
