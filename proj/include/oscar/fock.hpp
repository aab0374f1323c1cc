// fock.hpp — truncated two-mode Fock space: basis indexing, ladder matrices, thermal states
#pragma once

#include <oscar/errors.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace oscar::lindblad {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// Composite space of two truncated modes. Flat index is row-major with the
// c mode outer: flat(n_c, n_r) = n_c·dim_r + n_r.
struct FockBasis {
  int dim_c = 2;
  int dim_r = 2;

  void validate() const {
    if (dim_c < 2 || dim_r < 2) throw ConfigError("basis: each mode needs at least 2 levels");
  }
  int dim() const { return dim_c * dim_r; }
  int flat(int n_c, int n_r) const { return n_c * dim_r + n_r; }
  int level_c(int flat_index) const { return flat_index / dim_r; }
  int level_r(int flat_index) const { return flat_index % dim_r; }
};

// Single-mode truncated annihilation matrix: ⟨n−1|a|n⟩ = √n.
inline Matrix single_mode_annihilator(int dim) {
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Annihilation matrices of both modes embedded in the composite space.
struct ModeMatrices {
  FockBasis basis;
  Matrix c;  // a ⊗ I
  Matrix r;  // I ⊗ a
};

inline ModeMatrices build_ops(const FockBasis& basis) {
  basis.validate();
  ModeMatrices m;
  m.basis = basis;
  m.c = kron(single_mode_annihilator(basis.dim_c), Matrix::Identity(basis.dim_r, basis.dim_r));
  m.r = kron(Matrix::Identity(basis.dim_c, basis.dim_c), single_mode_annihilator(basis.dim_r));
  return m;
}

// Single-mode thermal (geometric) state normalized over the truncated space:
// p_n ∝ (n̄/(n̄+1))^n.
inline Matrix thermal_state(double nbar, int dim) {
  if (nbar < 0.0) throw ConfigError("thermal_state: occupation must be nonnegative");
  if (dim < 1) throw ConfigError("thermal_state: dimension must be positive");
  Eigen::VectorXd p(dim);
  const double q = nbar / (nbar + 1.0);
  double w = 1.0;
  for (int n = 0; n < dim; ++n, w *= q) p(n) = w;
  p /= p.sum();
  Matrix rho = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) rho(n, n) = p(n);
  return rho;
}

inline Matrix thermal_product(const FockBasis& basis, double nbar_c, double nbar_r) {
  return kron(thermal_state(nbar_c, basis.dim_c), thermal_state(nbar_r, basis.dim_r));
}

// Smallest truncation dimension whose top-two-level thermal population stays
// below `tol` for occupation n̄.
inline int recommended_dim(double nbar, double tol = 1e-8, int max_dim = 512) {
  if (nbar <= 0.0) return 2;
  const double q = nbar / (nbar + 1.0);
  for (int d = 2; d <= max_dim; ++d) {
    // normalized over the infinite ladder; truncated normalization only shrinks it
    const double top_two = (1.0 - q) * std::pow(q, d - 2) * (1.0 + q);
    if (top_two < tol) return d;
  }
  throw ConfigError("recommended_dim: occupation too large for the dimension cap");
}

}  // namespace oscar::lindblad
