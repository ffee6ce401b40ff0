#pragma once

#include <Eigen/Dense>

namespace maxac {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense N x D measurement matrix, rows are objects. Entries are finite.
class DataMatrix {
 public:
  explicit DataMatrix(Matrix values);

  Index rows() const noexcept { return values_.rows(); }
  Index cols() const noexcept { return values_.cols(); }
  const Matrix& values() const noexcept { return values_; }
  double operator()(Index i, Index j) const { return values_(i, j); }

 private:
  Matrix values_;
};

/// Truncated SVD: X ~ U diag(s) V^T with U N x k, V D x k.
struct Decomposition {
  Matrix u;
  Vector s;
  Matrix v;

  Index rank() const noexcept { return s.size(); }
  Matrix reconstruction() const;
};

/// Row basis W = diag(s) V^T (k x D), required to have full row rank.
class Basis {
 public:
  explicit Basis(Matrix w);
  static Basis from(const Decomposition& svd);

  const Matrix& w() const noexcept { return w_; }
  const Matrix& gram() const noexcept { return gram_; }
  Index rank() const noexcept { return w_.rows(); }
  Index cols() const noexcept { return w_.cols(); }

  /// Least-squares coefficients for the rows of x, N x k.
  Matrix solve(const Matrix& x) const;

 private:
  Matrix w_;
  Matrix gram_;
  Eigen::ColPivHouseholderQR<Matrix> qr_;
};

/// All min(N, D) singular triplets, descending, sign-normalized.
Decomposition full_svd(const DataMatrix& x);

/// Leading k triplets of an existing decomposition.
Decomposition truncate(const Decomposition& full, Index k);

Decomposition truncated_svd(const DataMatrix& x, Index k);

/// Sum_ij (x_ij - sum_t u_it w_tj)^2.
double frobenius_cost(const DataMatrix& x, const Matrix& u, const Matrix& w);
double frobenius_cost(const DataMatrix& x, const Matrix& u, const Basis& w);

Matrix fit_coefficients(const DataMatrix& x, const Basis& w);

/// Sum of squared singular values beyond index k of a full decomposition.
double tail_energy(const Decomposition& full, Index k);

/// Column means subtracted.
Matrix centered(const Matrix& x);

}  // namespace maxac
