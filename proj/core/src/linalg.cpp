#include "maxac/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "maxac/error.hpp"

namespace maxac {

namespace {

std::string shape(Index r, Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

// Largest-magnitude entry of every column of v becomes positive; u follows.
void normalize_signs(Matrix& u, Matrix& v) {
  for (Index t = 0; t < v.cols(); ++t) {
    Index arg = 0;
    double best = -1.0;
    for (Index j = 0; j < v.rows(); ++j) {
      const double a = std::abs(v(j, t));
      if (a > best) {
        best = a;
        arg = j;
      }
    }
    if (v(arg, t) < 0.0) {
      v.col(t) = -v.col(t);
      u.col(t) = -u.col(t);
    }
  }
}

}  // namespace

DataMatrix::DataMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw Error(ErrorCode::invalid_input, "data matrix must have at least one row and column");
  }
  if (!values_.allFinite()) {
    throw Error(ErrorCode::invalid_input, "data matrix contains non-finite entries");
  }
}

Matrix Decomposition::reconstruction() const {
  return u * s.asDiagonal() * v.transpose();
}

Basis::Basis(Matrix w) : w_(std::move(w)) {
  if (w_.rows() < 1 || w_.cols() < w_.rows()) {
    throw Error(ErrorCode::singular_basis,
                "basis " + shape(w_.rows(), w_.cols()) + " cannot have full row rank");
  }
  if (!w_.allFinite()) {
    throw Error(ErrorCode::invalid_input, "basis contains non-finite entries");
  }
  qr_.compute(w_.transpose());
  const double scale = w_.cwiseAbs().maxCoeff();
  qr_.setThreshold(std::numeric_limits<double>::epsilon() * static_cast<double>(w_.cols()));
  if (scale == 0.0 || qr_.rank() < w_.rows()) {
    throw Error(ErrorCode::singular_basis, "basis has rank " + std::to_string(qr_.rank()) +
                                               " < " + std::to_string(w_.rows()));
  }
  gram_ = w_ * w_.transpose();
}

Basis Basis::from(const Decomposition& svd) {
  if (svd.rank() < 1) {
    throw Error(ErrorCode::singular_basis, "empty decomposition");
  }
  const double s0 = svd.s(0);
  const double tol = std::numeric_limits<double>::epsilon() *
                     static_cast<double>(std::max(svd.u.rows(), svd.v.rows())) * s0;
  for (Index t = 0; t < svd.rank(); ++t) {
    if (!(svd.s(t) > tol)) {
      throw Error(ErrorCode::singular_basis,
                  "singular value " + std::to_string(t + 1) + " is zero at rank " +
                      std::to_string(svd.rank()));
    }
  }
  return Basis(svd.s.asDiagonal() * svd.v.transpose());
}

Matrix Basis::solve(const Matrix& x) const {
  if (x.cols() != w_.cols()) {
    throw Error(ErrorCode::shape_error,
                "data " + shape(x.rows(), x.cols()) + " vs basis " + shape(w_.rows(), w_.cols()));
  }
  return qr_.solve(x.transpose()).transpose();
}

Decomposition full_svd(const DataMatrix& x) {
  Eigen::BDCSVD<Matrix> svd(x.values(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  Decomposition d{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  normalize_signs(d.u, d.v);
  return d;
}

Decomposition truncate(const Decomposition& full, Index k) {
  if (k < 1 || k > full.rank()) {
    throw Error(ErrorCode::rank_out_of_range,
                "rank " + std::to_string(k) + " outside [1, " + std::to_string(full.rank()) + "]");
  }
  return Decomposition{full.u.leftCols(k), full.s.head(k), full.v.leftCols(k)};
}

Decomposition truncated_svd(const DataMatrix& x, Index k) {
  const Index kmax = std::min(x.rows(), x.cols());
  if (k < 1 || k > kmax) {
    throw Error(ErrorCode::rank_out_of_range,
                "rank " + std::to_string(k) + " outside [1, " + std::to_string(kmax) + "]");
  }
  return truncate(full_svd(x), k);
}

double frobenius_cost(const DataMatrix& x, const Matrix& u, const Matrix& w) {
  if (u.rows() != x.rows() || w.cols() != x.cols() || u.cols() != w.rows()) {
    throw Error(ErrorCode::shape_error, "cost shapes X " + shape(x.rows(), x.cols()) + ", U " +
                                            shape(u.rows(), u.cols()) + ", W " +
                                            shape(w.rows(), w.cols()));
  }
  return (x.values() - u * w).squaredNorm();
}

double frobenius_cost(const DataMatrix& x, const Matrix& u, const Basis& w) {
  return frobenius_cost(x, u, w.w());
}

Matrix fit_coefficients(const DataMatrix& x, const Basis& w) {
  return w.solve(x.values());
}

double tail_energy(const Decomposition& full, Index k) {
  if (k < 0 || k > full.rank()) {
    throw Error(ErrorCode::rank_out_of_range, "tail index " + std::to_string(k));
  }
  return full.s.tail(full.rank() - k).squaredNorm();
}

Matrix centered(const Matrix& x) {
  return x.rowwise() - x.colwise().mean();
}

}  // namespace maxac
