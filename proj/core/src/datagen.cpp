#include "maxac/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "maxac/error.hpp"
#include "maxac/philox.hpp"

namespace maxac {

namespace {

constexpr std::uint32_t kFirstNoiseStream = 0x4E4F4931u;
constexpr std::uint32_t kSecondNoiseStream = 0x4E4F4932u;

Matrix noisy_copy(const Matrix& clean, double sigma, std::uint64_t seed, std::uint32_t stream) {
  Matrix out = clean;
  if (sigma == 0.0) return out;
  Vector z(clean.cols());
  for (Index i = 0; i < clean.rows(); ++i) {
    CounterStream(seed, stream, static_cast<std::uint64_t>(i))
        .normals(0, std::span<double>(z.data(), static_cast<std::size_t>(z.size())));
    out.row(i) += sigma * z.transpose();
  }
  return out;
}

}  // namespace

void MixtureSpec::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::invalid_spec, what); };
  if (components < 1) fail("component count must be at least 1");
  if (dims < 1) fail("dimension must be at least 1");
  if (rows < components) fail("need at least one row per component");
  if (!(separation >= 0.0) || !std::isfinite(separation)) fail("separation must be >= 0");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) fail("noise sigma must be >= 0");
}

Index MixtureSpec::effective_dims() const noexcept {
  return std::max(dims, components - 1);
}

Matrix mixture_centroids(const MixtureSpec& spec) {
  spec.validate();
  const Index c = spec.components;
  const Index d = spec.effective_dims();
  const double edge = spec.separation / std::sqrt(2.0);
  Matrix centroids = Matrix::Zero(c, d);
  if (d >= c) {
    for (Index i = 0; i < c; ++i) centroids(i, i) = edge;
    return centroids;
  }
  // d == c - 1: express the centered scaled identity in an orthonormal basis
  // of its (c-1)-dimensional span.
  Matrix simplex = edge * Matrix::Identity(c, c);
  simplex = centered(simplex);
  Eigen::JacobiSVD<Matrix> svd(simplex, Eigen::ComputeFullV);
  centroids = simplex * svd.matrixV().leftCols(d);
  return centroids;
}

MixtureData generate_pair(const MixtureSpec& spec) {
  spec.validate();
  const Matrix centroids = mixture_centroids(spec);
  Matrix clean(spec.rows, centroids.cols());
  std::vector<int> labels(static_cast<std::size_t>(spec.rows));
  for (Index i = 0; i < spec.rows; ++i) {
    const Index label = i % spec.components;
    labels[static_cast<std::size_t>(i)] = static_cast<int>(label);
    clean.row(i) = centroids.row(label);
  }
  Matrix first = noisy_copy(clean, spec.noise_sigma, spec.seed, kFirstNoiseStream);
  Matrix second = noisy_copy(clean, spec.noise_sigma, spec.seed, kSecondNoiseStream);
  if (spec.center_mean) {
    const Eigen::RowVectorXd mean = clean.colwise().mean();
    clean.rowwise() -= mean;
    first.rowwise() -= mean;
    second.rowwise() -= mean;
  }
  return MixtureData{DataMatrix(std::move(clean)), DataMatrix(std::move(first)),
                     DataMatrix(std::move(second)), std::move(labels)};
}

}  // namespace maxac
