#include "tbregman/gaussian.hpp"

#include <cmath>
#include <sstream>

#include "tbregman/error.hpp"

namespace tbregman {

namespace {

void require_same_dim(const GaussianDensity& x, const GaussianDensity& y) {
  if (x.dim() != y.dim()) {
    std::ostringstream os;
    os << "Gaussian dimensions differ: " << x.dim() << " vs " << y.dim();
    throw DimensionMismatchError(os.str());
  }
}

// Applies f to the eigenvalues of a symmetric matrix.
template <typename F>
Matrix spectral_apply(const Matrix& a, F f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(a));
  if (es.info() != Eigen::Success) throw NotSpdError("eigendecomposition failed");
  const Vector& lambda = es.eigenvalues();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (!(lambda(i) > 0.0)) {
      std::ostringstream os;
      os << "matrix is not positive definite (eigenvalue " << lambda(i) << ")";
      throw NotSpdError(os.str());
    }
  }
  const Vector mapped = lambda.unaryExpr(f);
  return symmetrize(es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().transpose());
}

// Map matrix Y -> X (without the translation part).
Matrix map_matrix(const Matrix& sx, const Matrix& sy) {
  const Matrix a = sqrtm_spd(sx);
  return symmetrize(a * inv_sqrtm_spd(symmetrize(a * sy * a)) * a);
}

double tkl_cov(const Matrix& sx, const Matrix& sy) {
  const auto d = static_cast<double>(sx.rows());
  return 0.5 * (logdet_spd(sy) - logdet_spd(sx)) + map_matrix(sx, sy).trace() - d;
}

}  // namespace

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

GaussianDensity::GaussianDensity(Vector mean, Matrix covariance)
    : mean_(std::move(mean)), cov_(std::move(covariance)) {
  if (cov_.rows() != cov_.cols() || cov_.rows() != mean_.size() || mean_.size() == 0) {
    throw DimensionMismatchError("Gaussian mean and covariance dimensions disagree");
  }
  if (!mean_.allFinite() || !cov_.allFinite()) {
    throw InvalidArgumentError("Gaussian parameters must be finite");
  }
  cov_ = symmetrize(cov_);
  Eigen::SelfAdjointEigenSolver<Matrix> es(cov_, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(hi > 0.0) || !(lo > 1e-10 * hi)) {
    std::ostringstream os;
    os << "covariance is not well-conditioned SPD (eigenvalues in [" << lo << ", " << hi << "])";
    throw NotSpdError(os.str());
  }
}

GaussianDensity::GaussianDensity(double mean, double variance)
    : GaussianDensity(Vector::Constant(1, mean), Matrix::Constant(1, 1, variance)) {}

double TransportMapGaussian::pushforward_residual(const Matrix& target_cov,
                                                  const Matrix& source_cov) const {
  return (matrix * source_cov * matrix.transpose() - target_cov).norm() / target_cov.norm();
}

Matrix sqrtm_spd(const Matrix& a) {
  return spectral_apply(a, [](double l) { return std::sqrt(l); });
}

Matrix inv_sqrtm_spd(const Matrix& a) {
  return spectral_apply(a, [](double l) { return 1.0 / std::sqrt(l); });
}

double logdet_spd(const Matrix& a) {
  Eigen::LLT<Matrix> llt(symmetrize(a));
  if (llt.info() != Eigen::Success) throw NotSpdError("Cholesky factorization failed");
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

bool commute(const Matrix& a, const Matrix& b) {
  return (a * b - b * a).norm() < 1e-10 * a.norm() * b.norm();
}

TransportMapGaussian ot_map_gaussian(const GaussianDensity& x, const GaussianDensity& y) {
  require_same_dim(x, y);
  TransportMapGaussian t;
  t.matrix = map_matrix(x.covariance(), y.covariance());
  t.shift = x.mean() - t.matrix * y.mean();
  return t;
}

double transport_kl_gaussian(const GaussianDensity& x, const GaussianDensity& y) {
  require_same_dim(x, y);
  return tkl_cov(x.covariance(), y.covariance());
}

double transport_kl_gaussian_commuting(const GaussianDensity& x, const GaussianDensity& y) {
  require_same_dim(x, y);
  const auto d = static_cast<double>(x.dim());
  const Matrix& sx = x.covariance();
  const Matrix& sy = y.covariance();
  return 0.5 * (logdet_spd(sy) - logdet_spd(sx)) + (sqrtm_spd(sx) * inv_sqrtm_spd(sy)).trace() - d;
}

Matrix midpoint_covariance(const GaussianDensity& x, const GaussianDensity& y) {
  require_same_dim(x, y);
  const Matrix t = map_matrix(x.covariance(), y.covariance());
  const Matrix ipt = Matrix::Identity(t.rows(), t.cols()) + t;
  return symmetrize(0.25 * ipt * y.covariance() * ipt);
}

double transport_js_gaussian(const GaussianDensity& x, const GaussianDensity& y) {
  require_same_dim(x, y);
  const Matrix sz = midpoint_covariance(x, y);
  return 0.5 * tkl_cov(x.covariance(), sz) + 0.5 * tkl_cov(y.covariance(), sz);
}

double transport_js_gaussian_expanded(const GaussianDensity& x, const GaussianDensity& y) {
  require_same_dim(x, y);
  const auto d = static_cast<double>(x.dim());
  const Matrix sz = midpoint_covariance(x, y);
  const Matrix& sx = x.covariance();
  const Matrix& sy = y.covariance();
  // log(det Sx^{1/2} det Sy^{1/2} / det Sz)
  const double log_ratio =
      logdet_spd(sqrtm_spd(sx)) + logdet_spd(sqrtm_spd(sy)) - logdet_spd(sz);
  return -0.5 * log_ratio + 0.5 * (map_matrix(sx, sz).trace() + map_matrix(sy, sz).trace()) - d;
}

double transport_js_gaussian_quarter_form(const GaussianDensity& x, const GaussianDensity& y) {
  require_same_dim(x, y);
  const auto d = static_cast<double>(x.dim());
  const Matrix sz = midpoint_covariance(x, y);
  const Matrix& sx = x.covariance();
  const Matrix& sy = y.covariance();
  const double log_ratio = logdet_spd(sx) + logdet_spd(sy) - 2.0 * logdet_spd(sz);
  return -0.25 * log_ratio + 0.5 * (map_matrix(sx, sz).trace() + map_matrix(sy, sz).trace()) - d;
}

double transport_js_gaussian_commuting(const GaussianDensity& x, const GaussianDensity& y) {
  require_same_dim(x, y);
  const Matrix rx = sqrtm_spd(x.covariance());
  const Matrix ry = sqrtm_spd(y.covariance());
  const Matrix half_sum = 0.5 * (rx + ry);
  const double log_ratio = logdet_spd(rx) + logdet_spd(ry) - logdet_spd(half_sum * half_sum);
  return -0.5 * log_ratio;
}

double classical_kl_gaussian(const GaussianDensity& x, const GaussianDensity& y) {
  require_same_dim(x, y);
  const auto d = static_cast<double>(x.dim());
  Eigen::LLT<Matrix> lly(y.covariance());
  if (lly.info() != Eigen::Success) throw NotSpdError("Cholesky factorization failed");
  const Vector dm = y.mean() - x.mean();
  const double trace_term = lly.solve(x.covariance()).trace();
  const double mean_term = dm.dot(lly.solve(dm));
  return 0.5 * (logdet_spd(y.covariance()) - logdet_spd(x.covariance()) + trace_term + mean_term -
                d);
}

double wasserstein2_gaussian(const GaussianDensity& x, const GaussianDensity& y) {
  require_same_dim(x, y);
  const Matrix a = sqrtm_spd(x.covariance());
  const Matrix cross = sqrtm_spd(symmetrize(a * y.covariance() * a));
  return (x.mean() - y.mean()).squaredNorm() + x.covariance().trace() + y.covariance().trace() -
         2.0 * cross.trace();
}

}  // namespace tbregman
