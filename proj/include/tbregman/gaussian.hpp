#pragma once

// Closed-form transport divergences between multivariate Gaussians. All
// matrix functions go through the symmetric eigendecomposition.

#include <Eigen/Dense>

namespace tbregman {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// N(mean, covariance) with a symmetric positive-definite covariance. The
// covariance is symmetrized on construction; construction throws NotSpdError
// unless the smallest eigenvalue exceeds 1e-10 times the largest, and
// DimensionMismatchError when mean and covariance disagree.
class GaussianDensity {
 public:
  GaussianDensity(Vector mean, Matrix covariance);
  // One-dimensional convenience constructor.
  GaussianDensity(double mean, double variance);

  const Vector& mean() const { return mean_; }
  const Matrix& covariance() const { return cov_; }
  Eigen::Index dim() const { return mean_.size(); }

 private:
  Vector mean_;
  Matrix cov_;
};

// The Brenier map x -> T x + shift pushing the second Gaussian onto the first.
struct TransportMapGaussian {
  Matrix matrix;
  Vector shift;

  // ||T Sy T - Sx||_F / ||Sx||_F.
  double pushforward_residual(const Matrix& target_cov, const Matrix& source_cov) const;
};

// Symmetrization (A + A^T) / 2.
Matrix symmetrize(const Matrix& a);

// Principal square root and inverse square root of an SPD matrix. Throw
// NotSpdError when an eigenvalue is not positive.
Matrix sqrtm_spd(const Matrix& a);
Matrix inv_sqrtm_spd(const Matrix& a);
double logdet_spd(const Matrix& a);

// ||AB - BA||_F < 1e-10 ||A||_F ||B||_F.
bool commute(const Matrix& a, const Matrix& b);

// T = Sx^{1/2} (Sx^{1/2} Sy Sx^{1/2})^{-1/2} Sx^{1/2}, shift = mx - T my.
TransportMapGaussian ot_map_gaussian(const GaussianDensity& x, const GaussianDensity& y);

// 1/2 log(det Sy / det Sx) + tr(T) - d. Means do not enter.
double transport_kl_gaussian(const GaussianDensity& x, const GaussianDensity& y);
// Commuting-covariance form 1/2 log(det Sy / det Sx) + tr(Sx^{1/2} Sy^{-1/2}) - d.
// Only meaningful when commute(Sx, Sy); used as an internal consistency check.
double transport_kl_gaussian_commuting(const GaussianDensity& x, const GaussianDensity& y);

// Wasserstein midpoint covariance 1/4 (I + T) Sy (I + T), T the map Y -> X.
Matrix midpoint_covariance(const GaussianDensity& x, const GaussianDensity& y);

// 1/2 TKL(X || Z) + 1/2 TKL(Y || Z) with Z the Wasserstein midpoint.
double transport_js_gaussian(const GaussianDensity& x, const GaussianDensity& y);
// The same quantity written out in one expression with half-power determinants.
double transport_js_gaussian_expanded(const GaussianDensity& x, const GaussianDensity& y);
// The same with the determinant term as -1/4 log(det Sx det Sy / det Sz^2).
double transport_js_gaussian_quarter_form(const GaussianDensity& x, const GaussianDensity& y);
// Commuting form -1/2 log(det Sx^{1/2} det Sy^{1/2} / det(((Sx^{1/2} + Sy^{1/2}) / 2)^2)).
double transport_js_gaussian_commuting(const GaussianDensity& x, const GaussianDensity& y);

// Classical KL(X || Y) including the mean term.
double classical_kl_gaussian(const GaussianDensity& x, const GaussianDensity& y);

// Bures-Wasserstein distance squared.
double wasserstein2_gaussian(const GaussianDensity& x, const GaussianDensity& y);

}  // namespace tbregman
