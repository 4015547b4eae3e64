#pragma once

#include <cstddef>

#include <Eigen/Core>

namespace infdelay {

/// Element of X = L^2(0, pi) stored as coefficients against the orthonormal
/// Dirichlet sine basis sqrt(2/pi) sin(n xi), n = 1..n_modes. Index 0 holds
/// mode 1. The L^2 norm equals the Euclidean norm of the coefficients.
class ModalField {
 public:
  ModalField() = default;
  explicit ModalField(std::size_t n_modes);
  explicit ModalField(Eigen::VectorXd coeffs);

  /// Unit coefficient in `mode` (1-based), zero elsewhere.
  static ModalField unit(std::size_t n_modes, std::size_t mode);

  std::size_t n_modes() const { return static_cast<std::size_t>(coeffs_.size()); }

  double operator[](std::size_t i) const { return coeffs_[static_cast<Eigen::Index>(i)]; }
  double& operator[](std::size_t i) { return coeffs_[static_cast<Eigen::Index>(i)]; }

  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  Eigen::VectorXd& coeffs() { return coeffs_; }

  double norm() const { return coeffs_.norm(); }
  bool all_finite() const { return coeffs_.allFinite(); }
  bool is_zero() const { return coeffs_.isZero(0.0); }

  ModalField& operator+=(const ModalField& other);
  ModalField& operator-=(const ModalField& other);
  ModalField& operator*=(double s);

  friend ModalField operator+(ModalField a, const ModalField& b) { return a += b; }
  friend ModalField operator-(ModalField a, const ModalField& b) { return a -= b; }
  friend ModalField operator*(ModalField a, double s) { return a *= s; }
  friend ModalField operator*(double s, ModalField a) { return a *= s; }
  friend bool operator==(const ModalField& a, const ModalField& b) {
    return a.coeffs_.size() == b.coeffs_.size() && a.coeffs_ == b.coeffs_;
  }

 private:
  Eigen::VectorXd coeffs_;
};

}  // namespace infdelay
