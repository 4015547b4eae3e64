#include "infdelay/modal_field.hpp"

#include <utility>

#include "infdelay/errors.hpp"

namespace infdelay {

ModalField::ModalField(std::size_t n_modes)
    : coeffs_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_modes))) {}

ModalField::ModalField(Eigen::VectorXd coeffs) : coeffs_(std::move(coeffs)) {}

ModalField ModalField::unit(std::size_t n_modes, std::size_t mode) {
  if (mode < 1 || mode > n_modes) {
    throw InvalidInput("ModalField::unit: mode " + std::to_string(mode) + " outside 1.." +
                       std::to_string(n_modes));
  }
  ModalField f(n_modes);
  f[mode - 1] = 1.0;
  return f;
}

ModalField& ModalField::operator+=(const ModalField& other) {
  if (other.coeffs_.size() != coeffs_.size()) throw InvalidInput("ModalField: mode count mismatch");
  coeffs_ += other.coeffs_;
  return *this;
}

ModalField& ModalField::operator-=(const ModalField& other) {
  if (other.coeffs_.size() != coeffs_.size()) throw InvalidInput("ModalField: mode count mismatch");
  coeffs_ -= other.coeffs_;
  return *this;
}

ModalField& ModalField::operator*=(double s) {
  coeffs_ *= s;
  return *this;
}

}  // namespace infdelay
