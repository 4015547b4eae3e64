#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "infdelay/history.hpp"
#include "infdelay/modal_field.hpp"
#include "infdelay/sampled_function.hpp"

namespace infdelay {

/// Generator that is diagonal in the sine basis: A e_n = eigenvalue[n] e_n.
/// The semigroup acts as T(t) e_n = e^{eigenvalue[n] t} e_n.
class DiagonalGenerator {
 public:
  explicit DiagonalGenerator(std::vector<double> eigenvalues);

  /// Dirichlet Laplacian on [0, pi]: eigenvalue -n^2 for mode n.
  static DiagonalGenerator heat(std::size_t n_modes);

  std::size_t n_modes() const { return eigenvalues_.size(); }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  double eigenvalue(std::size_t index) const { return eigenvalues_[index]; }

 private:
  std::vector<double> eigenvalues_;
};

/// T(t) z. Throws InvalidInput for t < 0.
ModalField semigroup_apply(const DiagonalGenerator& gen, const ModalField& z, double t);
/// Dirichlet heat semigroup with as many modes as `z`.
ModalField semigroup_apply(const ModalField& z, double t);

/// Bounded delay operator L phi = scale * int_{-Theta}^0 w(theta) phi(theta) dtheta.
/// On a history grid, phi is read as e^{-gamma theta} times the piecewise-linear
/// interpolant of e^{gamma theta_j} phi(theta_j), so |L phi| is bounded by
/// scale * int |w| e^{-gamma theta} times the nodal gamma-norm.
class DelayKernel {
 public:
  DelayKernel(std::function<double(double)> weight, double scale, double truncation);

  /// w(theta) = e^theta; the only kernel the memory-variable solver accepts.
  static DelayKernel exponential(double scale = 0.5, double truncation = 40.0);
  /// L = 0.
  static DelayKernel zero(double truncation = 40.0);

  double weight(double theta) const { return weight_(theta); }
  double scale() const { return scale_; }
  double truncation() const { return truncation_; }
  bool is_exponential() const { return exponential_; }
  bool is_zero() const { return scale_ == 0.0; }

  /// Node weights q_j with L phi = sum_j q_j phi(theta_j) under the reading above.
  std::vector<double> quadrature_weights(std::span<const double> theta, double gamma) const;

 private:
  std::function<double(double)> weight_;
  double scale_;
  double truncation_;
  bool exponential_ = false;
};

/// L phi. Throws InvalidInput when the history truncation differs from the kernel's.
ModalField apply_L(const DelayKernel& kernel, const History& phi);

/// Right-hand-side operators of du/dt = A u + L u_t + f.
struct Equation {
  DiagonalGenerator generator;
  DelayKernel kernel;

  /// The delay-diffusion system with scale-1/2 exponential memory.
  static Equation lotka_volterra(std::size_t n_modes, double truncation = 40.0, double scale = 0.5);
  std::size_t n_modes() const { return generator.n_modes(); }
};

/// Evolution semigroup [T^h g](xi) = T(h) g(xi - h). The result lives on
/// [t0 + h, t_end]; h must be a multiple of the sample step.
SampledFunction evolution_semigroup_apply(const DiagonalGenerator& gen, const SampledFunction& g, double h);

}  // namespace infdelay
