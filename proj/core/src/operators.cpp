#include "infdelay/operators.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "infdelay/errors.hpp"

namespace infdelay {

DiagonalGenerator::DiagonalGenerator(std::vector<double> eigenvalues) : eigenvalues_(std::move(eigenvalues)) {
  if (eigenvalues_.empty()) throw InvalidInput("DiagonalGenerator: need at least one mode");
  for (double e : eigenvalues_) {
    if (!std::isfinite(e)) throw InvalidInput("DiagonalGenerator: non-finite eigenvalue");
  }
}

DiagonalGenerator DiagonalGenerator::heat(std::size_t n_modes) {
  std::vector<double> ev(n_modes);
  for (std::size_t i = 0; i < n_modes; ++i) {
    const double n = static_cast<double>(i + 1);
    ev[i] = -n * n;
  }
  return DiagonalGenerator(std::move(ev));
}

ModalField semigroup_apply(const DiagonalGenerator& gen, const ModalField& z, double t) {
  if (t < 0.0) throw InvalidInput("semigroup_apply: t must be >= 0");
  if (z.n_modes() != gen.n_modes()) throw InvalidInput("semigroup_apply: mode count mismatch");
  ModalField out = z;
  if (t == 0.0) return out;
  for (std::size_t i = 0; i < z.n_modes(); ++i) out[i] *= std::exp(gen.eigenvalue(i) * t);
  return out;
}

ModalField semigroup_apply(const ModalField& z, double t) {
  return semigroup_apply(DiagonalGenerator::heat(z.n_modes()), z, t);
}

DelayKernel::DelayKernel(std::function<double(double)> weight, double scale, double truncation)
    : weight_(std::move(weight)), scale_(scale), truncation_(truncation) {
  if (!weight_) throw InvalidInput("DelayKernel: empty weight function");
  if (!(scale_ >= 0.0) || !std::isfinite(scale_)) throw InvalidInput("DelayKernel: scale must be >= 0");
  if (!(truncation_ > 0.0)) throw InvalidInput("DelayKernel: truncation must be > 0");
}

DelayKernel DelayKernel::exponential(double scale, double truncation) {
  if (!(scale > 0.0)) throw InvalidInput("DelayKernel::exponential: scale must be > 0");
  DelayKernel k([](double th) { return std::exp(th); }, scale, truncation);
  k.exponential_ = true;
  return k;
}

DelayKernel DelayKernel::zero(double truncation) {
  return DelayKernel([](double) { return 0.0; }, 0.0, truncation);
}

std::vector<double> DelayKernel::quadrature_weights(std::span<const double> theta, double gamma) const {
  // 4-point Gauss-Legendre on each cell; integrand w(s) e^{gamma (theta_j - s)} hat_j(s)
  static constexpr double xg[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526};
  static constexpr double wg[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538};
  std::vector<double> w(theta.size(), 0.0);
  if (scale_ == 0.0) return w;
  for (std::size_t j = 0; j + 1 < theta.size(); ++j) {
    const double a = theta[j];
    const double b = theta[j + 1];
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (int g = 0; g < 4; ++g) {
      const double s = mid + half * xg[g];
      const double base = weight_(s) * half * wg[g];
      const double left = (b - s) / (b - a);
      w[j] += base * left * std::exp(gamma * (a - s));
      w[j + 1] += base * (1.0 - left) * std::exp(gamma * (b - s));
    }
  }
  for (double& x : w) x *= scale_;
  return w;
}

ModalField apply_L(const DelayKernel& kernel, const History& phi) {
  if (std::abs(phi.truncation() - kernel.truncation()) > 1e-9 * kernel.truncation()) {
    throw InvalidInput("apply_L: history truncation " + std::to_string(phi.truncation()) +
                       " does not match kernel truncation " + std::to_string(kernel.truncation()));
  }
  const auto q = kernel.quadrature_weights(phi.theta(), phi.gamma());
  ModalField out(phi.n_modes());
  for (std::size_t j = 0; j < phi.size(); ++j) {
    if (q[j] != 0.0) out.coeffs() += q[j] * phi.value(j).coeffs();
  }
  return out;
}

Equation Equation::lotka_volterra(std::size_t n_modes, double truncation, double scale) {
  return Equation{DiagonalGenerator::heat(n_modes), DelayKernel::exponential(scale, truncation)};
}

SampledFunction evolution_semigroup_apply(const DiagonalGenerator& gen, const SampledFunction& g, double h) {
  if (h < 0.0) throw InvalidInput("evolution_semigroup_apply: h must be >= 0");
  g.validate();
  if (g.dim() != gen.n_modes()) throw InvalidInput("evolution_semigroup_apply: dimension mismatch");
  const double pos = h / g.step;
  const double shift_d = std::round(pos);
  if (std::abs(pos - shift_d) > 1e-6) {
    throw InvalidInput("evolution_semigroup_apply: h is not a multiple of the sample step");
  }
  const auto shift = static_cast<std::size_t>(shift_d);
  if (shift >= g.size()) throw InvalidInput("evolution_semigroup_apply: h exceeds the sampled range");

  Eigen::VectorXd decay(static_cast<Eigen::Index>(gen.n_modes()));
  for (std::size_t i = 0; i < gen.n_modes(); ++i) decay[static_cast<Eigen::Index>(i)] = std::exp(gen.eigenvalue(i) * h);

  SampledFunction out;
  out.t0 = g.t0 + shift_d * g.step;
  out.step = g.step;
  out.tail_window = g.tail_window;
  out.samples.reserve(g.size() - shift);
  for (std::size_t i = 0; i + shift < g.size(); ++i) {
    out.samples.push_back(h == 0.0 ? g.samples[i] : Eigen::VectorXcd(decay.cast<std::complex<double>>().cwiseProduct(g.samples[i])));
  }
  return out;
}

}  // namespace infdelay
