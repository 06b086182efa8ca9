#include "cdh/observables.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cdh/linalg.hpp"

namespace cdh {

Spectrum eigensolve(const HermitianOperator& h) {
  linalg::HermitianEigen eig = linalg::hermitian_eigen(h.matrix());
  return Spectrum{std::move(eig.values), std::move(eig.vectors)};
}

RealVector eigenvalues_only(const HermitianOperator& h) { return linalg::hermitian_eigen(h.matrix(), false).values; }

double relative_residual(const HermitianOperator& h, const Spectrum& spectrum) {
  const double scale = std::max(spectrum.eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
  const ComplexMatrix r =
      h.matrix() * spectrum.eigenvectors - spectrum.eigenvectors * spectrum.eigenvalues.asDiagonal();
  return r.colwise().norm().maxCoeff() / scale;
}

RotatedObservable rotate_observable(const HermitianOperator& op, const CouplingSpectrum& coupling, double epsilon,
                                    int levels, int rotation_levels) {
  if (levels < 1 || rotation_levels < levels) {
    throw std::invalid_argument("rotate_observable: requires rotation_levels >= levels >= 1");
  }
  // Blocks s, r < M of the M_P-level rotation are all that survive the
  // truncation, so only those are evaluated.
  const ComplexMatrix blocks = polaron_blocks(op, coupling, epsilon, levels, truncated_displacement(rotation_levels));
  return RotatedObservable{HermitianOperator::hermitized(blocks), rotation_levels};
}

RotatedObservable rotate_observable(const HermitianOperator& op, const HermitianOperator& coupling, double epsilon,
                                    int levels, int rotation_levels) {
  return rotate_observable(op, CouplingSpectrum::from_operator(coupling), epsilon, levels, rotation_levels);
}

RotatedObservable rotate_observable_exact(const HermitianOperator& op, const CouplingSpectrum& coupling,
                                          double epsilon, int levels) {
  const ComplexMatrix blocks = polaron_blocks(op, coupling, epsilon, levels, exact_displacement());
  return RotatedObservable{HermitianOperator::hermitized(blocks), 0};
}

RotatedObservable unrotated_observable(const HermitianOperator& op, int levels) {
  if (levels < 1) throw std::invalid_argument("unrotated_observable: levels must be at least 1");
  return RotatedObservable{HermitianOperator(ops::kron(ComplexMatrix::Identity(levels, levels), op.matrix())),
                           levels};
}

EquilibriumState EquilibriumState::ground(const Spectrum& spectrum, double degeneracy_tol) {
  const RealVector& e = spectrum.eigenvalues;
  if (e.size() == 0) throw ValidationError("EquilibriumState: empty spectrum");
  const double tol = degeneracy_tol >= 0.0 ? degeneracy_tol : 1e-9 * e.cwiseAbs().maxCoeff();
  Eigen::Index count = 1;
  while (count < e.size() && e(count) - e(0) <= tol) ++count;
  return EquilibriumState(RealVector::Constant(count, 1.0 / static_cast<double>(count)),
                          spectrum.eigenvectors.leftCols(count));
}

EquilibriumState EquilibriumState::thermal(const Spectrum& spectrum, double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::domain_error("thermal state requires a finite temperature T > 0");
  }
  const RealVector& e = spectrum.eigenvalues;
  if (e.size() == 0) throw ValidationError("EquilibriumState: empty spectrum");
  RealVector w = (-(e.array() - e(0)) / temperature).exp().matrix();
  // States whose weight underflows contribute nothing; drop them so that the
  // low-temperature limit costs as little as a ground-state evaluation.
  Eigen::Index keep = e.size();
  while (keep > 1 && w(keep - 1) == 0.0) --keep;
  w.conservativeResize(keep);
  w /= w.sum();
  return EquilibriumState(std::move(w), spectrum.eigenvectors.leftCols(keep));
}

double EquilibriumState::expectation(const ComplexMatrix& op) const {
  if (op.rows() != dim() || op.cols() != dim()) {
    std::ostringstream msg;
    msg << "expectation: observable dimension " << op.rows() << " does not match state dimension " << dim();
    throw ValidationError(msg.str());
  }
  const ComplexMatrix ov = op * vectors_;
  Complex total{};
  for (Eigen::Index i = 0; i < weights_.size(); ++i) total += weights_(i) * vectors_.col(i).dot(ov.col(i));
  const double scale = std::max(1.0, max_norm(op));
  if (std::abs(total.imag()) > 1e-10 * scale) {
    throw ValidationError("expectation: imaginary part exceeds 1e-10; observable is not Hermitian");
  }
  return total.real();
}

ComplexMatrix EquilibriumState::density_matrix() const {
  return vectors_ * weights_.cast<Complex>().asDiagonal() * vectors_.adjoint();
}

double thermal_expectation(const HermitianOperator& h_cdh, const RotatedObservable& obs, double temperature) {
  if (obs.op.dim() != h_cdh.dim()) throw ValidationError("thermal_expectation: dimension mismatch");
  return EquilibriumState::thermal(eigensolve(h_cdh), temperature).expectation(obs);
}

double ground_state_expectation(const HermitianOperator& h_cdh, const RotatedObservable& obs,
                                double degeneracy_tol) {
  if (obs.op.dim() != h_cdh.dim()) throw ValidationError("ground_state_expectation: dimension mismatch");
  return EquilibriumState::ground(eigensolve(h_cdh), degeneracy_tol).expectation(obs);
}

namespace {

void check_state(const EquilibriumState& state, const DickeHeisenbergModel& model, int levels) {
  if (levels < 1 || state.dim() != levels * model.geometry.dim()) {
    throw ValidationError("chain observable: state dimension does not match M * 2^L");
  }
}

}  // namespace

double magnetization_z(const EquilibriumState& state, const DickeHeisenbergModel& model, int levels,
                       int rotation_levels) {
  check_state(state, model, levels);
  const int L = model.geometry.length;
  // Rotation is linear, so the site average can be rotated in one go.
  const HermitianOperator op = (1.0 / L) * ops::collective(Axis::z, model.geometry);
  const ModelSpec spec{model};
  const RotatedObservable obs =
      rotate_observable(op, coupling_spectrum(spec), epsilon(spec), levels, rotation_levels);
  return state.expectation(obs);
}

double structure_factor(const EquilibriumState& state, const DickeHeisenbergModel& model, int levels,
                        int rotation_levels, Axis axis) {
  check_state(state, model, levels);
  if (axis == Axis::identity) throw std::invalid_argument("structure_factor: axis must be x, y or z");
  const int L = model.geometry.length;
  const ComplexMatrix s = ops::collective(axis, model.geometry).matrix();
  const HermitianOperator op = HermitianOperator::hermitized(s * s / static_cast<double>(L * L));
  const ModelSpec spec{model};
  const RotatedObservable obs =
      rotate_observable(op, coupling_spectrum(spec), epsilon(spec), levels, rotation_levels);
  return state.expectation(obs);
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  const RealVector p = linalg::hermitian_eigen(hermitian_part(rho), false).values;
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double x = p(i);
    if (x < -1e-10) throw ValidationError("von_neumann_entropy: eigenvalue below -1e-10");
    if (x > 0.0 && x < 1.0) s -= x * std::log(x);
  }
  // Eigenvalues a rounding step above 1 would make a pure state negative.
  return std::max(s, 0.0);
}

double entanglement_entropy(const EquilibriumState& state, const DickeHeisenbergModel& model, int levels) {
  check_state(state, model, levels);
  if (model.geometry.length % 2 != 0) throw std::domain_error("entanglement_entropy: chain length must be even");
  const Eigen::Index da = Eigen::Index{1} << (model.geometry.length / 2);
  ComplexMatrix rho_a = ComplexMatrix::Zero(da, da);
  for (Eigen::Index i = 0; i < state.weights().size(); ++i) {
    const ComplexVector psi = state.vectors().col(i);
    rho_a += state.weights()(i) * ops::partial_trace_half_chain(psi, model.geometry, levels);
  }
  return von_neumann_entropy(rho_a);
}

}  // namespace cdh
