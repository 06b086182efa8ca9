#include "cdh/builders.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cdh/dressing.hpp"

namespace cdh {

namespace {

ComplexMatrix cavity_number_term(int levels, Eigen::Index d, double omega) {
  ComplexMatrix out = ComplexMatrix::Zero(levels * d, levels * d);
  for (int m = 0; m < levels; ++m) out.block(m * d, m * d, d, d).diagonal().setConstant(m * omega);
  return out;
}

ComplexMatrix block_diagonal(const ComplexMatrix& block, int levels) {
  const Eigen::Index d = block.rows();
  ComplexMatrix out = ComplexMatrix::Zero(levels * d, levels * d);
  for (int m = 0; m < levels; ++m) out.block(m * d, m * d, d, d) = block;
  return out;
}

HermitianOperator assemble_generic(const ModelSpec& model, int cdh_levels, bool parallel) {
  validate(model);
  if (cdh_levels < 1) throw std::invalid_argument("cdh_levels must be at least 1");
  const CouplingSpectrum spectrum = coupling_spectrum(model);
  const HermitianOperator h_s = system_hamiltonian(model);
  const double eps = epsilon(model);
  ComplexMatrix h = parallel ? polaron_blocks(h_s, spectrum, eps, cdh_levels, exact_displacement())
                             : polaron_blocks_serial(h_s, spectrum, eps, cdh_levels, exact_displacement());
  h += cavity_number_term(cdh_levels, h_s.dim(), omega_of(model));
  h += polaron_shift(model, cdh_levels).matrix();
  return HermitianOperator::hermitized(h);
}

// iσy, the real antisymmetric matrix [[0, 1], [−1, 0]].
ComplexMatrix i_sigma_y() { return Complex{0.0, 1.0} * ops::pauli(Axis::y).matrix(); }

}  // namespace

HermitianOperator polaron_shift(const ModelSpec& model, int cdh_levels) {
  const double g = effective_coupling(model);
  const double coefficient = -g * g / omega_of(model);
  const ComplexMatrix s = coupling_operator(model).matrix();
  return HermitianOperator::hermitized(block_diagonal(coefficient * (s * s), cdh_levels));
}

HermitianOperator build_bare(const ModelSpec& model, int bare_levels) {
  validate(model);
  if (bare_levels < 1) throw std::invalid_argument("bare_levels must be at least 1");
  const ComplexMatrix h_s = system_hamiltonian(model).matrix();
  const ComplexMatrix s = coupling_operator(model).matrix();
  const Eigen::Index d = h_s.rows();
  ComplexMatrix h = block_diagonal(h_s, bare_levels) + cavity_number_term(bare_levels, d, omega_of(model));
  const double g = effective_coupling(model);
  // g (a + a†) ⊗ S couples neighbouring Fock blocks with weight √(n+1).
  for (int n = 0; n + 1 < bare_levels; ++n) {
    const ComplexMatrix c = g * std::sqrt(n + 1.0) * s;
    h.block(n * d, (n + 1) * d, d, d) += c;
    h.block((n + 1) * d, n * d, d, d) += c;
  }
  return HermitianOperator::hermitized(h);
}

HermitianOperator build_cdh_generic(const ModelSpec& model, int cdh_levels) {
  return assemble_generic(model, cdh_levels, true);
}

HermitianOperator build_cdh_generic_serial(const ModelSpec& model, int cdh_levels) {
  return assemble_generic(model, cdh_levels, false);
}

HermitianOperator build_cdh_rabi_closed_form(int cdh_levels, const RabiModel& model) {
  validate(ModelSpec{model});
  if (cdh_levels < 1 || cdh_levels > 4) {
    throw std::invalid_argument("closed-form Rabi CDH supports 1 <= M <= 4; use the generic builder");
  }
  const double e = model.lambda / model.omega;
  const double e2 = e * e;
  const double dt = model.delta * std::exp(-2.0 * e2);
  const double shift = -model.lambda * model.lambda / model.omega;
  const double r2 = std::sqrt(2.0);
  const double r23 = std::sqrt(2.0 / 3.0);
  const ComplexMatrix sz = ops::pauli(Axis::z).matrix();
  const ComplexMatrix isy = i_sigma_y();
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);

  ComplexMatrix full = ComplexMatrix::Zero(8, 8);
  auto set = [&](int s, int r, const ComplexMatrix& b) { full.block(2 * s, 2 * r, 2, 2) = b; };
  // Upper triangle; the lower triangle is the block adjoint.
  set(0, 0, dt * sz + shift * id);
  set(0, 1, dt * 2.0 * e * isy);
  set(0, 2, dt * 2.0 * r2 * e2 * sz);
  set(0, 3, dt * 4.0 * r23 * e2 * e * isy);
  set(1, 1, dt * (1.0 - 4.0 * e2) * sz + (model.omega + shift) * id);
  set(1, 2, -dt * 2.0 * r2 * e * (2.0 * e2 - 1.0) * isy);
  set(1, 3, -dt * 2.0 * r23 * e2 * (4.0 * e2 - 3.0) * sz);
  set(2, 2, dt * (8.0 * e2 * e2 - 8.0 * e2 + 1.0) * sz + (2.0 * model.omega + shift) * id);
  set(2, 3, dt * 2.0 * e * (8.0 * e2 * e2 - 12.0 * e2 + 3.0) / std::sqrt(3.0) * isy);
  set(3, 3, dt * (-32.0 * e2 * e2 * e2 + 72.0 * e2 * e2 - 36.0 * e2 + 3.0) / 3.0 * sz +
                (3.0 * model.omega + shift) * id);
  for (int s = 0; s < 4; ++s) {
    for (int r = 0; r < s; ++r) set(s, r, full.block(2 * r, 2 * s, 2, 2).adjoint());
  }
  return HermitianOperator::hermitized(full.topLeftCorner(2 * cdh_levels, 2 * cdh_levels));
}

// E = Ω/2 − ε²(Ω ± 2Δ̃) ±' √(Δ̃²(4ε⁴+1) ± Δ̃Ω(1−2ε²) + Ω²/4). The two
// unprimed ± signs are taken equal; this pairing is the one that reduces to
// the decoupled levels at λ = 0.
std::array<double, 4> rabi_m2_eigenvalues(const RabiModel& model) {
  const double e = model.lambda / model.omega;
  const double e2 = e * e;
  const double dt = model.delta * std::exp(-2.0 * e2);
  const double om = model.omega;
  std::array<double, 4> out{};
  int i = 0;
  for (double sign : {1.0, -1.0}) {
    const double centre = 0.5 * om - e2 * (om + sign * 2.0 * dt);
    const double radicand = dt * dt * (4.0 * e2 * e2 + 1.0) + sign * dt * om * (1.0 - 2.0 * e2) + 0.25 * om * om;
    const double root = std::sqrt(std::max(radicand, 0.0));
    out[i++] = centre + root;
    out[i++] = centre - root;
  }
  std::sort(out.begin(), out.end());
  return out;
}

DressingValues dressing_values(double epsilon) {
  if (!std::isfinite(epsilon)) throw std::domain_error("dressing_values: epsilon must be finite");
  const double e2 = epsilon * epsilon;
  const double x = std::exp(-8.0 * e2);
  DressingValues d;
  d.epsilon = epsilon;
  const double p[3] = {1.0, 1.0 - 16.0 * e2, 1.0 - 32.0 * e2 + 128.0 * e2 * e2};
  for (int m = 0; m < 3; ++m) {
    d.f[m] = 0.5 * (1.0 + x * p[m]);
    d.g[m] = 0.5 * (1.0 - x * p[m]);
  }
  d.h = 2.0 * epsilon * x;
  d.v = -2.0 * std::sqrt(2.0) * x * epsilon * (8.0 * e2 - 1.0);
  d.w = 4.0 * std::sqrt(2.0) * x * e2;
  return d;
}

namespace {

struct ChainTerms {
  ComplexMatrix sz, sy;     // Σσz, Σσy
  ComplexMatrix xx, yy, zz;  // Σ_bonds σσ
  ComplexMatrix yz_zy;      // Σ_bonds (σyσz + σzσy)
  ComplexMatrix all_to_all;  // (Σσx)²
};

ChainTerms chain_terms(const ChainGeometry& geometry) {
  ChainTerms t;
  t.sz = ops::collective(Axis::z, geometry).matrix();
  t.sy = ops::collective(Axis::y, geometry).matrix();
  const ComplexMatrix sx = ops::collective(Axis::x, geometry).matrix();
  t.all_to_all = sx * sx;
  const Eigen::Index d = geometry.dim();
  t.xx = t.yy = t.zz = t.yz_zy = ComplexMatrix::Zero(d, d);
  if (geometry.length >= 2) {
    t.xx = ops::bond_sum(Axis::x, geometry).matrix();
    t.yy = ops::bond_sum(Axis::y, geometry).matrix();
    t.zz = ops::bond_sum(Axis::z, geometry).matrix();
    const HermitianOperator py = ops::pauli(Axis::y);
    const HermitianOperator pz = ops::pauli(Axis::z);
    for (int i = 0; i < geometry.bond_count(); ++i) {
      t.yz_zy += ops::two_site_operator(py, pz, i, geometry).matrix() +
                 ops::two_site_operator(pz, py, i, geometry).matrix();
    }
  }
  return t;
}

}  // namespace

HermitianOperator build_cdh_dicke_heisenberg_closed_form(int cdh_levels, const DickeHeisenbergModel& model) {
  validate(ModelSpec{model});
  if (cdh_levels < 1 || cdh_levels > 3) {
    throw std::invalid_argument("closed-form Dicke-Heisenberg CDH supports 1 <= M <= 3; use the generic builder");
  }
  const int L = model.geometry.length;
  const double e = model.lambda / (model.omega * std::sqrt(static_cast<double>(L)));
  const double e2 = e * e;
  const double dt = model.delta * std::exp(-2.0 * e2);
  const auto [gx, gy, gz] = model.gamma;
  const DressingValues dv = dressing_values(e);
  const ChainTerms t = chain_terms(model.geometry);
  const double a2a = -model.lambda * model.lambda / (model.omega * L);
  const Eigen::Index d = model.geometry.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const Complex i{0.0, 1.0};
  const double r2 = std::sqrt(2.0);

  const double one_body[3] = {1.0, 1.0 - 4.0 * e2, 8.0 * e2 * e2 - 8.0 * e2 + 1.0};
  ComplexMatrix full = ComplexMatrix::Zero(3 * d, 3 * d);
  auto set = [&](int s, int r, const ComplexMatrix& b) { full.block(s * d, r * d, d, d) = b; };
  for (int m = 0; m < 3; ++m) {
    set(m, m, dt * one_body[m] * t.sz + gx * t.xx + (gy * dv.f[m] + gz * dv.g[m]) * t.yy +
                  (gy * dv.g[m] + gz * dv.f[m]) * t.zz + a2a * t.all_to_all + m * model.omega * id);
  }
  set(0, 1, 2.0 * i * e * dt * t.sy + i * dv.h * (gz - gy) * t.yz_zy);
  // Two-body parts of (0,2) and (1,2): each bond's ΔS = ±4 component is
  // (σyσy − σzσz)/2, dressed by ⟨s|D(±4ε)|r⟩. For (0,2) that element is even
  // in α and positive, so the sign of w(γy − γz)(σyσy − σzσz) does not depend
  // on the orientation of the polaron rotation; (1,2) then follows from the
  // same orientation that fixes the one-body (0,1) block.
  set(0, 2, 2.0 * r2 * e2 * dt * t.sz + dv.w * (gy - gz) * (t.yy - t.zz));
  set(1, 2, -2.0 * r2 * i * e * (2.0 * e2 - 1.0) * dt * t.sy - i * dv.v * (gy - gz) * t.yz_zy);
  for (int s = 0; s < 3; ++s) {
    for (int r = 0; r < s; ++r) set(s, r, full.block(r * d, s * d, d, d).adjoint());
  }
  return HermitianOperator::hermitized(full.topLeftCorner(cdh_levels * d, cdh_levels * d));
}

DeepStrongLimit deep_strong_limit_cdh(const DickeHeisenbergModel& model, int cdh_levels) {
  validate(ModelSpec{model});
  if (cdh_levels < 1 || cdh_levels > 3) {
    throw std::invalid_argument("deep-strong limit is provided for 1 <= M <= 3");
  }
  const ChainTerms t = chain_terms(model.geometry);
  const auto [gx, gy, gz] = model.gamma;
  const ComplexMatrix diag = gx * t.xx + 0.5 * (gy + gz) * (t.yy + t.zz);
  const Eigen::Index d = model.geometry.dim();
  ComplexMatrix full = block_diagonal(diag, cdh_levels) + cavity_number_term(cdh_levels, d, model.omega);
  const double coefficient = -model.lambda * model.lambda / (model.omega * model.geometry.length);
  return DeepStrongLimit{HermitianOperator::hermitized(full), coefficient};
}

}  // namespace cdh
