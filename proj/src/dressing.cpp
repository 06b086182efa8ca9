#include "cdh/dressing.hpp"

#include <cmath>
#include <exception>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cdh/linalg.hpp"

namespace cdh {

CouplingSpectrum CouplingSpectrum::from_operator(const HermitianOperator& coupling) {
  linalg::HermitianEigen eig = linalg::hermitian_eigen(coupling.matrix());
  return CouplingSpectrum{std::move(eig.values), std::move(eig.vectors)};
}

CouplingSpectrum CouplingSpectrum::collective_sigma_x(int length) {
  if (length < 1) throw std::domain_error("collective_sigma_x: length must be positive");
  const Eigen::Index dim = Eigen::Index{1} << length;
  const double norm = std::pow(2.0, -0.5 * length);
  CouplingSpectrum out;
  out.eigenvalues.resize(dim);
  out.basis.resize(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    // Bit b of k (from the left) selects |+⟩ (0) or |−⟩ (1) on site b.
    out.eigenvalues(k) = length - 2.0 * __builtin_popcountll(static_cast<unsigned long long>(k));
    for (Eigen::Index n = 0; n < dim; ++n) {
      // ⟨n|k⟩ = Π_b H_{n_b k_b}, H = [[1,1],[1,−1]]/√2.
      const int parity = __builtin_popcountll(static_cast<unsigned long long>(n & k)) & 1;
      out.basis(n, k) = parity ? -norm : norm;
    }
  }
  return out;
}

CouplingSpectrum coupling_spectrum(const ModelSpec& model) {
  if (is_chain(model)) return CouplingSpectrum::collective_sigma_x(chain_length(model));
  return CouplingSpectrum::from_operator(coupling_operator(model));
}

DisplacementFactor exact_displacement() { return boson::displacement_element; }

DisplacementFactor truncated_displacement(int levels) {
  auto table = std::make_shared<const boson::TruncatedDisplacement>(levels);
  return [table](int s, int r, double alpha) { return table->element(s, r, alpha); };
}

namespace {

struct Prepared {
  ComplexMatrix op_eig;                   // X = V† O V
  std::vector<double> distinct;           // distinct eigenvalue differences
  Eigen::MatrixXi difference_index;       // (k, k') → index into `distinct`
};

Prepared prepare(const HermitianOperator& op, const CouplingSpectrum& spectrum) {
  const Eigen::Index d = spectrum.eigenvalues.size();
  if (op.dim() != d || spectrum.basis.rows() != d || spectrum.basis.cols() != d) {
    throw ValidationError("polaron_blocks: operator and coupling spectrum dimensions differ");
  }
  Prepared p;
  p.op_eig = spectrum.basis.adjoint() * op.matrix() * spectrum.basis;
  // Bit-exact keys: the integer spectra of collective operators collapse to
  // a handful of entries; generic spectra simply get more.
  std::map<double, int> index;
  p.difference_index.resize(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index kp = 0; kp < d; ++kp) {
      const double diff = spectrum.eigenvalues(k) - spectrum.eigenvalues(kp);
      auto [it, inserted] = index.emplace(diff, static_cast<int>(p.distinct.size()));
      if (inserted) p.distinct.push_back(diff);
      p.difference_index(k, kp) = it->second;
    }
  }
  return p;
}

ComplexMatrix block_from_prepared(const Prepared& p, const CouplingSpectrum& spectrum, double epsilon, int s, int r,
                                  const DisplacementFactor& factor) {
  const Eigen::Index d = p.op_eig.rows();
  std::vector<double> table(p.distinct.size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = factor(s, r, epsilon * p.distinct[i]);
  ComplexMatrix dressed(d, d);
  for (Eigen::Index kp = 0; kp < d; ++kp) {
    for (Eigen::Index k = 0; k < d; ++k) dressed(k, kp) = p.op_eig(k, kp) * table[p.difference_index(k, kp)];
  }
  return spectrum.basis * dressed * spectrum.basis.adjoint();
}

std::vector<std::pair<int, int>> upper_pairs(int levels) {
  if (levels < 1) throw std::domain_error("polaron_blocks: need at least one cavity level");
  std::vector<std::pair<int, int>> pairs;
  for (int s = 0; s < levels; ++s) {
    for (int r = s; r < levels; ++r) pairs.emplace_back(s, r);
  }
  return pairs;
}

void place(ComplexMatrix& out, const ComplexMatrix& block, int s, int r) {
  const Eigen::Index d = block.rows();
  if (s == r) {
    out.block(s * d, s * d, d, d) = hermitian_part(block);
  } else {
    out.block(s * d, r * d, d, d) = block;
    out.block(r * d, s * d, d, d) = block.adjoint();
  }
}

}  // namespace

ComplexMatrix polaron_block(const HermitianOperator& op, const CouplingSpectrum& spectrum, double epsilon, int s,
                            int r, const DisplacementFactor& factor) {
  if (s < 0 || r < 0) throw std::domain_error("polaron_block: negative Fock index");
  return block_from_prepared(prepare(op, spectrum), spectrum, epsilon, s, r, factor);
}

ComplexMatrix polaron_blocks(const HermitianOperator& op, const CouplingSpectrum& spectrum, double epsilon,
                             int levels, const DisplacementFactor& factor) {
  const auto pairs = upper_pairs(levels);
  const Prepared p = prepare(op, spectrum);
  const Eigen::Index d = p.op_eig.rows();
  ComplexMatrix out(levels * d, levels * d);
  const int count = static_cast<int>(pairs.size());
  // Each pair writes disjoint blocks, so no synchronization is needed. An
  // exception may not leave the parallel region; the first one is kept and
  // rethrown afterwards.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    const auto [s, r] = pairs[static_cast<std::size_t>(i)];
    try {
      place(out, block_from_prepared(p, spectrum, epsilon, s, r, factor), s, r);
    } catch (...) {
#pragma omp critical(cdh_polaron_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

ComplexMatrix polaron_blocks_serial(const HermitianOperator& op, const CouplingSpectrum& spectrum, double epsilon,
                                    int levels, const DisplacementFactor& factor) {
  const auto pairs = upper_pairs(levels);
  const Prepared p = prepare(op, spectrum);
  const Eigen::Index d = p.op_eig.rows();
  ComplexMatrix out(levels * d, levels * d);
  for (const auto& [s, r] : pairs) place(out, block_from_prepared(p, spectrum, epsilon, s, r, factor), s, r);
  return out;
}

}  // namespace cdh
