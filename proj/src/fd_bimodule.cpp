#include "cklab/fd_bimodule.hpp"

#include <algorithm>
#include <cmath>

namespace cklab {

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix out(cols, rows);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) out.at(c, r) = std::conj(at(r, c));
  }
  return out;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& other) const {
  if (cols != other.rows) {
    throw CkError(ErrorCode::DimensionMismatch, "matrix shape mismatch");
  }
  DenseMatrix out(rows, other.cols);
  for (int r = 0; r < rows; ++r) {
    for (int k = 0; k < cols; ++k) {
      const Complex v = at(r, k);
      if (v == Complex{0.0, 0.0}) continue;
      for (int c = 0; c < other.cols; ++c) {
        out.at(r, c) += v * other.at(k, c);
      }
    }
  }
  return out;
}

DenseMatrix DenseMatrix::operator-(const DenseMatrix& other) const {
  if (rows != other.rows || cols != other.cols) {
    throw CkError(ErrorCode::DimensionMismatch, "matrix shape mismatch");
  }
  DenseMatrix out(rows, cols);
  for (std::size_t t = 0; t < data.size(); ++t) {
    out.data[t] = data[t] - other.data[t];
  }
  return out;
}

DenseMatrix DenseMatrix::scaled(Complex factor) const {
  DenseMatrix out(rows, cols);
  for (std::size_t t = 0; t < data.size(); ++t) out.data[t] = data[t] * factor;
  return out;
}

double DenseMatrix::frobenius() const {
  double total = 0.0;
  for (const Complex& z : data) total += std::norm(z);
  return std::sqrt(total);
}

double DenseMatrix::max_abs() const {
  double best = 0.0;
  for (const Complex& z : data) best = std::max(best, std::abs(z));
  return best;
}

std::set<int> BlockInjection::domain() const {
  std::set<int> out;
  for (const auto& [t, _] : map) out.insert(t);
  return out;
}

std::set<int> BlockInjection::range() const {
  std::set<int> out;
  for (const auto& [_, h] : map) out.insert(h);
  return out;
}

std::optional<int> BlockInjection::apply(int t) const {
  auto found = map.find(t);
  if (found == map.end()) return std::nullopt;
  return found->second;
}

FDHilbertBimodule FDHilbertBimodule::build(FDAlgebra base,
                                           const BlockInjection& h) {
  const int r = base.block_count();
  if (r < 1) {
    throw CkError(ErrorCode::BlockOutOfRange, "base algebra has no blocks");
  }
  for (int d : base.block_sizes) {
    if (d < 1) {
      throw CkError(ErrorCode::BlockOutOfRange, "block size must be >= 1");
    }
  }
  std::set<int> targets;
  for (const auto& [t, ht] : h.map) {
    if (t < 1 || t > r || ht < 1 || ht > r) {
      throw CkError(ErrorCode::BlockOutOfRange,
                    "injection refers to a block outside 1..r");
    }
    if (!targets.insert(ht).second) {
      throw CkError(ErrorCode::NotInjective,
                    "two blocks map to block " + std::to_string(ht));
    }
  }
  FDHilbertBimodule out;
  out.base_ = std::move(base);
  out.h_ = h;
  return out;
}

FDHilbertBimodule build_bimodule(const FDAlgebra& base,
                                 const BlockInjection& h) {
  return FDHilbertBimodule::build(base, h);
}

std::pair<int, int> FDHilbertBimodule::element_shape(int t) const {
  const auto ht = h_.apply(t);
  if (!ht) {
    throw CkError(ErrorCode::BlockOutOfRange,
                  "block outside the injection domain");
  }
  return {base_.block_sizes[*ht - 1], base_.block_sizes[t - 1]};
}

FDHilbertBimodule::Element FDHilbertBimodule::zero_element() const {
  Element out;
  for (const auto& [t, _] : h_.map) {
    auto [rows, cols] = element_shape(t);
    out[t] = DenseMatrix(rows, cols);
  }
  return out;
}

FDHilbertBimodule::Element FDHilbertBimodule::random_element(Rng& rng) const {
  Element out = zero_element();
  for (auto& [t, mat] : out) {
    for (Complex& z : mat.data) z = rng.complex_gaussian();
  }
  return out;
}

FDHilbertBimodule::Element FDHilbertBimodule::elementary(int t) const {
  Element out = zero_element();
  out.at(t).at(0, 0) = 1.0;
  return out;
}

FDAlgebraElement FDHilbertBimodule::inner_right(const Element& a,
                                                const Element& b) const {
  FDAlgebraElement out;
  for (int t = 1; t <= base_.block_count(); ++t) {
    const int d = base_.block_sizes[t - 1];
    DenseMatrix block(d, d);
    auto ita = a.find(t);
    auto itb = b.find(t);
    if (ita != a.end() && itb != b.end()) {
      block = ita->second.adjoint() * itb->second;
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

FDAlgebraElement FDHilbertBimodule::inner_left(const Element& a,
                                               const Element& b) const {
  FDAlgebraElement out;
  for (int t = 1; t <= base_.block_count(); ++t) {
    out.blocks.emplace_back(base_.block_sizes[t - 1],
                            base_.block_sizes[t - 1]);
  }
  for (const auto& [t, ht] : h_.map) {
    auto ita = a.find(t);
    auto itb = b.find(t);
    if (ita == a.end() || itb == b.end()) continue;
    out.blocks[ht - 1] = ita->second * itb->second.adjoint();
  }
  return out;
}

FDHilbertBimodule::Element FDHilbertBimodule::left_action(
    const FDAlgebraElement& x, const Element& m) const {
  Element out;
  for (const auto& [t, mat] : m) {
    const int ht = *h_.apply(t);
    out[t] = (x.blocks[ht - 1] * mat).scaled(left_scale_);
  }
  return out;
}

FDHilbertBimodule::Element FDHilbertBimodule::right_action(
    const Element& m, const FDAlgebraElement& x) const {
  Element out;
  for (const auto& [t, mat] : m) {
    out[t] = mat * x.blocks[t - 1];
  }
  return out;
}

double FDHilbertBimodule::element_norm(const Element& m) const {
  double total = 0.0;
  for (const auto& [t, mat] : m) {
    const double f = mat.frobenius();
    total += f * f;
  }
  return std::sqrt(total);
}

FDHilbertBimodule FDHilbertBimodule::corrupted_with_left_scale(
    double scale) const {
  FDHilbertBimodule out = *this;
  out.left_scale_ = scale;
  return out;
}

double imprimitivity_check(const FDHilbertBimodule& M, int trials,
                           std::uint64_t seed) {
  if (trials < 1) {
    throw CkError(ErrorCode::BadInput, "trials must be >= 1");
  }
  Rng rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const auto a = M.random_element(rng);
    const auto b = M.random_element(rng);
    const auto c = M.random_element(rng);
    const auto via_right = M.right_action(a, M.inner_right(b, c));
    const auto via_left = M.left_action(M.inner_left(a, b), c);
    double gap = 0.0;
    for (const auto& [t, mat] : via_right) {
      auto found = via_left.find(t);
      const DenseMatrix diff =
          found == via_left.end() ? mat : mat - found->second;
      gap = std::max(gap, diff.max_abs());
    }
    worst = std::max(worst, gap);
  }
  return worst;
}

IdealSupports ideal_supports(const FDHilbertBimodule& M) {
  IdealSupports out;
  out.right_blocks = M.injection().domain();
  out.left_blocks = M.injection().range();
  std::set<int> all;
  for (int t = 1; t <= M.base().block_count(); ++t) all.insert(t);
  out.full_on_both = (out.right_blocks == all && out.left_blocks == all);
  return out;
}

PartialMapOnSpectrum dual_partial_map(const FDHilbertBimodule& M) {
  PartialMapOnSpectrum out;
  // Probe with elementary elements: an element supported at domain block t
  // has its left inner products supported exactly at the block induction
  // sends t to.
  for (int t : M.injection().domain()) {
    const auto e = M.elementary(t);
    const FDAlgebraElement left = M.inner_left(e, e);
    for (int s = 1; s <= M.base().block_count(); ++s) {
      if (left.blocks[s - 1].max_abs() > 0.0) {
        out.map[t] = s;
        out.domain_blocks.insert(t);
        out.range_blocks.insert(s);
        break;
      }
    }
  }
  return out;
}

FreenessVerdict topological_freeness_finite(const PartialMapOnSpectrum& h,
                                            int max_period) {
  if (max_period < 1) {
    throw CkError(ErrorCode::BadInput, "max_period must be >= 1");
  }
  FreenessVerdict verdict;
  for (const auto& [start, _] : h.map) {
    int state = start;
    for (int period = 1; period <= max_period; ++period) {
      auto found = h.map.find(state);
      if (found == h.map.end()) break;  // orbit leaves the domain
      state = found->second;
      if (state == start) {
        verdict.witnesses.push_back({start, period});
        break;
      }
    }
  }
  verdict.free = verdict.witnesses.empty();
  return verdict;
}

}  // namespace cklab
