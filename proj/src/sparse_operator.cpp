#include "cklab/sparse_operator.hpp"

#include <cmath>

#include "cklab/rng.hpp"

namespace cklab {

SparseOperator SparseOperator::identity(int dim) {
  SparseOperator out(dim);
  for (int i = 0; i < dim; ++i) out.set(i, i, 1.0);
  return out;
}

SparseOperator SparseOperator::diagonal(const std::vector<Complex>& values) {
  SparseOperator out(static_cast<int>(values.size()));
  for (int i = 0; i < out.dim(); ++i) {
    if (values[i] != Complex{0.0, 0.0}) out.set(i, i, values[i]);
  }
  return out;
}

void SparseOperator::check_index(int row, int col) const {
  if (row < 0 || row >= dim_ || col < 0 || col >= dim_) {
    throw CkError(ErrorCode::DimensionMismatch, "entry index out of range");
  }
}

Complex SparseOperator::at(int row, int col) const {
  check_index(row, col);
  auto found = entries_.find({row, col});
  return found == entries_.end() ? Complex{0.0, 0.0} : found->second;
}

void SparseOperator::set(int row, int col, Complex value) {
  check_index(row, col);
  if (value == Complex{0.0, 0.0}) {
    entries_.erase({row, col});
  } else {
    entries_[{row, col}] = value;
  }
}

void SparseOperator::add(int row, int col, Complex value) {
  check_index(row, col);
  auto [it, inserted] = entries_.try_emplace({row, col}, value);
  if (!inserted) {
    it->second += value;
    if (it->second == Complex{0.0, 0.0}) entries_.erase(it);
  }
}

SparseOperator SparseOperator::adjoint() const {
  SparseOperator out(dim_);
  for (const auto& [index, value] : entries_) {
    out.set(index.second, index.first, std::conj(value));
  }
  return out;
}

SparseOperator SparseOperator::operator+(const SparseOperator& other) const {
  if (other.dim_ != dim_) {
    throw CkError(ErrorCode::DimensionMismatch, "dimension mismatch in sum");
  }
  SparseOperator out = *this;
  for (const auto& [index, value] : other.entries_) {
    out.add(index.first, index.second, value);
  }
  return out;
}

SparseOperator SparseOperator::operator-(const SparseOperator& other) const {
  return *this + other.scaled(Complex{-1.0, 0.0});
}

SparseOperator SparseOperator::operator*(const SparseOperator& other) const {
  if (other.dim_ != dim_) {
    throw CkError(ErrorCode::DimensionMismatch,
                  "dimension mismatch in product");
  }
  SparseOperator out(dim_);
  // (this * other)(r, c) = sum_k this(r, k) other(k, c); walk this's
  // entries and scan other's row k, which is contiguous in the map.
  for (const auto& [index, value] : entries_) {
    const int k = index.second;
    auto it = other.entries_.lower_bound({k, 0});
    for (; it != other.entries_.end() && it->first.first == k; ++it) {
      out.add(index.first, it->first.second, value * it->second);
    }
  }
  return out;
}

SparseOperator SparseOperator::scaled(Complex factor) const {
  SparseOperator out(dim_);
  if (factor == Complex{0.0, 0.0}) return out;
  for (const auto& [index, value] : entries_) {
    out.entries_[index] = value * factor;
  }
  return out;
}

std::vector<Complex> SparseOperator::apply(
    const std::vector<Complex>& v) const {
  if (static_cast<int>(v.size()) != dim_) {
    throw CkError(ErrorCode::DimensionMismatch, "vector length mismatch");
  }
  std::vector<Complex> out(dim_, Complex{0.0, 0.0});
  for (const auto& [index, value] : entries_) {
    out[index.first] += value * v[index.second];
  }
  return out;
}

std::vector<Complex> SparseOperator::apply_adjoint(
    const std::vector<Complex>& v) const {
  if (static_cast<int>(v.size()) != dim_) {
    throw CkError(ErrorCode::DimensionMismatch, "vector length mismatch");
  }
  std::vector<Complex> out(dim_, Complex{0.0, 0.0});
  for (const auto& [index, value] : entries_) {
    out[index.second] += std::conj(value) * v[index.first];
  }
  return out;
}

SparseOperator SparseOperator::restrict_columns(
    const std::vector<char>& keep) const {
  SparseOperator out(dim_);
  for (const auto& [index, value] : entries_) {
    if (keep[index.second]) out.entries_[index] = value;
  }
  return out;
}

SparseOperator SparseOperator::restrict_rows(
    const std::vector<char>& keep) const {
  SparseOperator out(dim_);
  for (const auto& [index, value] : entries_) {
    if (keep[index.first]) out.entries_[index] = value;
  }
  return out;
}

double SparseOperator::max_abs_entry() const {
  double best = 0.0;
  for (const auto& [index, value] : entries_) {
    best = std::max(best, std::abs(value));
  }
  return best;
}

namespace {

double norm2(const std::vector<Complex>& v) {
  double total = 0.0;
  for (const Complex& z : v) total += std::norm(z);
  return std::sqrt(total);
}

}  // namespace

double norm_estimate(const SparseOperator& b, double tol,
                     int max_iterations) {
  if (b.dim() == 0 || b.is_zero()) return 0.0;

  Rng rng(0x636b6c61626e726dULL);  // fixed seed: estimates are reproducible
  std::vector<Complex> v(b.dim());
  for (auto& z : v) z = rng.complex_gaussian();
  double scale = norm2(v);
  for (auto& z : v) z /= scale;

  double previous = -1.0;
  for (int iter = 0; iter < max_iterations; ++iter) {
    std::vector<Complex> bv = b.apply(v);
    const double sigma = norm2(bv);
    if (sigma == 0.0) {
      // start vector landed in the kernel; re-randomize once, then accept 0
      if (previous < 0.0) {
        for (auto& z : v) z = rng.complex_gaussian();
        scale = norm2(v);
        for (auto& z : v) z /= scale;
        previous = 0.0;
        continue;
      }
      return 0.0;
    }
    if (previous >= 0.0 &&
        std::abs(sigma - previous) <= tol * std::max(1.0, sigma)) {
      return sigma;
    }
    previous = sigma;
    v = b.apply_adjoint(bv);
    scale = norm2(v);
    if (scale == 0.0) return sigma;
    for (auto& z : v) z /= scale;
  }
  throw CkError(ErrorCode::NoConvergence,
                "power iteration hit the iteration cap");
}

}  // namespace cklab
