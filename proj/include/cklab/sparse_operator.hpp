#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "cklab/errors.hpp"

namespace cklab {

using Complex = std::complex<double>;

/// Sparse complex operator on C^dim with deterministic (row, column) entry
/// ordering.  Entries that cancel to exact zero are dropped.
class SparseOperator {
 public:
  using Index = std::pair<int, int>;  // (row, column), 0-based
  using EntryMap = std::map<Index, Complex>;

  SparseOperator() = default;
  explicit SparseOperator(int dim) : dim_(dim) {}

  static SparseOperator identity(int dim);
  static SparseOperator diagonal(const std::vector<Complex>& values);

  int dim() const { return dim_; }
  const EntryMap& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }

  Complex at(int row, int col) const;
  void set(int row, int col, Complex value);
  void add(int row, int col, Complex value);

  SparseOperator adjoint() const;
  SparseOperator operator+(const SparseOperator& other) const;
  SparseOperator operator-(const SparseOperator& other) const;
  SparseOperator operator*(const SparseOperator& other) const;
  SparseOperator scaled(Complex factor) const;

  std::vector<Complex> apply(const std::vector<Complex>& v) const;
  std::vector<Complex> apply_adjoint(const std::vector<Complex>& v) const;

  /// Keeps only entries whose column index passes the mask (input-side
  /// restriction, i.e. right multiplication by the coordinate projection).
  SparseOperator restrict_columns(const std::vector<char>& keep) const;

  /// Keeps only entries whose row index passes the mask.
  SparseOperator restrict_rows(const std::vector<char>& keep) const;

  double max_abs_entry() const;

 private:
  void check_index(int row, int col) const;

  int dim_ = 0;
  EntryMap entries_;
};

/// Largest singular value via power iteration on b* b.  Deterministically
/// seeded; stops when successive estimates move by less than `tol`
/// (relative) and throws NoConvergence at the iteration cap.
double norm_estimate(const SparseOperator& b, double tol = 1e-9,
                     int max_iterations = 10000);

}  // namespace cklab
