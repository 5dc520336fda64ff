#include "cklab/path_rep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cklab {

int TruncatedRep::index_of(const Word& w) const {
  auto cmp = [](const Word& a, const Word& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a < b;
  };
  auto it = std::lower_bound(basis.begin(), basis.end(), w, cmp);
  if (it == basis.end() || *it != w) return -1;
  return static_cast<int>(it - basis.begin());
}

std::vector<char> TruncatedRep::length_mask(int lo, int hi) const {
  std::vector<char> mask(basis.size(), 0);
  for (std::size_t t = 0; t < basis.size(); ++t) {
    const int len = basis[t].length();
    mask[t] = (len >= lo && len <= hi) ? 1 : 0;
  }
  return mask;
}

TruncatedRep build_truncated_rep(const ZeroOneMatrix& A, int L) {
  if (L < 3) {
    throw CkError(ErrorCode::TruncationTooSmall,
                  "truncation length must be >= 3");
  }
  TruncatedRep rep{A, L, {}, {}};
  for (int k = 1; k <= L; ++k) {
    for (Word& w : admissible_words(A, k)) rep.basis.push_back(std::move(w));
  }
  const int dim = rep.dim();
  for (int i = 1; i <= A.size(); ++i) {
    SparseOperator s(dim);
    for (int col = 0; col < dim; ++col) {
      const Word& mu = rep.basis[col];
      if (mu.length() == L) continue;
      if (A.at(i, mu.first()) != 1) continue;
      std::vector<int> symbols;
      symbols.reserve(mu.length() + 1);
      symbols.push_back(i);
      symbols.insert(symbols.end(), mu.symbols().begin(),
                     mu.symbols().end());
      const int row = rep.index_of(Word::admissible(A, std::move(symbols)));
      s.set(row, col, 1.0);
    }
    rep.gens.push_back(std::move(s));
  }
  return rep;
}

SparseOperator gauge_unitary(const TruncatedRep& rep, Complex lambda) {
  std::vector<Complex> diag(rep.dim());
  for (int t = 0; t < rep.dim(); ++t) {
    diag[t] = std::pow(lambda, rep.word_length(t));
  }
  return SparseOperator::diagonal(diag);
}

SparseOperator range_projection(const TruncatedRep& rep, int j) {
  const SparseOperator& s = rep.generator(j);
  return s * s.adjoint();
}

SparseOperator first_symbol_projection(const TruncatedRep& rep, int j) {
  std::vector<Complex> diag(rep.dim(), Complex{0.0, 0.0});
  for (int t = 0; t < rep.dim(); ++t) {
    if (rep.basis[t].first() == j) diag[t] = 1.0;
  }
  return SparseOperator::diagonal(diag);
}

SparseOperator word_operator(const TruncatedRep& rep, const Word& mu) {
  SparseOperator out = SparseOperator::identity(rep.dim());
  for (auto it = mu.symbols().rbegin(); it != mu.symbols().rend(); ++it) {
    out = rep.generator(*it) * out;
  }
  return out;
}

namespace {

double masked_norm(const SparseOperator& r, const std::vector<char>& mask) {
  bool any = false;
  for (char c : mask) any = any || (c != 0);
  if (!any) return 0.0;
  return norm_estimate(r.restrict_columns(mask));
}

RelationResidual measure(const TruncatedRep& rep, std::string name,
                         const SparseOperator& residual, int lo, int hi) {
  RelationResidual out;
  out.relation = std::move(name);
  out.interior_lo = lo;
  out.interior_hi = hi;
  std::vector<char> interior = rep.length_mask(lo, hi);
  std::vector<char> boundary(interior.size());
  for (std::size_t t = 0; t < interior.size(); ++t) {
    boundary[t] = interior[t] ? 0 : 1;
  }
  out.interior_residual = masked_norm(residual, interior);
  out.boundary_residual = masked_norm(residual, boundary);
  return out;
}

}  // namespace

ResidualReport relation_residuals(const TruncatedRep& rep) {
  const int n = rep.A.size();
  const int L = rep.L;
  ResidualReport report;

  std::vector<SparseOperator> projections;
  for (int j = 1; j <= n; ++j) projections.push_back(range_projection(rep, j));

  // S_i^* S_k = delta_{ik} S_i^* S_i ; the off-diagonal part vanishes on the
  // whole space because the generator ranges are orthogonal by first symbol.
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= n; ++k) {
      if (i == k) continue;
      SparseOperator residual =
          rep.generator(i).adjoint() * rep.generator(k);
      report.relations.push_back(
          measure(rep, "SdagS_offdiag(" + std::to_string(i) + "," +
                           std::to_string(k) + ")",
                  residual, 1, L));
    }
  }

  // S_i^* S_i = sum_j A(i,j) S_j S_j^* ; defects at length 1 (P_j kills the
  // bottom level) and at length L (S_i kills the top level).
  for (int i = 1; i <= n; ++i) {
    SparseOperator rhs(rep.dim());
    for (int j = 1; j <= n; ++j) {
      if (rep.A.at(i, j) == 1) rhs = rhs + projections[j - 1];
    }
    SparseOperator residual =
        rep.generator(i).adjoint() * rep.generator(i) - rhs;
    report.relations.push_back(measure(
        rep, "SdagS_eq_sumP(" + std::to_string(i) + ")", residual, 2, L - 1));
  }

  // Adopted unit relation sum_j S_j S_j^* = 1; length-1 defect only.
  SparseOperator unit_residual(rep.dim());
  for (const auto& p : projections) unit_residual = unit_residual + p;
  unit_residual = unit_residual - SparseOperator::identity(rep.dim());
  report.relations.push_back(measure(rep, "sumP_eq_1", unit_residual, 2, L));

  return report;
}

SparseOperator spectral_projection(const SparseOperator& b, int n,
                                   const TruncatedRep& rep) {
  if (b.dim() != rep.dim()) {
    throw CkError(ErrorCode::DimensionMismatch,
                  "operator does not act on the representation space");
  }
  const int m = 2 * rep.L + 1;
  SparseOperator accumulator(b.dim());
  for (int t = 0; t < m; ++t) {
    const double angle = 2.0 * std::numbers::pi * t / m;
    const Complex lambda{std::cos(angle), std::sin(angle)};
    const SparseOperator u = gauge_unitary(rep, lambda);
    SparseOperator conjugated = u * b * u.adjoint();
    accumulator = accumulator + conjugated.scaled(std::pow(lambda, -n));
  }
  accumulator = accumulator.scaled(Complex{1.0 / m, 0.0});
  // The m-point average of entry phases is an integer-harmonic sum; entries
  // off the selected degree cancel exactly and leave only rounding dust.
  const double cutoff = 1e-13 * (1.0 + b.max_abs_entry());
  SparseOperator out(b.dim());
  for (const auto& [index, value] : accumulator.entries()) {
    if (std::abs(value) > cutoff) out.set(index.first, index.second, value);
  }
  return out;
}

namespace {

bool is_pure_degree(const TruncatedRep& rep, const SparseOperator& x,
                    int degree) {
  return (spectral_projection(x, degree, rep) - x).max_abs_entry() <= 1e-12;
}

}  // namespace

bool grading_check(const TruncatedRep& rep, const SparseOperator& a, int na,
                   const SparseOperator& b, int nb) {
  if (!is_pure_degree(rep, a, na) || !is_pure_degree(rep, b, nb)) {
    throw CkError(ErrorCode::NotPureDegree,
                  "grading check requires pure-degree inputs");
  }
  const SparseOperator product = a * b;
  const bool product_graded =
      (spectral_projection(product, na + nb, rep) - product)
          .max_abs_entry() <= 1e-12;
  const SparseOperator astar = a.adjoint();
  const bool adjoint_graded =
      (spectral_projection(astar, -na, rep) - astar).max_abs_entry() <= 1e-12;
  return product_graded && adjoint_graded;
}

SparseOperator level_element_to_operator(const LevelElement& a,
                                         const TruncatedRep& rep) {
  if (a.level() > rep.L - 1) {
    throw CkError(ErrorCode::LevelExceedsTruncation,
                  "level element does not fit under the truncation");
  }
  SparseOperator out(rep.dim());
  for (const auto& [key, coeff] : a.terms()) {
    SparseOperator term =
        word_operator(rep, key.first) * word_operator(rep, key.second).adjoint();
    out = out + term.scaled(coeff);
  }
  return out;
}

}  // namespace cklab
