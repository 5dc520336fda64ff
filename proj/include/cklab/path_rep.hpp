#pragma once

#include <string>
#include <vector>

#include "cklab/af_core.hpp"
#include "cklab/sparse_operator.hpp"

namespace cklab {

/// Sparse representation of the generators on the space spanned by all
/// admissible words of lengths 1..L.  S_i prepends the symbol i and kills
/// the top level:
///   S_i |mu> = A(i, mu_1) |i mu>   for |mu| < L,        0 for |mu| = L.
/// The defining relations hold exactly away from the length boundaries; the
/// exact ranges are produced by relation_residuals.
struct TruncatedRep {
  ZeroOneMatrix A;
  int L = 0;
  std::vector<Word> basis;           // ordered by (length, lex)
  std::vector<SparseOperator> gens;  // S_1..S_n

  int dim() const { return static_cast<int>(basis.size()); }
  int index_of(const Word& w) const;  // -1 when absent
  int word_length(int index) const { return basis[index].length(); }
  const SparseOperator& generator(int i) const { return gens[i - 1]; }

  /// Mask selecting basis words with lo <= length <= hi.
  std::vector<char> length_mask(int lo, int hi) const;
};

TruncatedRep build_truncated_rep(const ZeroOneMatrix& A, int L);

/// The gauge unitary  |mu> -> lambda^{|mu|} |mu>  for |lambda| = 1.
SparseOperator gauge_unitary(const TruncatedRep& rep, Complex lambda);

/// P_j = S_j S_j^* (kills length-1 words, a tracked bottom-boundary defect).
SparseOperator range_projection(const TruncatedRep& rep, int j);

/// Diagonal projection onto words with first symbol j, at every length.
/// Agrees with range_projection except on length-1 words.
SparseOperator first_symbol_projection(const TruncatedRep& rep, int j);

/// S_mu = S_{mu_1} ... S_{mu_k} by literal composition.
SparseOperator word_operator(const TruncatedRep& rep, const Word& mu);

struct RelationResidual {
  std::string relation;
  int interior_lo = 0;  // word-length range on which the relation is exact
  int interior_hi = 0;
  double interior_residual = 0.0;
  double boundary_residual = 0.0;
};

struct ResidualReport {
  std::vector<RelationResidual> relations;
};

/// Residual norms of every defining relation, split into the interior range
/// (contract: 0 up to rounding) and the boundary lengths.
ResidualReport relation_residuals(const TruncatedRep& rep);

/// Degree-n spectral component: the average of lambda^{-n} gauge conjugates
/// of b over the (2L+1)-th roots of unity.  The averaging is exact here
/// because entry degrees are bounded by L-1 in absolute value.
SparseOperator spectral_projection(const SparseOperator& b, int n,
                                   const TruncatedRep& rep);

/// Verifies that a and b have the stated pure degrees (NotPureDegree
/// otherwise), then checks E_{na+nb}(ab) = ab and E_{-na}(a*) = a*.
bool grading_check(const TruncatedRep& rep, const SparseOperator& a, int na,
                   const SparseOperator& b, int nb);

/// Realizes a level element as an operator: e_{mu,nu} becomes the literal
/// composition S_mu S_nu^*.  Requires a.level <= L-1.
SparseOperator level_element_to_operator(const LevelElement& a,
                                         const TruncatedRep& rep);

}  // namespace cklab
