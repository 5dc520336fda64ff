#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cklab/crossed_product.hpp"
#include "cklab/path_rep.hpp"
#include "cklab/rng.hpp"

namespace cklab {

/// One gap experiment: a word around a forced cycle minus its adjoint,
/// measured in the two finite-dimensional generator assignments.
struct GapExperimentRecord {
  std::string element;
  std::vector<int> cycle;
  double norm_rep1 = 0.0;
  double norm_rep2 = 0.0;
  double gap = 0.0;
  double relation_residual_rep1 = 0.0;  // max over the adopted relations
  double relation_residual_rep2 = 0.0;
};

struct AgreementNormPair {
  int L = 0;
  double norm_prepend = 0.0;
  double norm_sliding = 0.0;
  double gap = 0.0;
  double relative_gap = 0.0;
};

struct AgreementSample {
  int sample_index = 0;
  std::string element;
  std::vector<AgreementNormPair> by_length;
};

struct UniquenessReport {
  std::vector<std::vector<int>> matrix_rows;
  ConditionIVerdict condition_I;
  std::string conclusion;  // "gap-witness" | "agreement" | "inconclusive"
  double gap_tolerance = 0.0;

  std::vector<GapExperimentRecord> gap_records;

  std::vector<int> L_values;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<AgreementSample> agreement_records;
};

/// Two exact finite-dimensional generator assignments for a matrix whose
/// shift space is a finite union of cycles (every state forced).  The first
/// acts by cycle permutations; the second tensors an extra C^4 factor and
/// twists one designated generator per cycle by diag(1, i, -1, -i).
struct CycleAssignments {
  std::vector<std::vector<int>> cycles;  // each starts at its smallest state
  std::vector<SparseOperator> rep1;      // dim n
  std::vector<SparseOperator> rep2;      // dim 4n
};

CycleAssignments build_cycle_assignments(const ZeroOneMatrix& A);

/// Max residual of the adopted relations over a generator assignment.
double assignment_relation_residual(const ZeroOneMatrix& A,
                                    const std::vector<SparseOperator>& gens);

/// Exhibits the failure of uniqueness when condition (I) fails: the word
/// around the first forced cycle minus its adjoint has norm 0 in the first
/// assignment and norm 2 in the second.  Throws ConditionIHolds when there
/// is nothing to witness and UnsupportedShape when some state is unforced.
UniquenessReport norm_gap_witness(const ZeroOneMatrix& A);

/// Second truncated model: basis is the admissible words of length exactly
/// L and S_i prepends and drops the last symbol (sliding window).
struct SlidingRep {
  ZeroOneMatrix A;
  int L = 0;
  std::vector<Word> basis;
  std::vector<SparseOperator> gens;

  int dim() const { return static_cast<int>(basis.size()); }
  const SparseOperator& generator(int i) const { return gens[i - 1]; }
};

SlidingRep build_sliding_rep(const ZeroOneMatrix& A, int L);

/// A random gauge polynomial: finitely many S_mu S_nu^* terms with short
/// words and seeded Gaussian coefficients.  Realizable in both models.
struct GaugePolynomial {
  struct Term {
    Word mu;  // may be empty
    Word nu;  // may be empty
    Complex coeff;
  };
  std::vector<Term> terms;
  std::string describe() const;
};

GaugePolynomial sample_gauge_polynomial(const ZeroOneMatrix& A, int max_len,
                                        int term_count, Rng& rng);

SparseOperator realize_in_truncated(const GaugePolynomial& p,
                                    const TruncatedRep& rep);
SparseOperator realize_in_sliding(const GaugePolynomial& p,
                                  const SlidingRep& rep);

/// Estimates the norms of sampled elements in both truncated models at each
/// L and records the gaps; concludes "agreement" when every sample's
/// relative gap at the largest L is below 5%.  Observational evidence, not
/// a proof.  Throws ConditionIFails when condition (I) does not hold.
UniquenessReport agreement_experiment(const ZeroOneMatrix& A,
                                      const std::vector<int>& L_values,
                                      int samples, std::uint64_t seed);

/// Max over samples of ||E_0(b)|| - ||b|| (estimator noise aside, never
/// positive: the degree-zero average is contractive).
double expectation_contractivity(const ZeroOneMatrix& A, int L, int samples,
                                 std::uint64_t seed);

}  // namespace cklab
