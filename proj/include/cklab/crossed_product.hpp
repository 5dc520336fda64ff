#pragma once

#include <string>
#include <vector>

#include "cklab/path_rep.hpp"

namespace cklab {

struct GradedGenerator {
  std::string label;
  int degree = 0;
};

using GradedGeneratorSet = std::vector<GradedGenerator>;

struct SemiSaturationVerdict {
  bool semi_saturated = false;
  std::vector<std::string> offenders;  // labels with degree outside {0,1}
};

/// Semi-saturation criterion for a circle action defined on generators:
/// the algebra is generated by degrees 0 and 1 iff every generator carries
/// degree 0 or 1.
SemiSaturationVerdict semi_saturation_check(const GradedGeneratorSet& gens);

/// The isometry S = sum_{i,j} (1/sqrt(n_j)) S_i Q_j, with Q_j the
/// first-symbol projection, so that S|mu> = (1/sqrt(n_{mu_1})) *
/// sum_i A(i, mu_1) |i mu> for |mu| < L and S kills the top level.
/// S^* S is the identity on word lengths <= L-1.
SparseOperator build_isometry_S(const TruncatedRep& rep);

struct CovarianceReport {
  std::vector<RelationResidual> relations;
  std::vector<std::string> divergence_flags;
};

/// Residuals of the covariance pair for one level element a:
/// S op(a) S^* = op(alpha(a)) on lengths [level+2, L-1], and S^* S = 1 on
/// lengths [1, L-1].  Requires a.level <= L-2.
CovarianceReport covariance_check(const TruncatedRep& rep,
                                  const LevelElement& a);

/// Frobenius least-squares distance (reported as operator norm of the
/// residual) from `target` to the linear span of `span`, all restricted to
/// the columns selected by `mask`.
double distance_to_span(const SparseOperator& target,
                        const std::vector<SparseOperator>& span,
                        const std::vector<char>& mask);

/// Distance from S^* op(a) S to the span of generator images at levels
/// a.level-1 .. a.level+1, on the column range [1, L-1].  Requires
/// 2 <= a.level <= L-1.
double star_compression_check(const TruncatedRep& rep, const LevelElement& a);

/// Generator recovery S_i = sum_j A(i,j) sqrt(n_j) Q_i S Q_j; agrees with
/// the representation's S_i on lengths <= L-1.
std::vector<SparseOperator> recover_generators(const TruncatedRep& rep,
                                               const SparseOperator& S);

/// Distance from SS^* b SS^* to the span of {op(alpha(g))} over level-k
/// generators g, on the column range [1, L-1]: the finite-stage shadow of
/// the hereditary-range property.
double hereditarity_distance(const TruncatedRep& rep, const SparseOperator& S,
                             const SparseOperator& b, int level);

}  // namespace cklab
