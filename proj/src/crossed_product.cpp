#include "cklab/crossed_product.hpp"

#include <cmath>

namespace cklab {

SemiSaturationVerdict semi_saturation_check(const GradedGeneratorSet& gens) {
  SemiSaturationVerdict verdict;
  for (const auto& g : gens) {
    if (g.degree != 0 && g.degree != 1) verdict.offenders.push_back(g.label);
  }
  verdict.semi_saturated = verdict.offenders.empty();
  return verdict;
}

SparseOperator build_isometry_S(const TruncatedRep& rep) {
  const std::vector<int> n = n_vector(rep.A);
  SparseOperator s(rep.dim());
  for (int j = 1; j <= rep.A.size(); ++j) {
    const double weight = 1.0 / std::sqrt(static_cast<double>(n[j - 1]));
    const SparseOperator q = first_symbol_projection(rep, j);
    for (int i = 1; i <= rep.A.size(); ++i) {
      s = s + (rep.generator(i) * q).scaled(weight);
    }
  }
  return s;
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

Complex frobenius_dot(const SparseOperator& x, const SparseOperator& y) {
  const auto& a = x.entries();
  const auto& b = y.entries();
  Complex total{0.0, 0.0};
  if (a.size() <= b.size()) {
    for (const auto& [index, value] : a) {
      auto found = b.find(index);
      if (found != b.end()) total += std::conj(value) * found->second;
    }
  } else {
    for (const auto& [index, value] : b) {
      auto found = a.find(index);
      if (found != a.end()) total += std::conj(found->second) * value;
    }
  }
  return total;
}

double frobenius_norm(const SparseOperator& x) {
  double total = 0.0;
  for (const auto& [index, value] : x.entries()) total += std::norm(value);
  return std::sqrt(total);
}

}  // namespace

CovarianceReport covariance_check(const TruncatedRep& rep,
                                  const LevelElement& a) {
  if (a.level() > rep.L - 2) {
    throw CkError(ErrorCode::LevelExceedsTruncation,
                  "covariance check needs level <= L-2");
  }
  const SparseOperator s = build_isometry_S(rep);
  CovarianceReport report;
  report.divergence_flags = {"unit_relation_adopted"};

  SparseOperator isometry_residual =
      s.adjoint() * s - SparseOperator::identity(rep.dim());
  report.relations.push_back(
      measure(rep, "SdagS_eq_1", isometry_residual, 1, rep.L - 1));

  SparseOperator lhs = s * level_element_to_operator(a, rep) * s.adjoint();
  SparseOperator rhs =
      level_element_to_operator(alpha_level(rep.A, a), rep);
  report.relations.push_back(measure(rep, "SaSdag_eq_alpha", lhs - rhs,
                                     a.level() + 2, rep.L - 1));
  return report;
}

double distance_to_span(const SparseOperator& target,
                        const std::vector<SparseOperator>& span,
                        const std::vector<char>& mask) {
  SparseOperator residual = target.restrict_columns(mask);
  std::vector<SparseOperator> basis;
  for (const auto& raw : span) {
    SparseOperator v = raw.restrict_columns(mask);
    for (int pass = 0; pass < 2; ++pass) {  // reorthogonalize once
      for (const auto& q : basis) {
        v = v - q.scaled(frobenius_dot(q, v));
      }
    }
    const double scale = frobenius_norm(v);
    if (scale > 1e-12) basis.push_back(v.scaled(1.0 / scale));
  }
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) {
      residual = residual - q.scaled(frobenius_dot(q, residual));
    }
  }
  if (residual.is_zero()) return 0.0;
  return norm_estimate(residual);
}

double star_compression_check(const TruncatedRep& rep,
                              const LevelElement& a) {
  if (a.level() < 2 || a.level() > rep.L - 1) {
    throw CkError(ErrorCode::LevelExceedsTruncation,
                  "compression check needs 2 <= level <= L-1");
  }
  const SparseOperator s = build_isometry_S(rep);
  const SparseOperator target =
      s.adjoint() * level_element_to_operator(a, rep) * s;

  std::vector<SparseOperator> span;
  for (int k = a.level() - 1; k <= a.level() + 1; ++k) {
    if (k < 1 || k > rep.L - 1) continue;
    for (const Word& w : admissible_words(rep.A, k)) {
      for (const Word& v : admissible_words(rep.A, k)) {
        if (w.last() != v.last()) continue;
        span.push_back(level_element_to_operator(
            LevelElement::generator(rep.A, w, v), rep));
      }
    }
  }
  return distance_to_span(target, span, rep.length_mask(1, rep.L - 1));
}

std::vector<SparseOperator> recover_generators(const TruncatedRep& rep,
                                               const SparseOperator& S) {
  const std::vector<int> n = n_vector(rep.A);
  std::vector<SparseOperator> recovered;
  for (int i = 1; i <= rep.A.size(); ++i) {
    SparseOperator acc(rep.dim());
    const SparseOperator qi = first_symbol_projection(rep, i);
    for (int j = 1; j <= rep.A.size(); ++j) {
      if (rep.A.at(i, j) != 1) continue;
      const double weight = std::sqrt(static_cast<double>(n[j - 1]));
      acc = acc + (qi * S * first_symbol_projection(rep, j)).scaled(weight);
    }
    recovered.push_back(std::move(acc));
  }
  return recovered;
}

double hereditarity_distance(const TruncatedRep& rep, const SparseOperator& S,
                             const SparseOperator& b, int level) {
  const SparseOperator range_proj = S * S.adjoint();
  const SparseOperator target = range_proj * b * range_proj;
  std::vector<SparseOperator> span;
  for (const Word& w : admissible_words(rep.A, level)) {
    for (const Word& v : admissible_words(rep.A, level)) {
      if (w.last() != v.last()) continue;
      span.push_back(level_element_to_operator(
          alpha_level(rep.A, LevelElement::generator(rep.A, w, v)), rep));
    }
  }
  return distance_to_span(target, span, rep.length_mask(1, rep.L - 1));
}

}  // namespace cklab
