#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cklab/crossed_product.hpp"
#include "cklab/rng.hpp"

using namespace cklab;

namespace {

ZeroOneMatrix mat(const std::vector<std::vector<int>>& rows) {
  return ZeroOneMatrix::validate(rows);
}

const std::vector<std::vector<int>> kFull2 = {{1, 1}, {1, 1}};
const std::vector<std::vector<int>> kGoldenMean = {{1, 1}, {1, 0}};
const std::vector<std::vector<int>> kIdentity2 = {{1, 0}, {0, 1}};

Word w(const ZeroOneMatrix& A, std::vector<int> symbols) {
  return Word::admissible(A, std::move(symbols));
}

double op_diff(const SparseOperator& a, const SparseOperator& b) {
  return (a - b).max_abs_entry();
}

}  // namespace

TEST_CASE("the isometry averages admissible prepends") {
  const ZeroOneMatrix A = mat(kFull2);
  const TruncatedRep rep = build_truncated_rep(A, 4);
  const SparseOperator s = build_isometry_S(rep);

  const int from = rep.index_of(w(A, {2, 1}));
  const int to1 = rep.index_of(w(A, {1, 2, 1}));
  const int to2 = rep.index_of(w(A, {2, 2, 1}));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s.at(to1, from) - Complex{inv_sqrt2, 0}) <= 1e-15);
  CHECK(std::abs(s.at(to2, from) - Complex{inv_sqrt2, 0}) <= 1e-15);

  const ZeroOneMatrix golden = mat(kGoldenMean);
  const TruncatedRep grep = build_truncated_rep(golden, 4);
  const SparseOperator gs = build_isometry_S(grep);
  const int gfrom = grep.index_of(w(golden, {2, 1}));
  const int gto = grep.index_of(w(golden, {1, 2, 1}));
  CHECK(std::abs(gs.at(gto, gfrom) - Complex{1.0, 0}) <= 1e-15);
}

TEST_CASE("S restricted below the top is an isometry") {
  for (const auto& rows : {kFull2, kGoldenMean}) {
    const ZeroOneMatrix A = mat(rows);
    const TruncatedRep rep = build_truncated_rep(A, 5);
    const SparseOperator s = build_isometry_S(rep);
    const SparseOperator gram = s.adjoint() * s;
    for (int c = 0; c < rep.dim(); ++c) {
      if (rep.word_length(c) > rep.L - 1) continue;
      for (int r = 0; r < rep.dim(); ++r) {
        if (rep.word_length(r) > rep.L - 1) continue;
        const Complex expected = r == c ? Complex{1, 0} : Complex{0, 0};
        CHECK(std::abs(gram.at(r, c) - expected) <= 1e-12);
      }
    }
  }
}

TEST_CASE("covariance: conjugation by S realizes the endomorphism") {
  const ZeroOneMatrix A = mat(kFull2);
  const TruncatedRep rep = build_truncated_rep(A, 5);

  const CovarianceReport report =
      covariance_check(rep, LevelElement::generator(A, w(A, {1}), w(A, {1})));
  REQUIRE(report.relations.size() == 2);
  CHECK(report.relations[0].relation == "SdagS_eq_1");
  CHECK(report.relations[0].interior_residual <= 1e-10);
  CHECK(report.relations[1].relation == "SaSdag_eq_alpha");
  CHECK(report.relations[1].interior_residual <= 1e-10);
  CHECK(report.divergence_flags ==
        std::vector<std::string>{"unit_relation_adopted"});

  const ZeroOneMatrix golden = mat(kGoldenMean);
  const TruncatedRep grep = build_truncated_rep(golden, 5);
  const CovarianceReport greport = covariance_check(
      grep, LevelElement::generator(golden, w(golden, {2}), w(golden, {2})));
  CHECK(greport.relations[1].interior_residual <= 1e-10);

  CHECK_THROWS_AS(
      covariance_check(rep, LevelElement::identity(A, rep.L - 1)), CkError);
}

TEST_CASE("covariance holds for every small generator") {
  for (const auto& rows : {kFull2, kGoldenMean}) {
    const ZeroOneMatrix A = mat(rows);
    const TruncatedRep rep = build_truncated_rep(A, 6);
    for (int level = 1; level <= rep.L - 3; ++level) {
      for (const Word& mu : admissible_words(A, level)) {
        for (const Word& nu : admissible_words(A, level)) {
          if (mu.last() != nu.last()) continue;
          const CovarianceReport report =
              covariance_check(rep, LevelElement::generator(A, mu, nu));
          CHECK(report.relations[1].interior_residual <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("S S* is exactly the unit of the image") {
  const ZeroOneMatrix A = mat(kFull2);
  const TruncatedRep rep = build_truncated_rep(A, 5);
  const SparseOperator s = build_isometry_S(rep);
  const SparseOperator p = s * s.adjoint();
  CHECK(op_diff(p * p, p) <= 1e-12);
  CHECK(op_diff(p, p.adjoint()) <= 1e-12);

  // alpha(identity at level 1) matches S 1 S* on the interior
  const CovarianceReport report =
      covariance_check(rep, LevelElement::identity(A, 1));
  CHECK(report.relations[1].interior_residual <= 1e-10);
}

TEST_CASE("compression by S lands in the level algebras") {
  const ZeroOneMatrix A = mat(kFull2);
  const TruncatedRep rep = build_truncated_rep(A, 5);

  // S* e_{(1,1),(1,1)} S = (1/2) e_{(1),(1)} on the interior
  const SparseOperator s = build_isometry_S(rep);
  const SparseOperator target =
      s.adjoint() *
      level_element_to_operator(
          LevelElement::generator(A, w(A, {1, 1}), w(A, {1, 1})), rep) *
      s;
  const SparseOperator expected =
      level_element_to_operator(LevelElement::generator(A, w(A, {1}), w(A, {1})),
                                rep)
          .scaled(0.5);
  const auto mask = rep.length_mask(1, rep.L - 1);
  CHECK(op_diff(target.restrict_columns(mask),
                expected.restrict_columns(mask)) <= 1e-12);

  for (const Word& mu : admissible_words(A, 2)) {
    for (const Word& nu : admissible_words(A, 2)) {
      if (mu.last() != nu.last()) continue;
      CHECK(star_compression_check(
                rep, LevelElement::generator(A, mu, nu)) <= 1e-8);
    }
  }

  // compressing an alpha image recovers the original on the interior
  Rng rng(7);
  LevelElement b = LevelElement::zero(1);
  for (const Word& mu : admissible_words(A, 1)) {
    b += LevelElement::generator(A, mu, mu, rng.complex_gaussian());
  }
  const SparseOperator lhs =
      s.adjoint() * level_element_to_operator(alpha_level(A, b), rep) * s;
  const SparseOperator rhs = level_element_to_operator(b, rep);
  const auto inner_mask = rep.length_mask(1, rep.L - 2);
  CHECK(op_diff(lhs.restrict_columns(inner_mask),
                rhs.restrict_columns(inner_mask)) <= 1e-12);

  CHECK(star_compression_check(rep, LevelElement::zero(2)) == 0.0);
  CHECK_THROWS_AS(star_compression_check(rep, LevelElement::zero(1)), CkError);
}

TEST_CASE("generators are recovered from the isometry") {
  const std::vector<std::vector<int>> kThree = {{0, 1, 0}, {0, 0, 1},
                                                {1, 1, 0}};
  for (const auto& rows : {kFull2, kGoldenMean, kThree, kIdentity2}) {
    const ZeroOneMatrix A = mat(rows);
    const TruncatedRep rep = build_truncated_rep(A, 5);
    const SparseOperator s = build_isometry_S(rep);
    const auto recovered = recover_generators(rep, s);
    const auto mask = rep.length_mask(1, rep.L - 1);
    for (int i = 1; i <= A.size(); ++i) {
      const SparseOperator diff =
          (recovered[i - 1] - rep.generator(i)).restrict_columns(mask);
      CHECK(diff.max_abs_entry() <= 1e-12);
    }
    // both sides kill the top level
    const auto top_mask = rep.length_mask(rep.L, rep.L);
    for (int i = 1; i <= A.size(); ++i) {
      CHECK(recovered[i - 1].restrict_columns(top_mask).is_zero());
      CHECK(rep.generator(i).restrict_columns(top_mask).is_zero());
    }
  }
}

TEST_CASE("the isometry is a pure degree-one element") {
  const ZeroOneMatrix A = mat(kGoldenMean);
  const TruncatedRep rep = build_truncated_rep(A, 4);
  const SparseOperator s = build_isometry_S(rep);
  CHECK(op_diff(spectral_projection(s, 1, rep), s) <= 1e-12);
  for (int d = -2; d <= 2; ++d) {
    if (d == 1) continue;
    CHECK(spectral_projection(s, d, rep).is_zero());
  }
}

TEST_CASE("finite-stage hereditarity of the range") {
  const ZeroOneMatrix A = mat(kFull2);
  const TruncatedRep rep = build_truncated_rep(A, 5);
  const SparseOperator s = build_isometry_S(rep);
  Rng rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    SparseOperator b(rep.dim());
    for (const Word& mu : admissible_words(A, 2)) {
      for (const Word& nu : admissible_words(A, 2)) {
        if (mu.last() != nu.last()) continue;
        b = b + level_element_to_operator(
                    LevelElement::generator(A, mu, nu), rep)
                    .scaled(rng.complex_gaussian());
      }
    }
    CHECK(hereditarity_distance(rep, s, b, 1) <= 1e-8);
  }
}

TEST_CASE("semi-saturation criterion on generator degrees") {
  GradedGeneratorSet ck;
  for (int i = 1; i <= 3; ++i) ck.push_back({"S_" + std::to_string(i), 1});
  CHECK(semi_saturation_check(ck).semi_saturated);

  GradedGeneratorSet crossed{{"A", 0}, {"S", 1}};
  CHECK(semi_saturation_check(crossed).semi_saturated);

  GradedGeneratorSet bad{{"A", 0}, {"T", 2}};
  const SemiSaturationVerdict verdict = semi_saturation_check(bad);
  CHECK_FALSE(verdict.semi_saturated);
  CHECK(verdict.offenders == std::vector<std::string>{"T"});
}
