#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cklab/path_rep.hpp"
#include "cklab/rng.hpp"

using namespace cklab;

namespace {

ZeroOneMatrix mat(const std::vector<std::vector<int>>& rows) {
  return ZeroOneMatrix::validate(rows);
}

const std::vector<std::vector<int>> kFull2 = {{1, 1}, {1, 1}};
const std::vector<std::vector<int>> kGoldenMean = {{1, 1}, {1, 0}};

Word w(const ZeroOneMatrix& A, std::vector<int> symbols) {
  return Word::admissible(A, std::move(symbols));
}

// Test-only oracle for the spectral projection: keep exactly the entries
// whose row/column length difference is the requested degree.
SparseOperator degree_filter(const SparseOperator& b, int degree,
                             const TruncatedRep& rep) {
  SparseOperator out(b.dim());
  for (const auto& [index, value] : b.entries()) {
    const int d = rep.word_length(index.first) - rep.word_length(index.second);
    if (d == degree) out.set(index.first, index.second, value);
  }
  return out;
}

SparseOperator random_operator(const TruncatedRep& rep, Rng& rng,
                               int entries = 30) {
  SparseOperator out(rep.dim());
  for (int t = 0; t < entries; ++t) {
    out.add(static_cast<int>(rng.below(rep.dim())),
            static_cast<int>(rng.below(rep.dim())), rng.complex_gaussian());
  }
  return out;
}

SparseOperator random_pure_degree(const TruncatedRep& rep, int degree,
                                  Rng& rng, int entries = 12) {
  SparseOperator out(rep.dim());
  int placed = 0;
  while (placed < entries) {
    const int r = static_cast<int>(rng.below(rep.dim()));
    const int c = static_cast<int>(rng.below(rep.dim()));
    if (rep.word_length(r) - rep.word_length(c) != degree) continue;
    out.add(r, c, rng.complex_gaussian());
    ++placed;
  }
  return out;
}

double op_diff(const SparseOperator& a, const SparseOperator& b) {
  return (a - b).max_abs_entry();
}

}  // namespace

TEST_CASE("representation dimensions count admissible words") {
  CHECK(build_truncated_rep(mat(kFull2), 3).dim() == 14);
  CHECK(build_truncated_rep(mat(kGoldenMean), 4).dim() == 18);
  CHECK_THROWS_AS(build_truncated_rep(mat(kFull2), 2), CkError);
}

TEST_CASE("generators prepend symbols") {
  const ZeroOneMatrix A = mat(kFull2);
  const TruncatedRep rep = build_truncated_rep(A, 3);
  const int from = rep.index_of(w(A, {2}));
  const int to = rep.index_of(w(A, {1, 2}));
  REQUIRE(from >= 0);
  REQUIRE(to >= 0);
  CHECK(rep.generator(1).at(to, from) == Complex{1.0, 0.0});

  // the top level is killed
  const int top = rep.index_of(w(A, {1, 1, 1}));
  std::vector<Complex> e(rep.dim(), Complex{0, 0});
  e[top] = 1.0;
  for (const Complex& z : rep.generator(1).apply(e)) {
    CHECK(z == Complex{0.0, 0.0});
  }
}

TEST_CASE("relation residual report") {
  for (const auto& rows : {kFull2, kGoldenMean}) {
    const TruncatedRep rep = build_truncated_rep(mat(rows), 5);
    const ResidualReport report = relation_residuals(rep);
    for (const auto& entry : report.relations) {
      CAPTURE(entry.relation);
      CHECK(entry.interior_residual <= 1e-12);
      CHECK(entry.boundary_residual <= 1.0 + 1e-12);
      if (entry.relation.rfind("SdagS_offdiag", 0) == 0) {
        // orthogonal ranges: exact everywhere
        CHECK(entry.boundary_residual <= 1e-12);
      }
      if (entry.relation == "sumP_eq_1") {
        // P_j kills length-1 words, so the defect there is a full unit
        CHECK(entry.boundary_residual == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("gauge covariance of the generators") {
  const ZeroOneMatrix A = mat(kGoldenMean);
  const TruncatedRep rep = build_truncated_rep(A, 4);
  for (int t = 0; t < 16; ++t) {
    const double angle = 2.0 * std::numbers::pi * t / 16.0;
    const Complex lambda{std::cos(angle), std::sin(angle)};
    const SparseOperator u = gauge_unitary(rep, lambda);
    for (int i = 1; i <= A.size(); ++i) {
      const SparseOperator conjugated = u * rep.generator(i) * u.adjoint();
      CHECK(op_diff(conjugated, rep.generator(i).scaled(lambda)) <= 1e-12);
    }
  }
}

TEST_CASE("spectral projection selects pure degrees") {
  const ZeroOneMatrix A = mat(kFull2);
  const TruncatedRep rep = build_truncated_rep(A, 4);
  const SparseOperator& s1 = rep.generator(1);

  CHECK(op_diff(spectral_projection(s1, 1, rep), s1) <= 1e-12);
  CHECK(spectral_projection(s1, 0, rep).is_zero());

  const SparseOperator smu =
      word_operator(rep, w(A, {1, 2})) * word_operator(rep, w(A, {2})).adjoint();
  CHECK(op_diff(spectral_projection(smu, 1, rep), smu) <= 1e-12);
  CHECK(spectral_projection(smu, 0, rep).is_zero());

  const SparseOperator balanced =
      word_operator(rep, w(A, {1, 2})) *
      word_operator(rep, w(A, {2, 2})).adjoint();
  CHECK(op_diff(spectral_projection(balanced, 0, rep), balanced) <= 1e-12);
}

TEST_CASE("spectral projection matches the degree filter oracle") {
  const ZeroOneMatrix A = mat(kGoldenMean);
  const TruncatedRep rep = build_truncated_rep(A, 5);
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const SparseOperator b = random_operator(rep, rng);
    for (int degree = -(rep.L - 1); degree <= rep.L - 1; ++degree) {
      CHECK(op_diff(spectral_projection(b, degree, rep),
                    degree_filter(b, degree, rep)) <= 1e-12);
    }
  }
}

TEST_CASE("spectral projections are idempotent and orthogonal") {
  const ZeroOneMatrix A = mat(kFull2);
  const TruncatedRep rep = build_truncated_rep(A, 4);
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const SparseOperator b = random_operator(rep, rng);
    for (int n = -2; n <= 2; ++n) {
      for (int m = -2; m <= 2; ++m) {
        const SparseOperator nested =
            spectral_projection(spectral_projection(b, m, rep), n, rep);
        if (n == m) {
          CHECK(op_diff(nested, spectral_projection(b, n, rep)) <= 1e-12);
        } else {
          CHECK(nested.max_abs_entry() <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("band reconstruction") {
  const ZeroOneMatrix A = mat(kGoldenMean);
  const TruncatedRep rep = build_truncated_rep(A, 5);
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const SparseOperator b = random_operator(rep, rng);
    SparseOperator sum(rep.dim());
    for (int d = -(rep.L - 1); d <= rep.L - 1; ++d) {
      sum = sum + spectral_projection(b, d, rep);
    }
    CHECK(op_diff(sum, b) <= 1e-12);
  }
}

TEST_CASE("the degree-zero projection is a conditional expectation shadow") {
  const ZeroOneMatrix A = mat(kFull2);
  const TruncatedRep rep = build_truncated_rep(A, 4);
  Rng rng(29);

  for (int j = 1; j <= A.size(); ++j) {
    const SparseOperator p = range_projection(rep, j);
    CHECK(op_diff(spectral_projection(p, 0, rep), p) <= 1e-12);
  }

  for (int trial = 0; trial < 5; ++trial) {
    const SparseOperator b = random_operator(rep, rng);
    const SparseOperator e0 = spectral_projection(b, 0, rep);
    CHECK(op_diff(spectral_projection(e0, 0, rep), e0) <= 1e-12);

    // positivity: E_0(b* b) has a positive semidefinite quadratic form
    const SparseOperator positive =
        spectral_projection(b.adjoint() * b, 0, rep);
    for (int probe = 0; probe < 10; ++probe) {
      std::vector<Complex> v(rep.dim());
      for (auto& z : v) z = rng.complex_gaussian();
      const auto pv = positive.apply(v);
      Complex quad{0, 0};
      for (int t = 0; t < rep.dim(); ++t) quad += std::conj(v[t]) * pv[t];
      CHECK(quad.real() >= -1e-10);
      CHECK(std::abs(quad.imag()) <= 1e-10);
    }

    // contractivity of the average
    const double norm_b = b.is_zero() ? 0.0 : norm_estimate(b);
    const double norm_e0 = e0.is_zero() ? 0.0 : norm_estimate(e0);
    CHECK(norm_e0 <= norm_b * (1.0 + 1e-6) + 1e-12);
  }
}

TEST_CASE("grading of products and adjoints") {
  const ZeroOneMatrix A = mat(kFull2);
  const TruncatedRep rep = build_truncated_rep(A, 4);

  const SparseOperator s1 = rep.generator(1);
  const SparseOperator s2star = rep.generator(2).adjoint();
  CHECK(grading_check(rep, s1, 1, s2star, -1));

  const SparseOperator s12 = word_operator(rep, w(A, {1, 2}));
  CHECK(grading_check(rep, s12, 2, s1, 1));

  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const int na = static_cast<int>(rng.below(5)) - 2;
    const int nb = static_cast<int>(rng.below(5)) - 2;
    CHECK(grading_check(rep, random_pure_degree(rep, na, rng), na,
                        random_pure_degree(rep, nb, rng), nb));
  }

  CHECK_THROWS_AS(grading_check(rep, s1 + s12, 1, s1, 1), CkError);
}

TEST_CASE("norm estimation") {
  const ZeroOneMatrix A = mat(kFull2);
  const TruncatedRep rep = build_truncated_rep(A, 4);

  // generators are isometric away from the top boundary
  const SparseOperator restricted =
      rep.generator(1).restrict_columns(rep.length_mask(1, rep.L - 1));
  CHECK(norm_estimate(restricted) == doctest::Approx(1.0).epsilon(1e-9));

  CHECK(norm_estimate(SparseOperator(5)) == 0.0);

  const SparseOperator d = SparseOperator::diagonal(
      {Complex{1, 0}, Complex{0, 1}, Complex{-1, 0}, Complex{0, -1}});
  CHECK(norm_estimate(d - d.adjoint()) == doctest::Approx(2.0).epsilon(1e-9));

  // cap reached: two close but distinct singular values under a strict
  // tolerance cannot settle within two iterations
  const SparseOperator slow = SparseOperator::diagonal(
      {Complex{1.0, 0}, Complex{0.999, 0}});
  CHECK_THROWS_AS(norm_estimate(slow, 0.0, 2), CkError);
}

TEST_CASE("level elements act as words on the path space") {
  const ZeroOneMatrix A = mat(kFull2);
  const TruncatedRep rep = build_truncated_rep(A, 5);

  const LevelElement p1 = LevelElement::generator(A, w(A, {1}), w(A, {1}));
  CHECK(op_diff(level_element_to_operator(p1, rep), range_projection(rep, 1)) ==
        0.0);

  for (int level = 1; level <= 3; ++level) {
    const SparseOperator image = level_element_to_operator(
        LevelElement::identity(A, level), rep);
    const auto mask = rep.length_mask(level + 1, rep.L);
    const SparseOperator identity_part =
        SparseOperator::identity(rep.dim()).restrict_columns(mask);
    CHECK(op_diff(image.restrict_columns(mask), identity_part) <= 1e-12);
    // and it kills everything at or below its own level
    const auto low_mask = rep.length_mask(1, level);
    CHECK(image.restrict_columns(low_mask).is_zero());
  }

  CHECK_THROWS_AS(level_element_to_operator(LevelElement::identity(A, 5), rep),
                  CkError);
}

TEST_CASE("level products agree with operator products past the boundary") {
  const ZeroOneMatrix A = mat(kGoldenMean);
  const TruncatedRep rep = build_truncated_rep(A, 5);
  Rng rng(53);
  const auto words = admissible_words(A, 2);
  for (int trial = 0; trial < 10; ++trial) {
    LevelElement a = LevelElement::zero(2);
    LevelElement b = LevelElement::zero(2);
    int added = 0;
    while (added < 3) {
      const Word& mu = words[rng.below(words.size())];
      const Word& nu = words[rng.below(words.size())];
      if (mu.last() != nu.last()) continue;
      a += LevelElement::generator(A, mu, nu, rng.complex_gaussian());
      b += LevelElement::generator(A, nu, mu, rng.complex_gaussian());
      ++added;
    }
    const SparseOperator lhs =
        level_element_to_operator(a, rep) * level_element_to_operator(b, rep);
    const SparseOperator rhs =
        level_element_to_operator(level_multiply(a, b), rep);
    const auto mask = rep.length_mask(3, rep.L - 1);
    CHECK(op_diff(lhs.restrict_columns(mask), rhs.restrict_columns(mask)) <=
          1e-12);
  }
}

TEST_CASE("diagonal entries of level images are product state values") {
  const ZeroOneMatrix A = mat(kGoldenMean);
  const TruncatedRep rep = build_truncated_rep(A, 5);
  const Word x = w(A, {1, 2, 1, 1});
  const int level = 2;
  const int row = rep.index_of(w(A, {1, 2, 1}));  // prefix of length level+1
  REQUIRE(row >= 0);
  for (const Word& mu : admissible_words(A, level)) {
    for (const Word& nu : admissible_words(A, level)) {
      if (mu.last() != nu.last()) continue;
      const LevelElement g = LevelElement::generator(A, mu, nu);
      const SparseOperator image = level_element_to_operator(g, rep);
      CHECK(std::abs(image.at(row, row) - product_state_eval(A, x, g)) <=
            1e-15);
    }
  }
}
