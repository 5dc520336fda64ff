#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "cklab/matrix_subshift.hpp"

using namespace cklab;

namespace {

ZeroOneMatrix mat(const std::vector<std::vector<int>>& rows) {
  return ZeroOneMatrix::validate(rows);
}

const std::vector<std::vector<int>> kFull2 = {{1, 1}, {1, 1}};
const std::vector<std::vector<int>> kGoldenMean = {{1, 1}, {1, 0}};
const std::vector<std::vector<int>> kIdentity2 = {{1, 0}, {0, 1}};
const std::vector<std::vector<int>> kSwap2 = {{0, 1}, {1, 0}};

// Test-only oracle: enumerate every admissible word of length `depth`
// literally, count extensions per cylinder prefix, and declare an isolated
// point when a unique extension's forced walk revisits a state.
bool literal_cylinder_oracle_holds(const ZeroOneMatrix& A, int depth) {
  const std::vector<Word> words = admissible_words(A, depth);
  for (int l = 1; l < depth; ++l) {
    std::map<std::vector<int>, std::vector<const Word*>> by_prefix;
    for (const Word& w : words) {
      std::vector<int> prefix(w.symbols().begin(), w.symbols().begin() + l);
      by_prefix[prefix].push_back(&w);
    }
    for (const auto& [prefix, group] : by_prefix) {
      if (group.size() != 1) continue;
      const Word& w = *group.front();
      // walk states x_l .. x_depth, 1-based
      for (int a = l; a <= depth; ++a) {
        for (int b = a + 1; b <= depth; ++b) {
          if (w.at(a) == w.at(b)) return false;
        }
      }
    }
  }
  return true;
}

// All valid 0-1 matrices of size n (every row and column non-zero).
std::vector<ZeroOneMatrix> all_valid_matrices(int n) {
  std::vector<ZeroOneMatrix> out;
  const int cells = n * n;
  for (long long bits = 0; bits < (1LL << cells); ++bits) {
    std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
    for (int c = 0; c < cells; ++c) {
      rows[c / n][c % n] = static_cast<int>((bits >> c) & 1);
    }
    bool rows_ok = true, cols_ok = true;
    for (int i = 0; i < n; ++i) {
      int rs = 0, cs = 0;
      for (int j = 0; j < n; ++j) {
        rs += rows[i][j];
        cs += rows[j][i];
      }
      rows_ok = rows_ok && rs > 0;
      cols_ok = cols_ok && cs > 0;
    }
    if (rows_ok && cols_ok) out.push_back(ZeroOneMatrix::validate(rows));
  }
  return out;
}

}  // namespace

TEST_CASE("validate accepts and rejects the right shapes") {
  const ZeroOneMatrix A = mat(kFull2);
  CHECK(A.size() == 2);

  CHECK_THROWS_WITH_AS(ZeroOneMatrix::validate({{1, 0}, {1, 0}}),
                       "column 2 is zero", CkError);
  try {
    ZeroOneMatrix::validate({{1, 0}, {1, 0}});
  } catch (const CkError& e) {
    CHECK(e.code() == ErrorCode::ZeroColumn);
    CHECK(e.index() == 2);
  }

  CHECK_THROWS_AS(ZeroOneMatrix::validate({{1}}), CkError);
  try {
    ZeroOneMatrix::validate({{1}});
  } catch (const CkError& e) {
    CHECK(e.code() == ErrorCode::TooSmall);
  }

  CHECK_THROWS_AS(ZeroOneMatrix::validate({{1, 1}, {1, 1}, {1, 1}}), CkError);
  CHECK_THROWS_AS(ZeroOneMatrix::validate({{1, 2}, {1, 1}}), CkError);
  CHECK_THROWS_AS(ZeroOneMatrix::validate({{0, 0}, {1, 1}}), CkError);
}

TEST_CASE("admissible words enumerate cylinders in lexicographic order") {
  const ZeroOneMatrix golden = mat(kGoldenMean);
  const auto words = admissible_words(golden, 2);
  REQUIRE(words.size() == 3);
  CHECK(words[0].symbols() == std::vector<int>{1, 1});
  CHECK(words[1].symbols() == std::vector<int>{1, 2});
  CHECK(words[2].symbols() == std::vector<int>{2, 1});

  CHECK(admissible_words(mat(kFull2), 3).size() == 8);

  const auto constant = admissible_words(mat(kIdentity2), 5);
  REQUIRE(constant.size() == 2);
  CHECK(constant[0].symbols() == std::vector<int>{1, 1, 1, 1, 1});
  CHECK(constant[1].symbols() == std::vector<int>{2, 2, 2, 2, 2});

  CHECK_THROWS_AS(admissible_words(golden, 0), CkError);
}

TEST_CASE("word counts satisfy the walk recursion") {
  for (const auto& rows : {kFull2, kGoldenMean, kIdentity2, kSwap2}) {
    const ZeroOneMatrix A = mat(rows);
    for (int k = 1; k <= 8; ++k) {
      CHECK(count_admissible_words(A, k) ==
            static_cast<long long>(admissible_words(A, k).size()));
    }
  }
}

TEST_CASE("forced states") {
  CHECK(forced_states(mat(kIdentity2)) == std::set<int>{1, 2});
  CHECK(forced_states(mat(kGoldenMean)).empty());
  CHECK(forced_states(mat(kSwap2)) == std::set<int>{1, 2});
}

TEST_CASE("forced states are a fixed point of the defining map") {
  for (int n = 2; n <= 3; ++n) {
    for (const ZeroOneMatrix& A : all_valid_matrices(n)) {
      const std::set<int> forced = forced_states(A);
      for (int i = 1; i <= n; ++i) {
        const auto succ = A.successors(i);
        const bool in_image =
            succ.size() == 1 && forced.count(succ.front()) > 0;
        CHECK(in_image == (forced.count(i) > 0));
      }
    }
  }
}

TEST_CASE("condition (I) verdicts with witnesses") {
  CHECK(check_condition_I(mat(kFull2)).holds);
  CHECK(check_condition_I(mat(kGoldenMean)).holds);

  const ConditionIVerdict verdict = check_condition_I(mat(kIdentity2));
  CHECK_FALSE(verdict.holds);
  REQUIRE(verdict.witness.has_value());
  CHECK(verdict.witness->prefix.symbols() == std::vector<int>{1});
  CHECK(verdict.witness->cycle == std::vector<int>{1});
  CHECK(verdict.method == "forced-cycle");

  CHECK_FALSE(check_condition_I(mat(kFull2)).witness.has_value());
}

TEST_CASE("brute force oracle on the named examples") {
  CHECK_FALSE(brute_force_condition_I(mat(kIdentity2), 5).holds);
  CHECK(brute_force_condition_I(mat(kFull2), 5).holds);
  CHECK_FALSE(brute_force_condition_I(mat(kSwap2), 5).holds);
  CHECK(brute_force_condition_I(mat(kSwap2), 5).method == "brute-force");

  const auto verdict = brute_force_condition_I(mat(kSwap2), 5);
  REQUIRE(verdict.witness.has_value());
  CHECK(verdict.witness->prefix.symbols() == std::vector<int>{1});
  CHECK(verdict.witness->cycle == std::vector<int>{1, 2});

  CHECK_THROWS_AS(brute_force_condition_I(mat(kFull2), 0), CkError);
  CHECK_THROWS_AS(brute_force_condition_I(mat(kFull2), 17), CkError);
}

TEST_CASE("brute force oracle matches literal cylinder enumeration") {
  for (int n = 2; n <= 3; ++n) {
    for (const ZeroOneMatrix& A : all_valid_matrices(n)) {
      for (int depth : {3, 2 * n + 1}) {
        CHECK(brute_force_condition_I(A, depth).holds ==
              literal_cylinder_oracle_holds(A, depth));
      }
    }
  }
}

TEST_CASE("decision procedure agrees with the certified oracle, n <= 3") {
  for (int n = 2; n <= 3; ++n) {
    for (const ZeroOneMatrix& A : all_valid_matrices(n)) {
      CHECK(check_condition_I(A).holds ==
            brute_force_condition_I(A, 2 * n + 1).holds);
    }
  }
}

TEST_CASE("periodic interiors on the named examples") {
  CHECK_FALSE(periodic_interior_check(mat(kIdentity2), 1));
  for (int p = 1; p <= 6; ++p) {
    CHECK(periodic_interior_check(mat(kFull2), p));
  }
  CHECK_FALSE(periodic_interior_check(mat(kSwap2), 2));
  CHECK(periodic_interior_check(mat(kSwap2), 1));
}

TEST_CASE("topological freeness of the shift is condition (I), n <= 3") {
  for (int n = 2; n <= 3; ++n) {
    for (const ZeroOneMatrix& A : all_valid_matrices(n)) {
      bool all_empty = true;
      for (int p = 1; p <= 2 * n; ++p) {
        all_empty = all_empty && periodic_interior_check(A, p);
      }
      CHECK(check_condition_I(A).holds == all_empty);
    }
  }
}

TEST_CASE("word admissibility guards") {
  const ZeroOneMatrix golden = mat(kGoldenMean);
  CHECK_THROWS_AS(Word::admissible(golden, {2, 2}), CkError);
  CHECK_THROWS_AS(Word::admissible(golden, {3}), CkError);
  CHECK_THROWS_AS(Word::admissible(golden, {}), CkError);
  const Word w = Word::admissible(golden, {1, 2, 1});
  CHECK(w.length() == 3);
  CHECK(w.shifted().symbols() == std::vector<int>{2, 1});
}
