#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cklab/errors.hpp"

namespace cklab {

/// Validated n x n transition matrix with entries in {0,1}.  Every row and
/// every column is non-zero, and n >= 2.  Symbols are 1-based everywhere in
/// the public interface.
class ZeroOneMatrix {
 public:
  /// Validates and wraps a raw square array.  Throws CkError with codes
  /// NonSquare, BadEntry, ZeroRow, ZeroColumn or TooSmall.
  static ZeroOneMatrix validate(const std::vector<std::vector<int>>& raw);

  int size() const { return n_; }

  /// Entry A(i, j), symbols 1-based.
  int at(int i, int j) const { return entries_[(i - 1) * n_ + (j - 1)]; }

  /// Out-degree of symbol i (row sum).
  int out_degree(int i) const;

  /// Successors of symbol i in increasing order.
  std::vector<int> successors(int i) const;

  /// Column sums n_j, 1-based in position j-1.
  std::vector<int> column_sums() const;

  std::vector<std::vector<int>> rows() const;

  bool operator==(const ZeroOneMatrix& other) const = default;

 private:
  ZeroOneMatrix(int n, std::vector<int> entries)
      : n_(n), entries_(std::move(entries)) {}

  int n_ = 0;
  std::vector<int> entries_;  // row-major, values 0/1
};

/// Finite admissible symbol sequence over {1..n}.  Doubles as path, cylinder
/// prefix and multiindex.  The empty word is only produced by explicit
/// request (empty() factory); admissible() rejects empty input.
class Word {
 public:
  Word() = default;

  /// Checks admissibility of `symbols` against A and wraps it.  Throws
  /// NotAdmissible / BadEntry / EmptyWord.
  static Word admissible(const ZeroOneMatrix& A, std::vector<int> symbols);

  /// The empty prefix.
  static Word empty() { return Word(); }

  static bool is_admissible(const ZeroOneMatrix& A,
                            const std::vector<int>& symbols);

  int length() const { return static_cast<int>(symbols_.size()); }
  bool is_empty() const { return symbols_.empty(); }
  const std::vector<int>& symbols() const { return symbols_; }
  int at(int pos) const { return symbols_[pos - 1]; }  // 1-based
  int first() const { return symbols_.front(); }
  int last() const { return symbols_.back(); }

  /// Drops the first symbol (the shift applied to a prefix).
  Word shifted() const;

  std::string to_string() const;

  auto operator<=>(const Word& other) const = default;

 private:
  explicit Word(std::vector<int> symbols) : symbols_(std::move(symbols)) {}

  std::vector<int> symbols_;
};

struct ConditionIWitness {
  Word prefix;             // shortest isolating prefix, lexicographic tie-break
  std::vector<int> cycle;  // the forced cycle the prefix runs into
};

struct ConditionIVerdict {
  bool holds = false;
  std::optional<ConditionIWitness> witness;  // present iff !holds
  std::string method;                        // "forced-cycle" or "brute-force"
};

/// All admissible words of length k in lexicographic order.
std::vector<Word> admissible_words(const ZeroOneMatrix& A, int k);

/// Number of admissible words of length k (walk counting, no enumeration).
long long count_admissible_words(const ZeroOneMatrix& A, int k);

/// States from which exactly one infinite admissible path departs.
/// Greatest fixed point of  S -> { i : out_degree(i)=1 and succ(i) in S }.
std::set<int> forced_states(const ZeroOneMatrix& A);

/// The forced cycle entered from a forced state i: follow unique successors
/// until a state repeats, return the cycle portion.
std::vector<int> forced_cycle_from(const ZeroOneMatrix& A, int start);

/// Lengths of all distinct forced cycles, each reported once.
std::vector<int> forced_cycle_lengths(const ZeroOneMatrix& A);

/// Condition (I): the shift space X_A has no isolated points.  Decided via
/// forced_states; the witness (when it fails) is the shortest isolating
/// prefix plus its forced cycle.
ConditionIVerdict check_condition_I(const ZeroOneMatrix& A);

/// Independent oracle: declares an isolated point when some admissible
/// cylinder has exactly one extension to length `depth` and the forced
/// continuation revisits a state within the observed window.  Exact for
/// depth >= 2n+1.  Throws DepthTooLarge unless 1 <= depth <= 16.
ConditionIVerdict brute_force_condition_I(const ZeroOneMatrix& A, int depth);

/// True iff no admissible cylinder consists entirely of points of the given
/// period under the shift, i.e. the set of `period`-periodic points has
/// empty interior in X_A.  A cylinder is all-periodic exactly when its
/// continuations are forced into a cycle whose length divides `period`.
bool periodic_interior_check(const ZeroOneMatrix& A, int period);

}  // namespace cklab
