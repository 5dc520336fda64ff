#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "cklab/matrix_subshift.hpp"

namespace cklab {

using Complex = std::complex<double>;

/// Element of the level-k finite dimensional algebra: a finite linear
/// combination of matrix units e_{mu,nu} with |mu| = |nu| = k, equal last
/// symbols and both words admissible.  The level algebra splits as a direct
/// sum of blocks indexed by the shared last symbol.
class LevelElement {
 public:
  using Key = std::pair<Word, Word>;
  using TermMap = std::map<Key, Complex>;

  static LevelElement zero(int level);

  /// coeff * e_{mu,nu}.  Validates lengths, admissibility and the matching
  /// last symbol against A.
  static LevelElement generator(const ZeroOneMatrix& A, const Word& mu,
                                const Word& nu, Complex coeff = 1.0);

  /// Sum of all diagonal matrix units at the level: the unit of the level
  /// algebra.
  static LevelElement identity(const ZeroOneMatrix& A, int level);

  int level() const { return level_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Complex coefficient(const Word& mu, const Word& nu) const;

  LevelElement adjoint() const;

  LevelElement& operator+=(const LevelElement& other);
  LevelElement operator+(const LevelElement& other) const;
  LevelElement operator-(const LevelElement& other) const;
  LevelElement operator*(Complex scalar) const;

  /// Sup norm on coefficients; exact-zero terms are pruned on the way in.
  double max_abs_coeff() const;

  /// Raw accumulation used by the module operations; callers are expected
  /// to supply keys that already satisfy the level invariants.
  void accumulate(const Word& mu, const Word& nu, Complex coeff);

 private:
  explicit LevelElement(int level) : level_(level) {}

  int level_ = 1;
  TermMap terms_;
};

/// Block dimension bookkeeping: m_k(i) counts admissible words of length k
/// ending at symbol i, so level k is a direct sum of full matrix blocks of
/// sizes m_k(1), ..., m_k(n).
struct BrattelDims {
  // levels[k-1][i-1] = m_k(i) for k = 1..K
  std::vector<std::vector<long long>> levels;

  const std::vector<long long>& at_level(int k) const {
    return levels[static_cast<std::size_t>(k) - 1];
  }
  long long total_dimension(int k) const;  // sum of m_k(i)^2
};

BrattelDims bratteli_dims(const ZeroOneMatrix& A, int K);

/// Column sums n_j = sum_i A(i,j).
std::vector<int> n_vector(const ZeroOneMatrix& A);

/// Matrix unit calculus within a level: e_{mu,nu} e_{eta,zeta} =
/// [nu == eta] e_{mu,zeta}.  Throws LevelMismatch.
LevelElement level_multiply(const LevelElement& a, const LevelElement& b);

/// Unital embedding into the next level: e_{mu,nu} maps to the sum over
/// admissible j of e_{mu j, nu j}.
LevelElement embed_level(const ZeroOneMatrix& A, const LevelElement& a);

/// The endomorphism on level elements: e_{mu,nu} goes to
///   (n_{mu_1} n_{nu_1})^{-1/2} * sum over i,j of e_{i mu, j nu},
/// where inadmissible prepends drop out.  Raises the level by one.
LevelElement alpha_level(const ZeroOneMatrix& A, const LevelElement& a);

/// The pure product state with prefix x applied to a level-k element:
/// picks the coefficient of the diagonal matrix unit at (x_1..x_k).
/// Throws PrefixTooShort when |x| < k.
Complex product_state_eval(const ZeroOneMatrix& A, const Word& x,
                           const LevelElement& a);

/// Residual of the pullback identity  omega_x(alpha(a)) =
/// (1/n_{x_2}) omega_{shift x}(a); exactly zero by construction.
/// Throws PrefixTooShort when |x| < a.level + 2.
double state_pullback_check(const ZeroOneMatrix& A, const Word& x,
                            const LevelElement& a);

}  // namespace cklab
