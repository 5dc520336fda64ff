#include "cklab/af_core.hpp"

#include <cmath>

namespace cklab {

namespace {

constexpr double kPruneEps = 0.0;  // drop exact zeros only

Word append_symbol(const ZeroOneMatrix& A, const Word& w, int j) {
  auto symbols = w.symbols();
  symbols.push_back(j);
  return Word::admissible(A, std::move(symbols));
}

Word prepend_symbol(const ZeroOneMatrix& A, const Word& w, int i) {
  std::vector<int> symbols;
  symbols.reserve(w.symbols().size() + 1);
  symbols.push_back(i);
  symbols.insert(symbols.end(), w.symbols().begin(), w.symbols().end());
  return Word::admissible(A, std::move(symbols));
}

}  // namespace

LevelElement LevelElement::zero(int level) { return LevelElement(level); }

LevelElement LevelElement::generator(const ZeroOneMatrix& A, const Word& mu,
                                     const Word& nu, Complex coeff) {
  if (mu.is_empty() || nu.is_empty()) {
    throw CkError(ErrorCode::EmptyWord, "matrix unit words must be nonempty");
  }
  if (mu.length() != nu.length()) {
    throw CkError(ErrorCode::LevelMismatch,
                  "matrix unit words must have equal length");
  }
  if (mu.last() != nu.last()) {
    throw CkError(ErrorCode::NotAdmissible,
                  "matrix unit words must share the last symbol");
  }
  if (!Word::is_admissible(A, mu.symbols()) ||
      !Word::is_admissible(A, nu.symbols())) {
    throw CkError(ErrorCode::NotAdmissible, "matrix unit word inadmissible");
  }
  LevelElement out(mu.length());
  out.accumulate(mu, nu, coeff);
  return out;
}

LevelElement LevelElement::identity(const ZeroOneMatrix& A, int level) {
  LevelElement out(level);
  for (const Word& w : admissible_words(A, level)) out.accumulate(w, w, 1.0);
  return out;
}

Complex LevelElement::coefficient(const Word& mu, const Word& nu) const {
  auto found = terms_.find({mu, nu});
  return found == terms_.end() ? Complex{0.0, 0.0} : found->second;
}

LevelElement LevelElement::adjoint() const {
  LevelElement out(level_);
  for (const auto& [key, coeff] : terms_) {
    out.accumulate(key.second, key.first, std::conj(coeff));
  }
  return out;
}

LevelElement& LevelElement::operator+=(const LevelElement& other) {
  if (other.level_ != level_) {
    throw CkError(ErrorCode::LevelMismatch, "level mismatch in sum");
  }
  for (const auto& [key, coeff] : other.terms_) {
    accumulate(key.first, key.second, coeff);
  }
  return *this;
}

LevelElement LevelElement::operator+(const LevelElement& other) const {
  LevelElement out = *this;
  out += other;
  return out;
}

LevelElement LevelElement::operator-(const LevelElement& other) const {
  return *this + other * Complex{-1.0, 0.0};
}

LevelElement LevelElement::operator*(Complex scalar) const {
  LevelElement out(level_);
  for (const auto& [key, coeff] : terms_) {
    out.accumulate(key.first, key.second, coeff * scalar);
  }
  return out;
}

double LevelElement::max_abs_coeff() const {
  double best = 0.0;
  for (const auto& [key, coeff] : terms_) {
    best = std::max(best, std::abs(coeff));
  }
  return best;
}

void LevelElement::accumulate(const Word& mu, const Word& nu, Complex coeff) {
  Key key{mu, nu};
  auto found = terms_.find(key);
  if (found == terms_.end()) {
    if (std::abs(coeff) > kPruneEps) terms_.emplace(std::move(key), coeff);
    return;
  }
  found->second += coeff;
  if (std::abs(found->second) <= kPruneEps) terms_.erase(found);
}

long long BrattelDims::total_dimension(int k) const {
  long long total = 0;
  for (long long m : at_level(k)) total += m * m;
  return total;
}

BrattelDims bratteli_dims(const ZeroOneMatrix& A, int K) {
  if (K < 1) {
    throw CkError(ErrorCode::LengthZero, "level count must be >= 1");
  }
  const int n = A.size();
  BrattelDims dims;
  dims.levels.push_back(std::vector<long long>(n, 1));
  for (int k = 1; k < K; ++k) {
    std::vector<long long> next(n, 0);
    for (int j = 1; j <= n; ++j) {
      for (int i = 1; i <= n; ++i) {
        next[j - 1] += dims.levels.back()[i - 1] * A.at(i, j);
      }
    }
    dims.levels.push_back(std::move(next));
  }
  return dims;
}

std::vector<int> n_vector(const ZeroOneMatrix& A) { return A.column_sums(); }

LevelElement level_multiply(const LevelElement& a, const LevelElement& b) {
  if (a.level() != b.level()) {
    throw CkError(ErrorCode::LevelMismatch, "level mismatch in product");
  }
  // group b's terms by left word for the delta_{nu,eta} contraction
  std::map<Word, std::vector<std::pair<Word, Complex>>> by_left;
  for (const auto& [key, coeff] : b.terms()) {
    by_left[key.first].emplace_back(key.second, coeff);
  }
  LevelElement out = LevelElement::zero(a.level());
  for (const auto& [key, coeff] : a.terms()) {
    auto found = by_left.find(key.second);
    if (found == by_left.end()) continue;
    for (const auto& [zeta, bcoeff] : found->second) {
      out.accumulate(key.first, zeta, coeff * bcoeff);
    }
  }
  return out;
}

LevelElement embed_level(const ZeroOneMatrix& A, const LevelElement& a) {
  LevelElement out = LevelElement::zero(a.level() + 1);
  for (const auto& [key, coeff] : a.terms()) {
    const int last = key.first.last();
    for (int j : A.successors(last)) {
      out.accumulate(append_symbol(A, key.first, j),
                     append_symbol(A, key.second, j), coeff);
    }
  }
  return out;
}

LevelElement alpha_level(const ZeroOneMatrix& A, const LevelElement& a) {
  const std::vector<int> n = n_vector(A);
  LevelElement out = LevelElement::zero(a.level() + 1);
  for (const auto& [key, coeff] : a.terms()) {
    const int mu1 = key.first.first();
    const int nu1 = key.second.first();
    const double scale =
        1.0 / std::sqrt(static_cast<double>(n[mu1 - 1]) * n[nu1 - 1]);
    for (int i = 1; i <= A.size(); ++i) {
      if (A.at(i, mu1) != 1) continue;
      for (int j = 1; j <= A.size(); ++j) {
        if (A.at(j, nu1) != 1) continue;
        out.accumulate(prepend_symbol(A, key.first, i),
                       prepend_symbol(A, key.second, j), coeff * scale);
      }
    }
  }
  return out;
}

Complex product_state_eval(const ZeroOneMatrix& A, const Word& x,
                           const LevelElement& a) {
  if (x.length() < a.level()) {
    throw CkError(ErrorCode::PrefixTooShort,
                  "state prefix shorter than element level");
  }
  std::vector<int> head(x.symbols().begin(),
                        x.symbols().begin() + a.level());
  const Word diag = Word::admissible(A, std::move(head));
  return a.coefficient(diag, diag);
}

double state_pullback_check(const ZeroOneMatrix& A, const Word& x,
                            const LevelElement& a) {
  if (x.length() < a.level() + 2) {
    throw CkError(ErrorCode::PrefixTooShort,
                  "pullback check needs |x| >= level + 2");
  }
  const std::vector<int> n = n_vector(A);
  const Complex lhs = product_state_eval(A, x, alpha_level(A, a));
  const Word shifted = x.shifted();
  const Complex rhs =
      product_state_eval(A, shifted, a) / static_cast<double>(n[x.at(2) - 1]);
  return std::abs(lhs - rhs);
}

}  // namespace cklab
