#include "cklab/uniqueness_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace cklab {

namespace {

std::string format_complex(Complex z) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "(%.9g%+.9gi)", z.real(), z.imag());
  return buffer;
}

std::string word_label(const Word& w) {
  return w.is_empty() ? std::string("()") : w.to_string();
}

}  // namespace

CycleAssignments build_cycle_assignments(const ZeroOneMatrix& A) {
  const int n = A.size();
  for (int i = 1; i <= n; ++i) {
    if (A.out_degree(i) != 1) {
      throw CkError(ErrorCode::UnsupportedShape,
                    "state " + std::to_string(i) + " is not forced");
    }
  }
  CycleAssignments out;
  std::set<int> placed;
  for (int start = 1; start <= n; ++start) {
    if (placed.count(start)) continue;
    std::vector<int> cycle = forced_cycle_from(A, start);
    // forced_cycle_from starts the walk at `start`, which is the smallest
    // unplaced state, hence also the smallest state of its cycle
    for (int s : cycle) placed.insert(s);
    out.cycles.push_back(std::move(cycle));
  }

  std::vector<int> successor(n + 1, 0);
  for (int i = 1; i <= n; ++i) successor[i] = A.successors(i).front();
  std::set<int> leaders;
  for (const auto& cycle : out.cycles) leaders.insert(cycle.front());

  // Assignment 1 on C^n: S_i sends e_{succ(i)} to e_i.
  for (int i = 1; i <= n; ++i) {
    SparseOperator s(n);
    s.set(i - 1, successor[i] - 1, 1.0);
    out.rep1.push_back(std::move(s));
  }

  // Assignment 2 on C^n tensor C^4: the cycle leaders additionally carry
  // the diagonal unitary with spectrum {1, i, -1, -i}.
  const Complex phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int i = 1; i <= n; ++i) {
    SparseOperator s(4 * n);
    for (int t = 0; t < 4; ++t) {
      const Complex phase = leaders.count(i) ? phases[t] : Complex{1, 0};
      s.set((i - 1) * 4 + t, (successor[i] - 1) * 4 + t, phase);
    }
    out.rep2.push_back(std::move(s));
  }
  return out;
}

double assignment_relation_residual(const ZeroOneMatrix& A,
                                    const std::vector<SparseOperator>& gens) {
  const int n = A.size();
  const int dim = gens.front().dim();
  std::vector<SparseOperator> projections;
  for (int j = 0; j < n; ++j) {
    projections.push_back(gens[j] * gens[j].adjoint());
  }
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      SparseOperator rhs(dim);
      if (i == k) {
        for (int j = 0; j < n; ++j) {
          if (A.at(i + 1, j + 1) == 1) rhs = rhs + projections[j];
        }
      }
      const SparseOperator residual = gens[i].adjoint() * gens[k] - rhs;
      if (!residual.is_zero()) {
        worst = std::max(worst, norm_estimate(residual));
      }
    }
  }
  SparseOperator unit_residual(dim);
  for (const auto& p : projections) unit_residual = unit_residual + p;
  unit_residual = unit_residual - SparseOperator::identity(dim);
  if (!unit_residual.is_zero()) {
    worst = std::max(worst, norm_estimate(unit_residual));
  }
  return worst;
}

UniquenessReport norm_gap_witness(const ZeroOneMatrix& A) {
  UniquenessReport report;
  report.matrix_rows = A.rows();
  report.condition_I = check_condition_I(A);
  report.gap_tolerance = 1e-12;
  if (report.condition_I.holds) {
    throw CkError(ErrorCode::ConditionIHolds,
                  "condition (I) holds; no gap witness exists");
  }
  const CycleAssignments assignments = build_cycle_assignments(A);

  const std::vector<int>& cycle = assignments.cycles.front();
  auto word_in = [&](const std::vector<SparseOperator>& gens) {
    SparseOperator w = SparseOperator::identity(gens.front().dim());
    for (int s : cycle) w = w * gens[s - 1];
    return w;
  };

  GapExperimentRecord record;
  record.cycle = cycle;
  std::string label = "S";
  for (int s : cycle) label += "_" + std::to_string(s);
  record.element = label + " - (" + label + ")*";

  const SparseOperator w1 = word_in(assignments.rep1);
  const SparseOperator w2 = word_in(assignments.rep2);
  const SparseOperator gap1 = w1 - w1.adjoint();
  const SparseOperator gap2 = w2 - w2.adjoint();
  record.norm_rep1 = gap1.is_zero() ? 0.0 : norm_estimate(gap1);
  record.norm_rep2 = gap2.is_zero() ? 0.0 : norm_estimate(gap2);
  record.gap = std::abs(record.norm_rep2 - record.norm_rep1);
  record.relation_residual_rep1 =
      assignment_relation_residual(A, assignments.rep1);
  record.relation_residual_rep2 =
      assignment_relation_residual(A, assignments.rep2);

  report.gap_records.push_back(std::move(record));
  report.conclusion = "gap-witness";
  return report;
}

SlidingRep build_sliding_rep(const ZeroOneMatrix& A, int L) {
  if (L < 3) {
    throw CkError(ErrorCode::TruncationTooSmall,
                  "truncation length must be >= 3");
  }
  SlidingRep rep{A, L, admissible_words(A, L), {}};
  const int dim = rep.dim();
  auto index_of = [&](const Word& w) {
    auto it = std::lower_bound(rep.basis.begin(), rep.basis.end(), w);
    return static_cast<int>(it - rep.basis.begin());
  };
  // Words sharing their first L-1 symbols land on the same target, so the
  // prepend-and-drop-last action carries the weight 1/sqrt(out-degree of
  // the dropped position); that makes each S_i a partial isometry and each
  // S_j S_j^* exactly the first-symbol projection.
  for (int i = 1; i <= A.size(); ++i) {
    SparseOperator s(dim);
    for (int col = 0; col < dim; ++col) {
      const Word& mu = rep.basis[col];
      if (A.at(i, mu.first()) != 1) continue;
      const double weight =
          1.0 / std::sqrt(static_cast<double>(A.out_degree(mu.at(L - 1))));
      std::vector<int> symbols;
      symbols.reserve(L);
      symbols.push_back(i);
      symbols.insert(symbols.end(), mu.symbols().begin(),
                     mu.symbols().end() - 1);
      s.set(index_of(Word::admissible(A, std::move(symbols))), col, weight);
    }
    rep.gens.push_back(std::move(s));
  }
  return rep;
}

std::string GaugePolynomial::describe() const {
  std::string out;
  for (const auto& term : terms) {
    if (!out.empty()) out += " + ";
    out += format_complex(term.coeff);
    if (!term.mu.is_empty()) out += "*S" + word_label(term.mu);
    if (!term.nu.is_empty()) out += "*S" + word_label(term.nu) + "^*";
    if (term.mu.is_empty() && term.nu.is_empty()) out += "*1";
  }
  return out;
}

GaugePolynomial sample_gauge_polynomial(const ZeroOneMatrix& A, int max_len,
                                        int term_count, Rng& rng) {
  GaugePolynomial p;
  const int degree_cap = std::min(2, max_len);
  for (int t = 0; t < term_count; ++t) {
    GaugePolynomial::Term term;
    // choose lengths with |mu|-|nu| within the degree cap, not both empty
    int len_mu = 0;
    int len_nu = 0;
    do {
      len_mu = static_cast<int>(rng.below(max_len + 1));
      len_nu = static_cast<int>(rng.below(max_len + 1));
    } while ((len_mu == 0 && len_nu == 0) ||
             std::abs(len_mu - len_nu) > degree_cap);
    auto pick = [&](int len) {
      if (len == 0) return Word::empty();
      const auto words = admissible_words(A, len);
      return words[rng.below(words.size())];
    };
    term.mu = pick(len_mu);
    term.nu = pick(len_nu);
    term.coeff = rng.complex_gaussian();
    p.terms.push_back(std::move(term));
  }
  return p;
}

namespace {

SparseOperator word_operator_generic(const std::vector<SparseOperator>& gens,
                                     int dim, const Word& mu) {
  SparseOperator out = SparseOperator::identity(dim);
  for (auto it = mu.symbols().rbegin(); it != mu.symbols().rend(); ++it) {
    out = gens[*it - 1] * out;
  }
  return out;
}

SparseOperator realize(const GaugePolynomial& p,
                       const std::vector<SparseOperator>& gens, int dim) {
  SparseOperator out(dim);
  for (const auto& term : p.terms) {
    SparseOperator factor = word_operator_generic(gens, dim, term.mu) *
                            word_operator_generic(gens, dim, term.nu).adjoint();
    out = out + factor.scaled(term.coeff);
  }
  return out;
}

}  // namespace

SparseOperator realize_in_truncated(const GaugePolynomial& p,
                                    const TruncatedRep& rep) {
  return realize(p, rep.gens, rep.dim());
}

SparseOperator realize_in_sliding(const GaugePolynomial& p,
                                  const SlidingRep& rep) {
  return realize(p, rep.gens, rep.dim());
}

UniquenessReport agreement_experiment(const ZeroOneMatrix& A,
                                      const std::vector<int>& L_values,
                                      int samples, std::uint64_t seed) {
  UniquenessReport report;
  report.matrix_rows = A.rows();
  report.condition_I = check_condition_I(A);
  if (!report.condition_I.holds) {
    throw CkError(ErrorCode::ConditionIFails,
                  "agreement experiment requires condition (I)");
  }
  if (L_values.empty()) {
    throw CkError(ErrorCode::BadInput, "need at least one truncation length");
  }
  for (std::size_t t = 0; t < L_values.size(); ++t) {
    if (L_values[t] < 4 || (t > 0 && L_values[t] <= L_values[t - 1])) {
      throw CkError(ErrorCode::BadInput,
                    "truncation lengths must be ascending and >= 4");
    }
  }
  report.L_values = L_values;
  report.samples = samples;
  report.seed = seed;
  report.gap_tolerance = 0.05;

  std::vector<TruncatedRep> prepend_reps;
  std::vector<SlidingRep> sliding_reps;
  for (int L : L_values) {
    prepend_reps.push_back(build_truncated_rep(A, L));
    sliding_reps.push_back(build_sliding_rep(A, L));
  }

  // terms stay short so every model is evaluated past its defect zone
  const int max_len = std::clamp(L_values.front() - 3, 1, 3);
  Rng rng(seed);
  bool all_within = true;
  for (int index = 0; index < samples; ++index) {
    const GaugePolynomial p = sample_gauge_polynomial(A, max_len, 6, rng);
    AgreementSample sample;
    sample.sample_index = index;
    sample.element = p.describe();
    for (std::size_t t = 0; t < L_values.size(); ++t) {
      AgreementNormPair pair;
      pair.L = L_values[t];
      const SparseOperator b1 = realize_in_truncated(p, prepend_reps[t]);
      const SparseOperator b2 = realize_in_sliding(p, sliding_reps[t]);
      pair.norm_prepend = b1.is_zero() ? 0.0 : norm_estimate(b1);
      pair.norm_sliding = b2.is_zero() ? 0.0 : norm_estimate(b2);
      pair.gap = std::abs(pair.norm_prepend - pair.norm_sliding);
      const double scale =
          std::max({pair.norm_prepend, pair.norm_sliding, 1e-12});
      pair.relative_gap = pair.gap / scale;
      sample.by_length.push_back(pair);
    }
    if (sample.by_length.back().relative_gap > report.gap_tolerance) {
      all_within = false;
    }
    report.agreement_records.push_back(std::move(sample));
  }
  report.conclusion = all_within ? "agreement" : "inconclusive";
  return report;
}

double expectation_contractivity(const ZeroOneMatrix& A, int L, int samples,
                                 std::uint64_t seed) {
  if (L < 4) {
    throw CkError(ErrorCode::TruncationTooSmall,
                  "contractivity check needs L >= 4");
  }
  const TruncatedRep rep = build_truncated_rep(A, L);
  const int max_len = std::clamp(L - 3, 1, 3);
  Rng rng(seed);
  double worst = -1.0;
  for (int index = 0; index < samples; ++index) {
    const GaugePolynomial p = sample_gauge_polynomial(A, max_len, 6, rng);
    const SparseOperator b = realize_in_truncated(p, rep);
    const SparseOperator averaged = spectral_projection(b, 0, rep);
    const double norm_b = b.is_zero() ? 0.0 : norm_estimate(b);
    const double norm_avg = averaged.is_zero() ? 0.0 : norm_estimate(averaged);
    worst = std::max(worst, norm_avg - norm_b);
  }
  return worst;
}

}  // namespace cklab
