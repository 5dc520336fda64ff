#pragma once

#include <complex>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "cklab/errors.hpp"
#include "cklab/rng.hpp"

namespace cklab {

using Complex = std::complex<double>;

/// Dense complex matrix, small enough that nothing fancier is needed here.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Complex> data;  // row-major

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), data(r * c, Complex{0, 0}) {}

  Complex& at(int r, int c) { return data[r * cols + c]; }
  Complex at(int r, int c) const { return data[r * cols + c]; }

  DenseMatrix adjoint() const;
  DenseMatrix operator*(const DenseMatrix& other) const;
  DenseMatrix operator-(const DenseMatrix& other) const;
  DenseMatrix scaled(Complex factor) const;
  double frobenius() const;
  double max_abs() const;
  bool is_zero_size() const { return rows == 0 || cols == 0; }
};

/// The direct sum of full matrix blocks M_{d_1} + ... + M_{d_r}.  Its
/// spectrum is the discrete set of block indices {1..r}.
struct FDAlgebra {
  std::vector<int> block_sizes;  // d_t >= 1, r >= 1

  int block_count() const { return static_cast<int>(block_sizes.size()); }
};

/// Element of the algebra: one square matrix per block.
struct FDAlgebraElement {
  std::vector<DenseMatrix> blocks;
};

/// Partial injection on block indices, 1-based.
struct BlockInjection {
  std::map<int, int> map;  // t -> h(t)

  std::set<int> domain() const;
  std::set<int> range() const;
  std::optional<int> apply(int t) const;
};

/// Partial map on the (discrete) spectrum of the base algebra, as recovered
/// from a bimodule via its inner-product ideals.
struct PartialMapOnSpectrum {
  std::set<int> domain_blocks;
  std::set<int> range_blocks;
  std::map<int, int> map;
};

/// Multiplicity-one Hilbert bimodule over an FDAlgebra induced by a partial
/// injection h of blocks: an element carries, for each domain block t, a
/// d_{h(t)} x d_t array.  The right inner product <a,b>_R = a* b lands in
/// the domain blocks, the left one L<a,b> = a b* in the range blocks, and
/// a <b,c>_R = L<a,b> c = a b* c holds identically.
class FDHilbertBimodule {
 public:
  /// Builds the bimodule; throws NotInjective / BlockOutOfRange.
  static FDHilbertBimodule build(FDAlgebra base, const BlockInjection& h);

  const FDAlgebra& base() const { return base_; }
  const BlockInjection& injection() const { return h_; }

  /// Shape of the array carried at domain block t: (d_{h(t)}, d_t).
  std::pair<int, int> element_shape(int t) const;

  /// A bimodule element: arrays keyed by domain block.
  using Element = std::map<int, DenseMatrix>;

  Element zero_element() const;
  Element random_element(Rng& rng) const;

  /// Elementary element supported at a single domain block with a single
  /// unit entry; used to probe where induction sends each block.
  Element elementary(int t) const;

  FDAlgebraElement inner_right(const Element& a, const Element& b) const;
  FDAlgebraElement inner_left(const Element& a, const Element& b) const;

  Element left_action(const FDAlgebraElement& x, const Element& m) const;
  Element right_action(const Element& m, const FDAlgebraElement& x) const;

  double element_norm(const Element& m) const;

  /// Test hook: returns a copy whose left action is scaled, which breaks
  /// the imprimitivity identity for scale != 1.
  FDHilbertBimodule corrupted_with_left_scale(double scale) const;

 private:
  FDAlgebra base_;
  BlockInjection h_;
  double left_scale_ = 1.0;
};

FDHilbertBimodule build_bimodule(const FDAlgebra& base,
                                 const BlockInjection& h);

/// Max over `trials` random triples of || a <b,c>_R - L<a,b> c ||.
double imprimitivity_check(const FDHilbertBimodule& M, int trials,
                           std::uint64_t seed = 42);

struct IdealSupports {
  std::set<int> right_blocks;  // support of span B1* B1
  std::set<int> left_blocks;   // support of span B1 B1*
  bool full_on_both = false;   // equivalence-bimodule flag
};

IdealSupports ideal_supports(const FDHilbertBimodule& M);

/// The dual partial map on the block spectrum, recovered from the module.
PartialMapOnSpectrum dual_partial_map(const FDHilbertBimodule& M);

struct FinitePeriodicWitness {
  int block = 0;
  int period = 0;
};

struct FreenessVerdict {
  bool free = false;
  std::vector<FinitePeriodicWitness> witnesses;
};

/// On a finite discrete spectrum "empty interior" means "empty": the map is
/// topologically free iff no block is periodic with period <= max_period.
FreenessVerdict topological_freeness_finite(const PartialMapOnSpectrum& h,
                                            int max_period);

}  // namespace cklab
