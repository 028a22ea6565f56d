#ifndef O2N_NUMFIELD_HPP
#define O2N_NUMFIELD_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "o2n/qform.hpp"
#include "o2n/rationals.hpp"

namespace o2n::numfield {

/// Element of a number field in the power basis, coefficients c0..c_{d-1}.
struct FieldElement {
  std::vector<Rat> coeffs;

  bool is_zero() const {
    for (const Rat& c : coeffs)
      if (c != 0) return false;
    return true;
  }
  bool operator==(const FieldElement&) const = default;
};

/// Thrown when a defining polynomial is reducible or not squarefree.
/// `factor` is a nontrivial monic factor witnessing the rejection.
class FieldConstructionError : public std::invalid_argument {
 public:
  FieldConstructionError(const std::string& msg, std::vector<Int> factor)
      : std::invalid_argument(msg), factor(std::move(factor)) {}
  std::vector<Int> factor;
};

/// Number field Q[x]/(f) for a monic squarefree irreducible integer
/// polynomial f of degree 1..8. Power sums are exact via Newton's
/// identities; real roots are isolated by Sturm bisection when the field
/// is totally real. Immutable after construction.
class NumberField {
 public:
  /// coeffs = c0..cd with cd = 1. Throws FieldConstructionError on
  /// reducible or non-squarefree input, std::invalid_argument otherwise.
  static NumberField make(const std::vector<Int>& coeffs);

  int degree() const { return degree_; }
  const std::vector<Int>& min_poly() const { return poly_; }
  bool is_totally_real() const { return totally_real_; }

  /// Power sum of the roots, k up to 3*degree.
  const Rat& power_sum(int k) const;

  /// Isolating intervals of the real roots, ordered increasingly.
  /// Empty unless totally real.
  const std::vector<std::pair<Rat, Rat>>& embedding_intervals() const {
    return intervals_;
  }

  FieldElement element(std::vector<Rat> coeffs) const;
  FieldElement one() const;
  FieldElement generator() const;  // the class of x

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement negate(const FieldElement& a) const;

  /// Tr_{F/Q} of the element, exactly: dot of coefficients against power sums.
  Rat trace(const FieldElement& a) const;

  /// Tr_{F/Q}(a * x^m) without forming the product, m + deg a <= 3d.
  Rat trace_times_power(const FieldElement& a, int m) const;

  /// Sign of the image of a nonzero element under the idx-th real embedding
  /// (embeddings ordered by increasing root). Field must be totally real.
  int sign_at_embedding(const FieldElement& a, int idx) const;

  std::string poly_string() const;

 private:
  NumberField() = default;
  int degree_ = 0;
  std::vector<Int> poly_;       // c0..cd
  std::vector<Rat> power_sums_; // p_0..p_{3d}
  bool totally_real_ = false;
  std::vector<std::pair<Rat, Rat>> intervals_;
};

/// CM extension E = F(sqrt(delta)) with F totally real and delta totally
/// negative. Construction validates the sign condition at every embedding.
class CMExtension {
 public:
  CMExtension(NumberField base, FieldElement delta);
  const NumberField& base() const { return base_; }
  const FieldElement& delta() const { return delta_; }

 private:
  NumberField base_;
  FieldElement delta_;
};

/// Gram matrix of Tr_{F/Q}(<a_1,...,a_m>) on the basis { x^i e_j }:
/// block-diagonal with blocks B^(k)_{i,i'} = Tr(a_k x^{i+i'}). Dimension d*m.
qform::RationalQuadraticForm trace_form_quadratic(
    const NumberField& field, const std::vector<FieldElement>& diagonal);

/// Per-embedding signatures of the diagonal form, in embedding order.
std::vector<std::pair<int, int>> signature_profile(
    const NumberField& field, const std::vector<FieldElement>& diagonal);

/// Rational quadratic form u -> Tr_{E/Q}(a * u * conj(u)) of a diagonal
/// Hermitian form over E, on the basis { x^i, x^i sqrt(delta) } per
/// coordinate. Dimension 2*d*m.
qform::RationalQuadraticForm hermitian_transfer(
    const CMExtension& ext, const std::vector<FieldElement>& diagonal);

std::string poly_to_string(const std::vector<Int>& coeffs);

}  // namespace o2n::numfield

#endif
