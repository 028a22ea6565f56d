#ifndef O2N_QFORM_HPP
#define O2N_QFORM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "o2n/rationals.hpp"

namespace o2n::qform {

using Mat = std::vector<std::vector<Rat>>;

/// Nondegenerate quadratic form over Q given by a symmetric rational Gram
/// matrix. Immutable after construction.
class RationalQuadraticForm {
 public:
  explicit RationalQuadraticForm(Mat gram);

  static RationalQuadraticForm from_diagonal(const std::vector<Rat>& diag);

  int dim() const { return static_cast<int>(gram_.size()); }
  const Mat& gram() const { return gram_; }

  /// Polar bilinear form B(v, w) = v^T G w.
  Rat bilinear(const std::vector<Rat>& v, const std::vector<Rat>& w) const;
  Rat value(const std::vector<Rat>& v) const { return bilinear(v, v); }

 private:
  Mat gram_;
};

/// Complete rational-equivalence classification data of a form.
///
/// Conventions (fixed throughout and documented in the README):
///   disc  = det modulo squares, as a signed squarefree integer (no sign
///           twist by (-1)^(n(n-1)/2)).
///   hasse = product over i<j of Hilbert symbols (d_i, d_j)_p for any
///           diagonalization <d_1,...,d_n>; the map stores only the primes
///           where the value is -1, all others are +1.
struct FormInvariants {
  int dim = 0;
  Int disc = 1;
  std::pair<int, int> signature{0, 0};  // (p_plus, p_minus)
  std::map<Int, int> hasse;             // prime -> -1 entries only
  int real_hasse = 1;

  bool operator==(const FormInvariants&) const = default;

  /// Throws std::invalid_argument when the structural constraints fail:
  /// p + m = dim, sign(disc) = (-1)^m, disc squarefree, product formula.
  void validate() const;
};

/// Diagonal entries d_1..d_n with the form equivalent to <d_1,...,d_n>.
/// Deterministic: lowest-index pivot; when no nonzero diagonal pivot exists
/// in the remaining block, the lowest-index row is combined with the lowest
/// later row that produces one.
std::vector<Rat> diagonalize(const RationalQuadraticForm& form);

/// Hilbert symbol (a, b)_p over Q_p: +1 iff z^2 = a x^2 + b y^2 has a
/// nontrivial solution. a, b nonzero rationals, p prime.
int hilbert_symbol(const Rat& a, const Rat& b, const Int& p);

/// Hilbert symbol at the real place: -1 iff both arguments are negative.
int hilbert_symbol_real(const Rat& a, const Rat& b);

FormInvariants invariants(const RationalQuadraticForm& form);
FormInvariants invariants_of_diagonal(const std::vector<Rat>& diag);

/// Decides whether a rational form with exactly these invariants exists.
/// Throws on structurally inconsistent input (distinct from returning false).
bool exists_form(const FormInvariants& candidate);

/// True iff the forms are equivalent over Q (all invariants agree).
bool equivalent(const RationalQuadraticForm& a, const RationalQuadraticForm& b);

enum class ComplementFailure : std::uint8_t {
  DimensionUnderflow,
  SignatureUnderflow,
  DiscriminantMismatch,
  HasseObstruction,
  LocalExistenceFailure,
};

const char* to_string(ComplementFailure f);

struct ComplementReport {
  /// Set iff the complement class exists; its invariants.
  std::optional<FormInvariants> inv;
  std::optional<ComplementFailure> failure;
  /// Prime where a Hasse/local obstruction was detected, when applicable.
  std::optional<Int> obstruction_prime;

  bool realizable() const { return inv.has_value(); }
};

/// The unique invariants any complement q_c with q ~ q' + q_c must have,
/// via dim/signature subtraction, disc division in the square-class group,
/// and the direct-sum Hasse rule
///   hasse(a + b)_p = hasse(a)_p * hasse(b)_p * (disc a, disc b)_p.
/// Reports failure naming the violated condition when no complement exists.
ComplementReport complement_invariants(const FormInvariants& q,
                                       const FormInvariants& qprime);

struct ComplementWitness {
  std::vector<std::vector<Int>> subspace_basis;  // rows, in q's coordinates
  Mat complement_gram;
};

/// Searches integer vectors of sup-norm height <= height spanning a
/// q-orthogonal copy of qprime (exact Gram match) inside q. Returns the
/// induced complement Gram when found; absence within the height bound (or
/// exceeding the node budget) is inconclusive and reported as nullopt.
std::optional<ComplementWitness> find_complement_bruteforce(
    const RationalQuadraticForm& q, const RationalQuadraticForm& qprime,
    int height, std::uint64_t node_budget = 50'000'000);

}  // namespace o2n::qform

#endif
