#ifndef O2N_ROOT_DATUM_HPP
#define O2N_ROOT_DATUM_HPP

#include <map>
#include <string>
#include <vector>

#include "o2n/rationals.hpp"

namespace o2n::lie {

/// Weight in fundamental-weight coordinates (one integer per simple root).
struct Weight {
  std::vector<long> coords;
  bool operator==(const Weight&) const = default;
  auto operator<=>(const Weight&) const = default;
  bool is_zero() const {
    for (long c : coords)
      if (c != 0) return false;
    return true;
  }
};

/// Cocharacter in simple-coroot coordinates. The pairing against weights in
/// fundamental-weight coordinates is the plain integer dot product.
struct Cocharacter {
  std::vector<long> coords;
};

/// Exact root-system combinatorics for one simple type. Simple roots are
/// stored in fundamental-weight coordinates, i.e. as the rows of the Cartan
/// matrix A_ij = 2(a_i, a_j)/(a_j, a_j). Immutable after construction.
class RootDatum {
 public:
  static RootDatum build(char type_letter, int rank);

  char type_letter() const { return type_; }
  int rank() const { return rank_; }
  std::string label() const { return std::string(1, type_) + std::to_string(rank_); }

  const std::vector<std::vector<long>>& cartan_matrix() const { return cartan_; }
  const std::vector<std::vector<long>>& positive_roots() const { return positive_roots_; }
  /// rho = half-sum of positive roots = (1,...,1) in fundamental coordinates.
  const std::vector<long>& rho() const { return rho_; }
  /// Weyl-invariant inner product on weight space, long roots of norm 2.
  const std::vector<std::vector<Rat>>& symmetric_pairing() const { return pairing_; }
  /// Inverse Cartan matrix (fundamental weights in the root basis).
  const std::vector<std::vector<Rat>>& cartan_inverse() const { return cartan_inv_; }
  /// Functional of the sum of all positive coroots, as integers on
  /// fundamental coordinates.
  const std::vector<long>& sum_positive_coroots() const { return sum_pos_coroots_; }

  Rat pair(const std::vector<Rat>& a, const std::vector<Rat>& b) const;
  Rat pair_weights(const std::vector<long>& a, const std::vector<long>& b) const;

  /// Simple reflection s_i in fundamental coordinates.
  Weight reflect(const Weight& w, int i) const;
  /// Representative of the Weyl orbit in the dominant chamber.
  Weight dominant_representative(Weight w) const;

 private:
  char type_ = 0;
  int rank_ = 0;
  std::vector<std::vector<long>> cartan_;
  std::vector<std::vector<long>> positive_roots_;
  std::vector<long> rho_;
  std::vector<std::vector<Rat>> pairing_;
  std::vector<std::vector<Rat>> cartan_inv_;
  std::vector<long> sum_pos_coroots_;
};

/// Complete weight multiset of the irreducible representation with the given
/// highest weight, computed by the Freudenthal recursion.
struct WeightSystem {
  char type_letter = 0;
  int rank = 0;
  Weight highest;
  std::map<std::vector<long>, long> entries;  // weight -> multiplicity
  Int dim = 0;
};

RootDatum build_root_datum(char type_letter, int rank);

/// Weyl dimension formula; throws on non-dominant input.
Int weyl_dim(const RootDatum& datum, const Weight& highest);

/// Throws when the dimension exceeds dim_cap, identifying the cap.
WeightSystem weight_system(const RootDatum& datum, const Weight& highest,
                           long dim_cap);

/// All nonzero dominant weights with coordinates in [0, coeff_bound] and
/// Weyl dimension <= dim_cap, in ascending lexicographic order.
std::vector<Weight> dominant_weights_in_box(const RootDatum& datum,
                                            int coeff_bound, long dim_cap);

/// Highest weight of the dual representation, -w0(highest).
Weight dual_highest_weight(const RootDatum& datum, const Weight& highest);

};  // namespace o2n::lie

#endif
