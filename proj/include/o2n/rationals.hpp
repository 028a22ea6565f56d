#ifndef O2N_RATIONALS_HPP
#define O2N_RATIONALS_HPP

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace o2n {

using Int = mpz_class;
using Rat = mpq_class;

/// Parses "p/q" or "p" into a canonical rational. Throws on garbage or q = 0.
inline Rat parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rat& r) {
  return r.get_str();
}

inline int sign_of(const Rat& r) { return sgn(r); }

/// Prime factorization by trial division. Intended for the moderate integers
/// that arise from diagonal entries and trace forms.
inline std::map<Int, unsigned> factorize(Int n) {
  if (n == 0) throw std::invalid_argument("factorize(0)");
  std::map<Int, unsigned> out;
  n = abs(n);
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

/// Squarefree integer representing the square class of a nonzero rational.
/// Sign is carried; e.g. -9/2 -> -2 (since -9/2 ~ -18 ~ -2 * 9).
inline Int squarefree_part(const Rat& r) {
  if (r == 0) throw std::invalid_argument("square class of zero");
  Int n = r.get_num() * r.get_den();
  Int out = n < 0 ? -1 : 1;
  for (auto& [p, e] : factorize(n))
    if (e % 2 == 1) out *= p;
  return out;
}

/// Primes that can support a nontrivial local symbol for this rational:
/// 2 together with every odd prime dividing numerator or denominator.
inline std::vector<Int> support_primes(const Rat& r) {
  if (r == 0) throw std::invalid_argument("support of zero");
  std::vector<Int> ps{2};
  for (auto& [p, e] : factorize(r.get_num() * r.get_den()))
    if (p != 2) ps.push_back(p);
  return ps;
}

}  // namespace o2n

#endif
