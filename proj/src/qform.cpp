#include "o2n/qform.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace o2n::qform {

namespace {

// Symmetric congruence diagonalization on a raw matrix. Throws when the
// input is degenerate. The pivot rule matches the documented contract.
std::vector<Rat> diagonalize_raw(Mat m) {
  const int n = static_cast<int>(m.size());
  auto add_row_col = [&](int dst, int src, const Rat& c) {
    for (int j = 0; j < n; ++j) m[dst][j] += c * m[src][j];
    for (int i = 0; i < n; ++i) m[i][dst] += c * m[i][src];
  };
  auto swap_row_col = [&](int a, int b) {
    std::swap(m[a], m[b]);
    for (int i = 0; i < n; ++i) std::swap(m[i][a], m[i][b]);
  };

  std::vector<Rat> diag;
  diag.reserve(n);
  for (int k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      int pivot = -1;
      for (int i = k; i < n; ++i)
        if (m[i][i] != 0) {
          pivot = i;
          break;
        }
      if (pivot >= 0) {
        if (pivot != k) swap_row_col(k, pivot);
      } else {
        // Remaining block has zero diagonal; create a pivot.
        bool made = false;
        for (int i = k; i < n && !made; ++i)
          for (int j = i + 1; j < n && !made; ++j)
            if (m[i][j] != 0) {
              add_row_col(i, j, Rat(1));  // m[i][i] becomes 2*m[i][j]
              if (i != k) swap_row_col(k, i);
              made = true;
            }
        if (!made) throw std::invalid_argument("degenerate quadratic form");
      }
    }
    const Rat pivot = m[k][k];
    for (int j = k + 1; j < n; ++j) {
      if (m[k][j] == 0) continue;
      add_row_col(j, k, -m[k][j] / pivot);
    }
    diag.push_back(pivot);
  }
  for (const Rat& d : diag)
    if (d == 0) throw std::invalid_argument("degenerate quadratic form");
  return diag;
}

// p-adic valuation and unit residue of a nonzero rational, the residue taken
// mod p (odd p) or mod 8 (p = 2).
std::pair<long, Int> val_and_unit(const Rat& a, const Int& p) {
  Int num = a.get_num(), den = a.get_den();
  long v = 0;
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  Int mod = (p == 2) ? Int(8) : p;
  Int nu = ((num % mod) + mod) % mod;
  Int du = ((den % mod) + mod) % mod;
  // den unit inverse mod p (or mod 8, where odd residues are self-paired
  // with their inverse only for 1,7; compute honestly).
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), du.get_mpz_t(), mod.get_mpz_t()) == 0)
    throw std::logic_error("unit not invertible");
  return {v, (nu * inv) % mod};
}

int legendre(const Int& u, const Int& p) {
  return mpz_legendre(u.get_mpz_t(), p.get_mpz_t());
}

// True iff the nonzero squarefree integer d is a square in Q_p.
bool is_local_square(const Int& d, const Int& p) {
  if (d == 1) return true;
  if (p == 2) {
    if (d % 2 == 0) return false;  // odd valuation, d squarefree
    Int r = ((d % 8) + 8) % 8;
    return r == 1;
  }
  if (d % p == 0) return false;  // odd valuation
  return legendre(d, p) == 1;
}

std::set<Int> prime_support(const std::vector<Rat>& diag) {
  std::set<Int> ps{Int(2)};
  for (const Rat& d : diag)
    for (const Int& p : support_primes(d)) ps.insert(p);
  return ps;
}

}  // namespace

RationalQuadraticForm::RationalQuadraticForm(Mat gram) : gram_(std::move(gram)) {
  const size_t n = gram_.size();
  if (n == 0) return;  // zero-dimensional form is allowed (trivial)
  for (const auto& row : gram_)
    if (row.size() != n)
      throw std::invalid_argument("Gram matrix must be square");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (gram_[i][j] != gram_[j][i])
        throw std::invalid_argument("Gram matrix must be symmetric");
  diagonalize_raw(gram_);  // rejects degenerate input
}

RationalQuadraticForm RationalQuadraticForm::from_diagonal(
    const std::vector<Rat>& diag) {
  Mat m(diag.size(), std::vector<Rat>(diag.size(), Rat(0)));
  for (size_t i = 0; i < diag.size(); ++i) m[i][i] = diag[i];
  return RationalQuadraticForm(std::move(m));
}

Rat RationalQuadraticForm::bilinear(const std::vector<Rat>& v,
                                    const std::vector<Rat>& w) const {
  if (v.size() != gram_.size() || w.size() != gram_.size())
    throw std::invalid_argument("vector length mismatch");
  Rat acc(0);
  for (size_t i = 0; i < gram_.size(); ++i) {
    if (v[i] == 0) continue;
    for (size_t j = 0; j < gram_.size(); ++j)
      if (w[j] != 0) acc += v[i] * gram_[i][j] * w[j];
  }
  return acc;
}

std::vector<Rat> diagonalize(const RationalQuadraticForm& form) {
  return diagonalize_raw(form.gram());
}

int hilbert_symbol(const Rat& a, const Rat& b, const Int& p) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert symbol of zero");
  if (p < 2) throw std::invalid_argument("place must be a prime");
  auto [alpha, u] = val_and_unit(a, p);
  auto [beta, v] = val_and_unit(b, p);
  if (p == 2) {
    // Serre's formula: (-1)^( eps(u)eps(v) + alpha*omega(v) + beta*omega(u) )
    auto eps = [](const Int& x) { return ((x - 1) / 2) % 2 != 0; };
    auto omega = [](const Int& x) { return ((x * x - 1) / 8) % 2 != 0; };
    bool minus = (eps(u) && eps(v)) ^ (alpha % 2 != 0 && omega(v)) ^
                 (beta % 2 != 0 && omega(u));
    return minus ? -1 : 1;
  }
  int s = 1;
  if ((alpha % 2 != 0) && (beta % 2 != 0) && legendre(Int(-1), p) == -1)
    s = -s;
  if (beta % 2 != 0 && legendre(u, p) == -1) s = -s;
  if (alpha % 2 != 0 && legendre(v, p) == -1) s = -s;
  return s;
}

int hilbert_symbol_real(const Rat& a, const Rat& b) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert symbol of zero");
  return (a < 0 && b < 0) ? -1 : 1;
}

void FormInvariants::validate() const {
  if (dim < 0) throw std::invalid_argument("negative dimension");
  if (signature.first < 0 || signature.second < 0 ||
      signature.first + signature.second != dim)
    throw std::invalid_argument("signature does not sum to dimension");
  if (disc == 0) throw std::invalid_argument("zero discriminant");
  for (auto& [p, e] : factorize(disc))
    if (e > 1) throw std::invalid_argument("discriminant not squarefree");
  if ((signature.second % 2 == 0) != (disc > 0))
    throw std::invalid_argument("discriminant sign inconsistent with signature");
  if (real_hasse != 1 && real_hasse != -1)
    throw std::invalid_argument("real Hasse value must be +-1");
  int prod = real_hasse;
  for (auto& [p, v] : hasse) {
    if (v != -1)
      throw std::invalid_argument("hasse map stores only -1 entries");
    if (p < 2 || !factorize(p).contains(p))
      throw std::invalid_argument("hasse key is not prime");
    prod *= v;
  }
  if (prod != 1)
    throw std::invalid_argument("Hasse product formula violated");
  if (dim == 0 && (disc != 1 || !hasse.empty() || real_hasse != 1))
    throw std::invalid_argument("nontrivial invariants in dimension 0");
}

FormInvariants invariants_of_diagonal(const std::vector<Rat>& diag) {
  FormInvariants inv;
  inv.dim = static_cast<int>(diag.size());
  if (inv.dim == 0) return inv;
  Rat prod(1);
  for (const Rat& d : diag) {
    if (d == 0) throw std::invalid_argument("degenerate diagonal");
    prod *= d;
    if (d > 0)
      ++inv.signature.first;
    else
      ++inv.signature.second;
  }
  inv.disc = squarefree_part(prod);
  for (const Int& p : prime_support(diag)) {
    int s = 1;
    for (size_t i = 0; i < diag.size(); ++i)
      for (size_t j = i + 1; j < diag.size(); ++j)
        s *= hilbert_symbol(diag[i], diag[j], p);
    if (s == -1) inv.hasse[p] = -1;
  }
  const int m = inv.signature.second;
  inv.real_hasse = (m * (m - 1) / 2) % 2 == 0 ? 1 : -1;
  inv.validate();
  return inv;
}

FormInvariants invariants(const RationalQuadraticForm& form) {
  return invariants_of_diagonal(diagonalize(form));
}

bool exists_form(const FormInvariants& c) {
  c.validate();
  const int m = c.signature.second;
  if (c.real_hasse != ((m * (m - 1) / 2) % 2 == 0 ? 1 : -1)) return false;
  if (c.dim == 0) return true;  // validate() already forced trivial data
  if (c.dim == 1) return c.hasse.empty();
  if (c.dim == 2) {
    // <a,b> with -disc a local square is hyperbolic at p, forcing c_p = +1.
    for (auto& [p, v] : c.hasse)
      if (is_local_square(-c.disc, p)) return false;
  }
  return true;
}

bool equivalent(const RationalQuadraticForm& a,
                const RationalQuadraticForm& b) {
  return invariants(a) == invariants(b);
}

const char* to_string(ComplementFailure f) {
  switch (f) {
    case ComplementFailure::DimensionUnderflow: return "dimension_underflow";
    case ComplementFailure::SignatureUnderflow: return "signature_underflow";
    case ComplementFailure::DiscriminantMismatch:
      return "discriminant_mismatch";
    case ComplementFailure::HasseObstruction: return "hasse_obstruction_at_p";
    case ComplementFailure::LocalExistenceFailure:
      return "local_existence_failure";
  }
  return "?";
}

ComplementReport complement_invariants(const FormInvariants& q,
                                       const FormInvariants& qp) {
  q.validate();
  qp.validate();
  ComplementReport rep;
  auto fail = [&rep](ComplementFailure f,
                     std::optional<Int> p = std::nullopt) -> ComplementReport& {
    rep.failure = f;
    rep.obstruction_prime = std::move(p);
    return rep;
  };

  if (qp.dim > q.dim) {
    fail(ComplementFailure::DimensionUnderflow);
    return rep;
  }
  const int plus = q.signature.first - qp.signature.first;
  const int minus = q.signature.second - qp.signature.second;
  if (plus < 0 || minus < 0) {
    fail(ComplementFailure::SignatureUnderflow);
    return rep;
  }

  FormInvariants c;
  c.dim = q.dim - qp.dim;
  c.signature = {plus, minus};
  c.disc = squarefree_part(Rat(q.disc) * Rat(qp.disc));
  c.real_hasse = (minus * (minus - 1) / 2) % 2 == 0 ? 1 : -1;

  std::set<Int> ps{Int(2)};
  for (auto& [p, e] : factorize(q.disc)) ps.insert(p);
  for (auto& [p, e] : factorize(qp.disc)) ps.insert(p);
  for (auto& [p, v] : q.hasse) ps.insert(p);
  for (auto& [p, v] : qp.hasse) ps.insert(p);
  for (const Int& p : ps) {
    int hq = q.hasse.contains(p) ? -1 : 1;
    int hqp = qp.hasse.contains(p) ? -1 : 1;
    int s = hq * hqp * hilbert_symbol(Rat(qp.disc), Rat(c.disc), p);
    if (s == -1) c.hasse[p] = -1;
  }

  if (c.dim == 0) {
    if (c.disc != 1) {
      fail(ComplementFailure::DiscriminantMismatch);
      return rep;
    }
    if (!c.hasse.empty()) {
      fail(ComplementFailure::HasseObstruction, c.hasse.begin()->first);
      return rep;
    }
  } else if (c.dim == 1) {
    if (!c.hasse.empty()) {
      fail(ComplementFailure::HasseObstruction, c.hasse.begin()->first);
      return rep;
    }
    // disc of a 1-dim form is free; no further condition.
  } else if (c.dim == 2) {
    for (auto& [p, v] : c.hasse)
      if (is_local_square(-c.disc, p)) {
        fail(ComplementFailure::LocalExistenceFailure, p);
        return rep;
      }
  }
  c.validate();
  rep.inv = std::move(c);
  return rep;
}

std::optional<ComplementWitness> find_complement_bruteforce(
    const RationalQuadraticForm& q, const RationalQuadraticForm& qprime,
    int height, std::uint64_t node_budget) {
  const int n = q.dim();
  const int k = qprime.dim();
  if (k > n || height < 0) return std::nullopt;
  if (k == 0) {
    ComplementWitness w;
    w.complement_gram = q.gram();
    return w;
  }

  // Enumerate all height-bounded integer vectors once, bucketed by norm.
  std::vector<std::vector<Int>> vecs;
  {
    std::vector<Int> cur(n, Int(-height));
    while (true) {
      bool zero = std::all_of(cur.begin(), cur.end(),
                              [](const Int& c) { return c == 0; });
      if (!zero) vecs.push_back(cur);
      int i = n - 1;
      while (i >= 0 && cur[i] == height) cur[i--] = -height;
      if (i < 0) break;
      ++cur[i];
    }
  }
  const Mat& G = q.gram();
  auto bform = [&](const std::vector<Int>& v, const std::vector<Int>& w) {
    Rat acc(0);
    for (int i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      Rat row(0);
      for (int j = 0; j < n; ++j)
        if (w[j] != 0) row += G[i][j] * Rat(w[j]);
      acc += Rat(v[i]) * row;
    }
    return acc;
  };

  std::map<Rat, std::vector<size_t>> by_norm;
  for (size_t i = 0; i < vecs.size(); ++i)
    by_norm[bform(vecs[i], vecs[i])].push_back(i);

  const Mat& Gp = qprime.gram();
  std::uint64_t nodes = 0;
  std::vector<size_t> chosen;

  auto dfs = [&](auto&& self, int level) -> bool {
    if (level == k) return true;
    auto it = by_norm.find(Gp[level][level]);
    if (it == by_norm.end()) return false;
    for (size_t idx : it->second) {
      if (++nodes > node_budget) return false;
      bool ok = true;
      for (int j = 0; j < level && ok; ++j)
        ok = bform(vecs[chosen[j]], vecs[idx]) == Gp[j][level];
      if (!ok) continue;
      chosen.push_back(idx);
      if (self(self, level + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!dfs(dfs, 0) || nodes > node_budget) return std::nullopt;

  ComplementWitness w;
  for (size_t idx : chosen) w.subspace_basis.push_back(vecs[idx]);

  // Orthogonal complement: rational kernel of the k x n matrix (basis * G).
  Mat m(k, std::vector<Rat>(n, Rat(0)));
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < n; ++c)
      for (int t = 0; t < n; ++t)
        m[r][c] += Rat(w.subspace_basis[r][t]) * G[t][c];
  // Gaussian elimination to row echelon form.
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < k; ++col) {
    int pr = -1;
    for (int r = row; r < k; ++r)
      if (m[r][col] != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(m[row], m[pr]);
    for (int r = 0; r < k; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat c = m[r][col] / m[row][col];
      for (int t = col; t < n; ++t) m[r][t] -= c * m[row][t];
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<std::vector<Rat>> kernel;
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (int free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rat> v(n, Rat(0));
    v[free_col] = 1;
    for (int r = static_cast<int>(pivot_col.size()) - 1; r >= 0; --r) {
      Rat acc(0);
      for (int t = pivot_col[r] + 1; t < n; ++t) acc += m[r][t] * v[t];
      v[pivot_col[r]] = -acc / m[r][pivot_col[r]];
    }
    kernel.push_back(std::move(v));
  }

  const int cdim = static_cast<int>(kernel.size());
  w.complement_gram.assign(cdim, std::vector<Rat>(cdim, Rat(0)));
  for (int i = 0; i < cdim; ++i)
    for (int j = 0; j < cdim; ++j) {
      Rat acc(0);
      for (int s = 0; s < n; ++s) {
        if (kernel[i][s] == 0) continue;
        for (int t = 0; t < n; ++t)
          if (kernel[j][t] != 0) acc += kernel[i][s] * G[s][t] * kernel[j][t];
      }
      w.complement_gram[i][j] = acc;
    }
  return w;
}

}  // namespace o2n::qform
