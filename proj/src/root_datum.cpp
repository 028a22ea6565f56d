#include "o2n/root_datum.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace o2n::lie {

namespace {

std::vector<std::vector<long>> cartan_matrix_for(char type, int rank) {
  auto bad = [&] {
    throw std::invalid_argument("unsupported type/rank: " +
                                std::string(1, type) + std::to_string(rank));
  };
  std::vector<std::vector<long>> a(rank, std::vector<long>(rank, 0));
  for (int i = 0; i < rank; ++i) a[i][i] = 2;
  auto edge = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  switch (type) {
    case 'A':
      if (rank < 1) bad();
      for (int i = 0; i + 1 < rank; ++i) edge(i, i + 1);
      break;
    case 'B':
      if (rank < 2) bad();
      for (int i = 0; i + 1 < rank; ++i) edge(i, i + 1);
      a[rank - 2][rank - 1] = -2;  // long root row, short column
      break;
    case 'C':
      if (rank < 2) bad();
      for (int i = 0; i + 1 < rank; ++i) edge(i, i + 1);
      a[rank - 1][rank - 2] = -2;
      break;
    case 'D':
      if (rank < 3) bad();
      for (int i = 0; i + 2 < rank; ++i) edge(i, i + 1);
      edge(rank - 3, rank - 1);
      break;
    case 'E': {
      if (rank != 6 && rank != 7) bad();
      // Bourbaki numbering: chain 1-3-4-5-6(-7), node 2 attached to 4.
      edge(0, 2);
      edge(2, 3);
      edge(3, 4);
      edge(4, 5);
      edge(1, 3);
      if (rank == 7) edge(5, 6);
      break;
    }
    default:
      bad();
  }
  return a;
}

// Half-norms d_i = (a_i, a_i)/2 with long roots normalized to norm 2.
std::vector<Rat> half_norms(char type, int rank) {
  std::vector<Rat> d(rank, Rat(1));
  if (type == 'B') d[rank - 1] = Rat(1, 2);
  if (type == 'C') d[rank - 1] = Rat(2);
  return d;
}

std::vector<std::vector<Rat>> invert(const std::vector<std::vector<long>>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(2 * n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = Rat(a[i][j]);
    m[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int pr = col;
    while (pr < n && m[pr][col] == 0) ++pr;
    if (pr == n) throw std::logic_error("Cartan matrix not invertible");
    std::swap(m[col], m[pr]);
    Rat pivot = m[col][col];
    for (Rat& x : m[col]) x /= pivot;
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rat c = m[r][col];
      for (int t = 0; t < 2 * n; ++t) m[r][t] -= c * m[col][t];
    }
  }
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

size_t expected_root_count(char type, int rank) {
  switch (type) {
    case 'A': return static_cast<size_t>(rank) * (rank + 1) / 2;
    case 'B':
    case 'C': return static_cast<size_t>(rank) * rank;
    case 'D': return static_cast<size_t>(rank) * (rank - 1);
    case 'E': return rank == 6 ? 36 : 63;
  }
  return 0;
}

}  // namespace

RootDatum RootDatum::build(char type, int rank) {
  RootDatum d;
  d.type_ = type;
  d.rank_ = rank;
  d.cartan_ = cartan_matrix_for(type, rank);
  d.rho_.assign(rank, 1);
  d.cartan_inv_ = invert(d.cartan_);

  // Symmetric pairing G_ij = (w_i, w_j) = (A^{-1})_ij d_j.
  std::vector<Rat> dn = half_norms(type, rank);
  d.pairing_.assign(rank, std::vector<Rat>(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      d.pairing_[i][j] = d.cartan_inv_[i][j] * dn[j];

  // Positive roots by closure from the simple roots. A root b extends by
  // a_i iff p - <b, a_i^vee> > 0 where p is the length of the descending
  // a_i-string through b.
  std::set<std::vector<long>> roots;
  std::vector<std::vector<long>> frontier;
  for (int i = 0; i < rank; ++i) {
    std::vector<long> alpha(d.cartan_[i].begin(), d.cartan_[i].end());
    roots.insert(alpha);
    frontier.push_back(alpha);
  }
  while (!frontier.empty()) {
    std::vector<std::vector<long>> next;
    for (const auto& beta : frontier) {
      for (int i = 0; i < rank; ++i) {
        std::vector<long> down = beta;
        long p = 0;
        while (true) {
          for (int j = 0; j < rank; ++j) down[j] -= d.cartan_[i][j];
          if (!roots.contains(down)) break;
          ++p;
        }
        if (p - beta[i] <= 0) continue;
        std::vector<long> up = beta;
        for (int j = 0; j < rank; ++j) up[j] += d.cartan_[i][j];
        if (roots.insert(up).second) next.push_back(up);
      }
    }
    frontier = std::move(next);
  }
  d.positive_roots_.assign(roots.begin(), roots.end());
  std::sort(d.positive_roots_.begin(), d.positive_roots_.end());
  if (d.positive_roots_.size() != expected_root_count(type, rank))
    throw std::logic_error("positive root closure has unexpected size");

  // Sum of positive coroots as a functional on fundamental coordinates:
  // <w, a^vee> = 2 (w, a) / (a, a).
  d.sum_pos_coroots_.assign(rank, 0);
  for (const auto& alpha : d.positive_roots_) {
    std::vector<Rat> ga(rank, Rat(0));
    Rat norm(0);
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < rank; ++j) ga[i] += d.pairing_[i][j] * Rat(alpha[j]);
      norm += Rat(alpha[i]) * ga[i];
    }
    for (int i = 0; i < rank; ++i) {
      Rat v = 2 * ga[i] / norm;
      if (v.get_den() != 1) throw std::logic_error("coroot pairing not integral");
      d.sum_pos_coroots_[i] += static_cast<long>(v.get_num().get_si());
    }
  }
  return d;
}

Rat RootDatum::pair(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
  Rat acc(0);
  for (int i = 0; i < rank_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank_; ++j)
      if (b[j] != 0) acc += a[i] * pairing_[i][j] * b[j];
  }
  return acc;
}

Rat RootDatum::pair_weights(const std::vector<long>& a,
                            const std::vector<long>& b) const {
  Rat acc(0);
  for (int i = 0; i < rank_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank_; ++j)
      if (b[j] != 0) acc += Rat(a[i]) * pairing_[i][j] * Rat(b[j]);
  }
  return acc;
}

Weight RootDatum::reflect(const Weight& w, int i) const {
  Weight out = w;
  long c = w.coords[i];
  if (c == 0) return out;
  for (int j = 0; j < rank_; ++j) out.coords[j] -= c * cartan_[i][j];
  return out;
}

Weight RootDatum::dominant_representative(Weight w) const {
  while (true) {
    int neg = -1;
    for (int i = 0; i < rank_; ++i)
      if (w.coords[i] < 0) {
        neg = i;
        break;
      }
    if (neg < 0) return w;
    w = reflect(w, neg);
  }
}

RootDatum build_root_datum(char type_letter, int rank) {
  return RootDatum::build(type_letter, rank);
}

Int weyl_dim(const RootDatum& datum, const Weight& highest) {
  if (static_cast<int>(highest.coords.size()) != datum.rank())
    throw std::invalid_argument("weight rank mismatch");
  for (long c : highest.coords)
    if (c < 0) throw std::invalid_argument("weight is not dominant");
  std::vector<long> lam_rho(datum.rank());
  for (int i = 0; i < datum.rank(); ++i) lam_rho[i] = highest.coords[i] + 1;
  Rat prod(1);
  for (const auto& alpha : datum.positive_roots())
    prod *= datum.pair_weights(lam_rho, alpha) /
            datum.pair_weights(datum.rho(), alpha);
  if (prod.get_den() != 1) throw std::logic_error("Weyl dimension not integral");
  return prod.get_num();
}

WeightSystem weight_system(const RootDatum& datum, const Weight& highest,
                           long dim_cap) {
  const int r = datum.rank();
  Int dim = weyl_dim(datum, highest);
  if (dim > dim_cap)
    throw std::invalid_argument("representation dimension " + dim.get_str() +
                                " exceeds cap " + std::to_string(dim_cap));

  // Dominant weights mu <= highest: mu = highest - sum c_i alpha_i with
  // c bounded by the root coordinates of highest + dual(highest).
  Weight dual = dual_highest_weight(datum, highest);
  std::vector<long> cmax(r, 0);
  {
    const auto& ainv = datum.cartan_inverse();
    for (int i = 0; i < r; ++i) {
      Rat acc(0);
      for (int j = 0; j < r; ++j)
        acc += Rat(highest.coords[j] + dual.coords[j]) * ainv[j][i];
      if (acc.get_den() != 1 || acc < 0)
        throw std::logic_error("root coordinate bound not a nonneg integer");
      cmax[i] = static_cast<long>(acc.get_num().get_si());
    }
  }

  struct Dominant {
    std::vector<long> coords;
    long height;
  };
  std::vector<Dominant> dominants;
  std::vector<long> c(r, 0);
  while (true) {
    std::vector<long> mu = highest.coords;
    bool dom = true;
    long height = 0;
    for (int i = 0; i < r; ++i) height += c[i];
    for (int j = 0; j < r && dom; ++j) {
      long v = highest.coords[j];
      for (int i = 0; i < r; ++i) v -= c[i] * datum.cartan_matrix()[i][j];
      mu[j] = v;
      if (v < 0) dom = false;
    }
    if (dom) dominants.push_back({mu, height});
    int i = r - 1;
    while (i >= 0 && c[i] == cmax[i]) c[i--] = 0;
    if (i < 0) break;
    ++c[i];
  }
  std::sort(dominants.begin(), dominants.end(),
            [](const Dominant& a, const Dominant& b) {
              if (a.height != b.height) return a.height < b.height;
              return a.coords < b.coords;
            });

  // Freudenthal recursion over dominant weights in increasing depth.
  std::map<std::vector<long>, Int> mult;
  std::vector<long> lam_rho(r);
  for (int i = 0; i < r; ++i) lam_rho[i] = highest.coords[i] + 1;
  const Rat top_norm = datum.pair_weights(lam_rho, lam_rho);
  for (const auto& d : dominants) {
    if (d.height == 0) {
      mult[d.coords] = 1;
      continue;
    }
    Rat num(0);
    for (const auto& alpha : datum.positive_roots()) {
      std::vector<long> nu = d.coords;
      while (true) {
        for (int j = 0; j < r; ++j) nu[j] += alpha[j];
        Weight dom_nu = datum.dominant_representative(Weight{nu});
        auto it = mult.find(dom_nu.coords);
        if (it == mult.end()) break;
        num += Rat(it->second) * datum.pair_weights(nu, alpha);
      }
    }
    std::vector<long> mu_rho(r);
    for (int i = 0; i < r; ++i) mu_rho[i] = d.coords[i] + 1;
    Rat den = top_norm - datum.pair_weights(mu_rho, mu_rho);
    Rat m = 2 * num / den;
    if (m.get_den() != 1 || m <= 0)
      throw std::logic_error("Freudenthal multiplicity not a positive integer");
    mult[d.coords] = m.get_num();
  }

  // Expand Weyl orbits.
  WeightSystem ws;
  ws.type_letter = datum.type_letter();
  ws.rank = r;
  ws.highest = highest;
  ws.dim = dim;
  Int total = 0;
  for (const auto& [mu, m] : mult) {
    std::set<std::vector<long>> orbit{mu};
    std::vector<std::vector<long>> frontier{mu};
    while (!frontier.empty()) {
      std::vector<std::vector<long>> next;
      for (const auto& w : frontier)
        for (int i = 0; i < r; ++i) {
          Weight rw = datum.reflect(Weight{w}, i);
          if (orbit.insert(rw.coords).second) next.push_back(rw.coords);
        }
      frontier = std::move(next);
    }
    long ml = static_cast<long>(m.get_si());
    for (const auto& w : orbit) {
      ws.entries[w] = ml;
      total += ml;
    }
  }
  if (total != dim)
    throw std::logic_error("weight multiplicities do not sum to the dimension");
  return ws;
}

std::vector<Weight> dominant_weights_in_box(const RootDatum& datum,
                                            int coeff_bound, long dim_cap) {
  if (coeff_bound < 0) throw std::invalid_argument("negative coefficient bound");
  std::vector<Weight> out;
  std::vector<long> cur(datum.rank(), 0);
  // Lexicographic DFS; the Weyl dimension is monotone in every coordinate,
  // so a partial weight over the cap prunes all completions and all larger
  // values of the current coordinate.
  auto rec = [&](auto&& self, int pos) -> void {
    if (weyl_dim(datum, Weight{cur}) > dim_cap) return;
    if (pos == datum.rank()) {
      Weight w{cur};
      if (!w.is_zero()) out.push_back(w);
      return;
    }
    for (long v = 0; v <= coeff_bound; ++v) {
      cur[pos] = v;
      if (v > 0 && weyl_dim(datum, Weight{cur}) > dim_cap) {
        cur[pos] = 0;
        return;
      }
      self(self, pos + 1);
    }
    cur[pos] = 0;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Weight dual_highest_weight(const RootDatum& datum, const Weight& highest) {
  for (long c : highest.coords)
    if (c < 0) throw std::invalid_argument("weight is not dominant");
  Weight w = highest;
  for (long& c : w.coords) c = -c;
  return datum.dominant_representative(w);
}

}  // namespace o2n::lie
