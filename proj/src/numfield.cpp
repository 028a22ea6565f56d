#include "o2n/numfield.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace o2n::numfield {

namespace {

using PolyQ = std::vector<Rat>;  // c0..cd, may carry trailing zeros

int deg(const PolyQ& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

PolyQ trim(PolyQ p) {
  p.resize(deg(p) + 1);
  return p;
}

PolyQ derivative(const PolyQ& p) {
  PolyQ out;
  for (size_t i = 1; i < p.size(); ++i) out.push_back(Rat(long(i)) * p[i]);
  return trim(out);
}

Rat eval(const PolyQ& p, const Rat& x) {
  Rat acc(0);
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    acc = acc * x + p[i];
  return acc;
}

// Remainder of a by b (deg b >= 0).
PolyQ poly_rem(PolyQ a, const PolyQ& b) {
  int db = deg(b);
  for (int da = deg(a); da >= db && da >= 0; da = deg(a)) {
    Rat c = a[da] / b[db];
    for (int i = 0; i <= db; ++i) a[da - db + i] -= c * b[i];
    a[da] = 0;
  }
  return trim(a);
}

PolyQ monic_gcd(PolyQ a, PolyQ b) {
  while (deg(b) >= 0) {
    PolyQ r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (deg(a) >= 0) {
    Rat lead = a[deg(a)];
    for (Rat& c : a) c /= lead;
  }
  return a;
}

PolyQ to_polyq(const std::vector<Int>& p) {
  PolyQ out;
  out.reserve(p.size());
  for (const Int& c : p) out.emplace_back(c);
  return out;
}

// Monic rational polynomial with integer coefficients -> integer vector.
std::vector<Int> to_int_poly(const PolyQ& p) {
  std::vector<Int> out;
  for (const Rat& c : p) {
    if (c.get_den() != 1) throw std::logic_error("non-integer coefficient");
    out.push_back(c.get_num());
  }
  return out;
}

std::vector<Int> signed_divisors(const Int& n) {
  std::vector<Int> ds{Int(1)};
  for (auto& [p, e] : factorize(n)) {
    std::vector<Int> next;
    Int pk(1);
    for (unsigned k = 0; k <= e; ++k) {
      for (const Int& d : ds) next.push_back(d * pk);
      pk *= p;
    }
    ds = std::move(next);
  }
  size_t m = ds.size();
  for (size_t i = 0; i < m; ++i) ds.push_back(-ds[i]);
  std::sort(ds.begin(), ds.end());
  return ds;
}

// Kronecker factor search: smallest-degree monic integer factor of the monic
// squarefree integer polynomial f with 1 <= deg <= deg(f)/2, or empty.
std::vector<Int> find_factor(const std::vector<Int>& f) {
  const int d = static_cast<int>(f.size()) - 1;
  const PolyQ fq = to_polyq(f);

  // Linear factors: integer roots divide f(0); f(0) = 0 means root 0.
  if (f[0] == 0) return {Int(0), Int(1)};
  for (const Int& r : signed_divisors(f[0]))
    if (eval(fq, Rat(r)) == 0) return {-r, Int(1)};

  // Degree-k factors, k >= 2, by interpolation through k+1 sample points
  // chosen among small integers to minimize the divisor count.
  for (int k = 2; k <= d / 2; ++k) {
    struct Sample {
      Int t;
      std::vector<Int> candidates;
    };
    std::vector<Sample> all;
    for (long t = -4; t <= 4; ++t) {
      Rat v = eval(fq, Rat(t));
      all.push_back({Int(t), signed_divisors(v.get_num())});
    }
    std::sort(all.begin(), all.end(), [](const Sample& a, const Sample& b) {
      if (a.candidates.size() != b.candidates.size())
        return a.candidates.size() < b.candidates.size();
      return a.t < b.t;
    });
    all.resize(k + 1);
    std::sort(all.begin(), all.end(),
              [](const Sample& a, const Sample& b) { return a.t < b.t; });

    // Lagrange basis denominators.
    std::vector<Rat> denom(k + 1, Rat(1));
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j)
        if (i != j) denom[i] *= Rat(all[i].t - all[j].t);

    std::vector<size_t> pick(k + 1, 0);
    while (true) {
      // Interpolate candidate values and test.
      PolyQ g(1, Rat(0));
      for (int i = 0; i <= k; ++i) {
        PolyQ basis{Rat(all[i].candidates[pick[i]]) / denom[i]};
        for (int j = 0; j <= k; ++j) {
          if (j == i) continue;
          PolyQ next(basis.size() + 1, Rat(0));
          for (size_t c = 0; c < basis.size(); ++c) {
            next[c + 1] += basis[c];
            next[c] -= basis[c] * Rat(all[j].t);
          }
          basis = std::move(next);
        }
        if (basis.size() > g.size()) g.resize(basis.size(), Rat(0));
        for (size_t c = 0; c < basis.size(); ++c) g[c] += basis[c];
      }
      g = trim(g);
      if (deg(g) == k && g[k] == 1) {
        bool integral = std::all_of(g.begin(), g.end(), [](const Rat& c) {
          return c.get_den() == 1;
        });
        if (integral && deg(poly_rem(fq, g)) < 0) return to_int_poly(g);
      }
      int i = k;
      while (i >= 0 && ++pick[i] == all[i].candidates.size()) pick[i--] = 0;
      if (i < 0) break;
    }
  }
  return {};
}

int sign_at(const PolyQ& p, const Rat& x) { return sgn(eval(p, x)); }

// Sturm sequence of a squarefree polynomial.
std::vector<PolyQ> sturm_sequence(const PolyQ& f) {
  std::vector<PolyQ> seq{trim(f), derivative(f)};
  while (deg(seq.back()) > 0) {
    PolyQ r = poly_rem(seq[seq.size() - 2], seq.back());
    if (deg(r) < 0) break;  // cannot happen for squarefree input
    for (Rat& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  return seq;
}

int variations(const std::vector<PolyQ>& seq, const Rat& x) {
  int count = 0, prev = 0;
  for (const PolyQ& p : seq) {
    int s = sign_at(p, x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

int variations_at_infinity(const std::vector<PolyQ>& seq, bool plus) {
  int count = 0, prev = 0;
  for (const PolyQ& p : seq) {
    int d = deg(p);
    if (d < 0) continue;
    int s = sgn(p[d]);
    if (!plus && d % 2 == 1) s = -s;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

}  // namespace

NumberField NumberField::make(const std::vector<Int>& coeffs) {
  if (coeffs.size() < 2 || coeffs.size() > 9)
    throw std::invalid_argument("degree must be between 1 and 8");
  if (coeffs.back() != 1)
    throw std::invalid_argument("polynomial must be monic");
  const int d = static_cast<int>(coeffs.size()) - 1;
  const PolyQ fq = to_polyq(coeffs);

  PolyQ g = monic_gcd(fq, derivative(fq));
  if (deg(g) >= 1) {
    // Repeated part witnesses non-squarefreeness; scale to integer monic.
    std::vector<Int> w;
    Int lcm_den(1);
    for (const Rat& c : g) lcm_den = lcm(lcm_den, Int(c.get_den()));
    for (const Rat& c : g) w.push_back(Int(c * Rat(lcm_den)));
    throw FieldConstructionError(
        "polynomial is not squarefree; repeated factor divides " +
            poly_to_string(w),
        w);
  }
  if (d > 1) {
    std::vector<Int> factor = find_factor(coeffs);
    if (!factor.empty())
      throw FieldConstructionError(
          "polynomial is reducible; factor " + poly_to_string(factor), factor);
  }

  NumberField F;
  F.degree_ = d;
  F.poly_ = coeffs;

  // Newton's identities, e_i = (-1)^i c_{d-i}, through p_{3d}.
  std::vector<Rat> e(d + 1, Rat(0));
  for (int i = 1; i <= d; ++i)
    e[i] = Rat((i % 2 == 0) ? coeffs[d - i] : -coeffs[d - i]);
  F.power_sums_.assign(3 * d + 1, Rat(0));
  F.power_sums_[0] = d;
  for (int k = 1; k <= 3 * d; ++k) {
    Rat p(0);
    for (int i = 1; i <= std::min(k - 1, d); ++i) {
      Rat term = e[i] * F.power_sums_[k - i];
      p += (i % 2 == 1) ? term : -term;
    }
    if (k <= d) p += Rat((k % 2 == 1) ? k : -k) * e[k];
    F.power_sums_[k] = p;
  }

  // Sturm count of real roots; isolate when totally real.
  auto seq = sturm_sequence(fq);
  int real_roots =
      variations_at_infinity(seq, false) - variations_at_infinity(seq, true);
  F.totally_real_ = (real_roots == d);
  if (F.totally_real_) {
    if (d == 1) {
      Rat root = -Rat(coeffs[0]);
      F.intervals_.emplace_back(root - Rat(1, 2), root + Rat(1, 2));
    } else {
      Int m(1);
      for (int i = 0; i < d; ++i) m = std::max(m, abs(coeffs[i]));
      std::deque<std::pair<Rat, Rat>> work{{Rat(-1 - m), Rat(1 + m)}};
      while (!work.empty()) {
        auto [lo, hi] = work.front();
        work.pop_front();
        int c = variations(seq, lo) - variations(seq, hi);
        if (c == 0) continue;
        if (c == 1) {
          F.intervals_.emplace_back(lo, hi);
          continue;
        }
        Rat mid = (lo + hi) / 2;  // irreducible, deg >= 2: f(mid) != 0
        work.emplace_back(lo, mid);
        work.emplace_back(mid, hi);
      }
      std::sort(F.intervals_.begin(), F.intervals_.end());
    }
  }
  return F;
}

const Rat& NumberField::power_sum(int k) const {
  if (k < 0 || k >= static_cast<int>(power_sums_.size()))
    throw std::out_of_range("power sum index");
  return power_sums_[k];
}

FieldElement NumberField::element(std::vector<Rat> coeffs) const {
  if (static_cast<int>(coeffs.size()) > degree_)
    throw std::invalid_argument("element coefficients exceed degree");
  coeffs.resize(degree_, Rat(0));
  return FieldElement{std::move(coeffs)};
}

FieldElement NumberField::one() const { return element({Rat(1)}); }

FieldElement NumberField::generator() const {
  if (degree_ == 1) return element({-Rat(poly_[0])});
  return element({Rat(0), Rat(1)});
}

FieldElement NumberField::add(const FieldElement& a,
                              const FieldElement& b) const {
  FieldElement out = a;
  for (int i = 0; i < degree_; ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

FieldElement NumberField::negate(const FieldElement& a) const {
  FieldElement out = a;
  for (Rat& c : out.coeffs) c = -c;
  return out;
}

FieldElement NumberField::mul(const FieldElement& a,
                              const FieldElement& b) const {
  std::vector<Rat> prod(2 * degree_ - 1, Rat(0));
  for (int i = 0; i < degree_; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (int j = 0; j < degree_; ++j)
      if (b.coeffs[j] != 0) prod[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  // Reduce modulo the monic minimal polynomial.
  for (int k = static_cast<int>(prod.size()) - 1; k >= degree_; --k) {
    if (prod[k] == 0) continue;
    Rat c = prod[k];
    prod[k] = 0;
    for (int i = 0; i < degree_; ++i)
      prod[k - degree_ + i] -= c * Rat(poly_[i]);
  }
  prod.resize(degree_);
  return FieldElement{std::move(prod)};
}

Rat NumberField::trace(const FieldElement& a) const {
  Rat acc(0);
  for (int i = 0; i < degree_; ++i)
    if (a.coeffs[i] != 0) acc += a.coeffs[i] * power_sums_[i];
  return acc;
}

Rat NumberField::trace_times_power(const FieldElement& a, int m) const {
  Rat acc(0);
  for (int i = 0; i < degree_; ++i)
    if (a.coeffs[i] != 0) acc += a.coeffs[i] * power_sum(i + m);
  return acc;
}

int NumberField::sign_at_embedding(const FieldElement& a, int idx) const {
  if (!totally_real_)
    throw std::invalid_argument("field is not totally real");
  if (a.is_zero()) throw std::invalid_argument("sign of the zero element");
  if (idx < 0 || idx >= degree_)
    throw std::out_of_range("embedding index");

  const PolyQ f = to_polyq(poly_);
  auto [lo, hi] = intervals_[idx];
  // Interval Horner evaluation of a on [lo, hi], bisecting on f until the
  // sign is certain. a(root) != 0 since f is irreducible and deg a < deg f.
  for (int iter = 0; iter < 4096; ++iter) {
    Rat vlo(0), vhi(0);
    bool first = true;
    for (int i = degree_ - 1; i >= 0; --i) {
      if (first) {
        vlo = vhi = a.coeffs[i];
        first = false;
        continue;
      }
      Rat c1 = vlo * lo, c2 = vlo * hi, c3 = vhi * lo, c4 = vhi * hi;
      Rat mn = std::min(std::min(c1, c2), std::min(c3, c4));
      Rat mx = std::max(std::max(c1, c2), std::max(c3, c4));
      vlo = mn + a.coeffs[i];
      vhi = mx + a.coeffs[i];
    }
    if (vlo > 0) return 1;
    if (vhi < 0) return -1;
    Rat mid = (lo + hi) / 2;  // f(mid) != 0: irreducible of degree >= 2
    if (sign_at(f, lo) * sign_at(f, mid) < 0)
      hi = mid;
    else
      lo = mid;
  }
  throw std::logic_error("sign refinement did not converge");
}

std::string NumberField::poly_string() const { return poly_to_string(poly_); }

CMExtension::CMExtension(NumberField base, FieldElement delta)
    : base_(std::move(base)), delta_(std::move(delta)) {
  if (!base_.is_totally_real())
    throw std::invalid_argument("CM base field must be totally real");
  if (delta_.is_zero())
    throw std::invalid_argument("delta must be nonzero");
  for (int i = 0; i < base_.degree(); ++i)
    if (base_.sign_at_embedding(delta_, i) != -1)
      throw std::invalid_argument("delta is not totally negative");
}

qform::RationalQuadraticForm trace_form_quadratic(
    const NumberField& field, const std::vector<FieldElement>& diagonal) {
  if (!field.is_totally_real())
    throw std::invalid_argument("trace form requires a totally real field");
  const int d = field.degree();
  const int m = static_cast<int>(diagonal.size());
  for (const FieldElement& a : diagonal)
    if (a.is_zero())
      throw std::invalid_argument("diagonal entries must be nonzero");
  qform::Mat g(d * m, std::vector<Rat>(d * m, Rat(0)));
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        g[k * d + i][k * d + j] = field.trace_times_power(diagonal[k], i + j);
  return qform::RationalQuadraticForm(std::move(g));  // checks nondegeneracy
}

std::vector<std::pair<int, int>> signature_profile(
    const NumberField& field, const std::vector<FieldElement>& diagonal) {
  if (!field.is_totally_real())
    throw std::invalid_argument("signature profile requires totally real field");
  std::vector<std::pair<int, int>> out;
  for (int e = 0; e < field.degree(); ++e) {
    int plus = 0, minus = 0;
    for (const FieldElement& a : diagonal)
      (field.sign_at_embedding(a, e) > 0 ? plus : minus)++;
    out.emplace_back(plus, minus);
  }
  return out;
}

qform::RationalQuadraticForm hermitian_transfer(
    const CMExtension& ext, const std::vector<FieldElement>& diagonal) {
  const NumberField& F = ext.base();
  const int d = F.degree();
  const int m = static_cast<int>(diagonal.size());
  for (const FieldElement& a : diagonal)
    if (a.is_zero())
      throw std::invalid_argument("diagonal entries must be nonzero");
  // Q(u) = Tr_{E/Q}(a u conj(u)); on u = s + t sqrt(delta) the polar form is
  // B(u,v) = Tr_{F/Q}(2a (s_u s_v - delta t_u t_v)), block diagonal over the
  // basis { x^i } u { x^i sqrt(delta) } in each coordinate.
  qform::Mat g(2 * d * m, std::vector<Rat>(2 * d * m, Rat(0)));
  for (int k = 0; k < m; ++k) {
    FieldElement two_a = diagonal[k];
    for (Rat& c : two_a.coeffs) c *= 2;
    FieldElement neg_two_a_delta = F.negate(F.mul(two_a, ext.delta()));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        g[2 * k * d + i][2 * k * d + j] = F.trace_times_power(two_a, i + j);
        g[(2 * k + 1) * d + i][(2 * k + 1) * d + j] =
            F.trace_times_power(neg_two_a_delta, i + j);
      }
  }
  return qform::RationalQuadraticForm(std::move(g));
}

std::string poly_to_string(const std::vector<Int>& coeffs) {
  std::string out;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    const Int& c = coeffs[i];
    if (c == 0) continue;
    std::string term;
    Int a = abs(c);
    if (i == 0)
      term = a.get_str();
    else {
      if (a != 1) term = a.get_str() + "*";
      term += "x";
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (out.empty())
      out = (c < 0 ? "-" : "") + term;
    else
      out += (c < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace o2n::numfield
