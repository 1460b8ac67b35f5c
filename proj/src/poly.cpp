#include "bigcheck/poly.hpp"

#include <algorithm>
#include <random>

namespace bigcheck {
namespace poly {

void trim(Poly &p) {
  while (!p.empty() && p.back() == 0)
    p.pop_back();
}

int degree(const Poly &p) { return static_cast<int>(p.size()) - 1; }
bool is_zero(const Poly &p) { return p.empty(); }

Poly constant(Elt c) { return c == 0 ? Poly{} : Poly{c}; }

Poly x_power(std::size_t k) {
  Poly p(k + 1, 0);
  p[k] = 1;
  return p;
}

Poly add(const FieldSpec &f, const Poly &a, const Poly &b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = f.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

Poly sub(const FieldSpec &f, const Poly &a, const Poly &b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = f.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

Poly mul(const FieldSpec &f, const Poly &a, const Poly &b) {
  if (a.empty() || b.empty())
    return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i])
      continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

Poly scale(const FieldSpec &f, const Poly &a, Elt c) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = f.mul(a[i], c);
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const FieldSpec &f, const Poly &a, const Poly &b) {
  if (b.empty())
    throw DivisionByZero("polynomial division by zero");
  Poly r = a;
  trim(r);
  if (r.size() < b.size())
    return {{}, r};
  Poly q(r.size() - b.size() + 1, 0);
  const Elt lead_inv = f.inv(b.back());
  for (std::size_t k = r.size(); k-- >= b.size();) {
    Elt c = f.mul(r[k], lead_inv);
    q[k - (b.size() - 1)] = c;
    if (c)
      for (std::size_t j = 0; j < b.size(); ++j) {
        auto &t = r[k - (b.size() - 1) + j];
        t = f.sub(t, f.mul(c, b[j]));
      }
    if (k == b.size() - 1)
      break;
  }
  r.resize(b.size() - 1);
  trim(r);
  trim(q);
  return {q, r};
}

Poly mod(const FieldSpec &f, const Poly &a, const Poly &b) { return divmod(f, a, b).second; }

Poly monic(const FieldSpec &f, const Poly &a) {
  if (a.empty())
    return a;
  return scale(f, a, f.inv(a.back()));
}

Poly gcd(const FieldSpec &f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

Poly derivative(const FieldSpec &f, const Poly &a) {
  if (a.size() <= 1)
    return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i)
    r[i - 1] = f.mul(a[i], f.from_int(static_cast<std::int64_t>(i % f.characteristic())));
  trim(r);
  return r;
}

Poly mulmod(const FieldSpec &f, const Poly &a, const Poly &b, const Poly &m) {
  return mod(f, mul(f, a, b), m);
}

Poly powmod(const FieldSpec &f, Poly base, std::uint64_t e, const Poly &m) {
  Poly r = mod(f, constant(1), m);
  base = mod(f, base, m);
  while (e) {
    if (e & 1)
      r = mulmod(f, r, base, m);
    e >>= 1;
    if (e)
      base = mulmod(f, base, base, m);
  }
  return r;
}

Elt eval(const FieldSpec &f, const Poly &p, Elt x) {
  Elt r = 0;
  for (std::size_t i = p.size(); i-- > 0;)
    r = f.add(f.mul(r, x), p[i]);
  return r;
}

bool is_irreducible(const FieldSpec &f, const Poly &p) {
  const int n = degree(p);
  if (n < 1)
    return false;
  if (n == 1)
    return true;
  const Poly x = x_power(1);
  Poly xq = x;
  for (int i = 1; i <= n / 2; ++i) {
    xq = powmod(f, xq, f.order(), p);
    Poly g = gcd(f, p, sub(f, xq, x));
    if (degree(g) > 0)
      return false;
  }
  return true;
}

} // namespace poly

namespace {

// p^(1/l) for a polynomial whose derivative vanishes: coefficients live at
// multiples of l, and the l-th root of c in F_q is c^(q/l).
Poly pth_root(const FieldSpec &f, const Poly &p) {
  const auto l = f.characteristic();
  Poly r;
  for (std::size_t i = 0; i < p.size(); i += l)
    r.push_back(f.pow(p[i], f.order() / l));
  poly::trim(r);
  return r;
}

// Squarefree decomposition of a monic polynomial: (squarefree part, exponent).
void squarefree(const FieldSpec &f, const Poly &p, unsigned mult,
                std::vector<std::pair<Poly, unsigned>> &out) {
  using namespace poly;
  if (degree(p) < 1)
    return;
  Poly dp = derivative(f, p);
  if (dp.empty()) {
    squarefree(f, pth_root(f, p), mult * static_cast<unsigned>(f.characteristic()), out);
    return;
  }
  Poly c = gcd(f, p, dp);
  Poly w = divmod(f, p, c).first;
  unsigned i = 1;
  while (degree(w) > 0) {
    Poly y = gcd(f, w, c);
    Poly z = divmod(f, w, y).first;
    if (degree(z) > 0)
      out.emplace_back(monic(f, z), i * mult);
    ++i;
    w = y;
    c = divmod(f, c, y).first;
  }
  if (degree(c) > 0)
    squarefree(f, pth_root(f, c), mult * static_cast<unsigned>(f.characteristic()), out);
}

// Splits a squarefree product of irreducibles all of degree k.
void equal_degree(const FieldSpec &f, const Poly &p, int k, std::mt19937_64 &rng,
                  std::vector<Poly> &out) {
  using namespace poly;
  const int n = degree(p);
  if (n == k) {
    out.push_back(monic(f, p));
    return;
  }
  const bool even = f.characteristic() == 2;
  std::uniform_int_distribution<Elt> pick(0, f.order() - 1);
  for (;;) {
    Poly r(static_cast<std::size_t>(n));
    for (auto &c : r)
      c = pick(rng);
    trim(r);
    if (degree(r) < 1)
      continue;
    Poly t;
    if (even) {
      // absolute trace r + r^2 + ... + r^(2^(dk-1))
      Poly term = mod(f, r, p);
      t = term;
      for (unsigned j = 1; j < f.degree() * static_cast<unsigned>(k); ++j) {
        term = mulmod(f, term, term, p);
        t = add(f, t, term);
      }
    } else {
      // r^((q^k - 1)/2) = (r^(1 + q + ... + q^(k-1)))^((q-1)/2)
      Poly a = mod(f, r, p), acc = a;
      for (int j = 1; j < k; ++j) {
        a = powmod(f, a, f.order(), p);
        acc = mulmod(f, acc, a, p);
      }
      t = sub(f, powmod(f, acc, (f.order() - 1) / 2, p), constant(1));
    }
    Poly g = gcd(f, p, t);
    if (degree(g) > 0 && degree(g) < n) {
      equal_degree(f, g, k, rng, out);
      equal_degree(f, divmod(f, p, g).first, k, rng, out);
      return;
    }
  }
}

bool factor_less(const Poly &a, const Poly &b) {
  if (a.size() != b.size())
    return a.size() < b.size();
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

} // namespace

std::vector<Factor> factor_over(const FieldSpec &f, const Poly &p_in, std::uint64_t seed) {
  using namespace poly;
  Poly p = p_in;
  trim(p);
  if (p.empty())
    throw ZeroPolynomial("cannot factor the zero polynomial");
  p = monic(f, p);
  std::vector<Factor> result;
  if (degree(p) == 0)
    return result;
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Poly, unsigned>> sqf;
  squarefree(f, p, 1, sqf);
  const Poly x = x_power(1);
  for (auto &[part, mult] : sqf) {
    // distinct-degree split
    Poly rest = part;
    Poly xq = x;
    for (int k = 1; degree(rest) >= 2 * k; ++k) {
      xq = powmod(f, xq, f.order(), rest);
      Poly g = gcd(f, rest, sub(f, xq, x));
      if (degree(g) > 0) {
        std::vector<Poly> pieces;
        equal_degree(f, g, k, rng, pieces);
        for (auto &piece : pieces)
          result.push_back({piece, mult});
        rest = divmod(f, rest, g).first;
        xq = mod(f, xq, rest);
      }
    }
    if (degree(rest) > 0)
      result.push_back({monic(f, rest), mult});
  }
  // merge equal factors from different squarefree layers (p-th power case)
  std::sort(result.begin(), result.end(),
            [](const Factor &a, const Factor &b) { return factor_less(a.factor, b.factor); });
  std::vector<Factor> merged;
  for (auto &fa : result) {
    if (!merged.empty() && merged.back().factor == fa.factor)
      merged.back().exponent += fa.exponent;
    else
      merged.push_back(fa);
  }
  return merged;
}

std::vector<Elt> roots_in(const FieldSpec &f, const Poly &p_in, std::uint64_t seed) {
  using namespace poly;
  Poly p = p_in;
  trim(p);
  if (p.empty())
    throw ZeroPolynomial("roots of the zero polynomial");
  std::vector<Elt> roots;
  if (degree(p) < 1)
    return roots;
  p = monic(f, p);
  Poly g = gcd(f, p, sub(f, powmod(f, x_power(1), f.order(), p), x_power(1)));
  if (degree(g) < 1)
    return roots;
  std::mt19937_64 rng(seed);
  std::vector<Poly> lin;
  equal_degree(f, g, 1, rng, lin);
  for (auto &l : lin)
    roots.push_back(f.neg(l[0]));
  std::sort(roots.begin(), roots.end());
  return roots;
}

} // namespace bigcheck
