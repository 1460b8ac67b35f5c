#include "bigcheck/regular.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "bigcheck/parallel.hpp"

namespace bigcheck {

namespace {

using boost::multiprecision::cpp_int;

void trim(IntPoly &p) {
  while (!p.empty() && p.back() == 0)
    p.pop_back();
}

// remainder of a modulo the monic polynomial m
IntPoly mod_monic(IntPoly a, const IntPoly &m) {
  const std::size_t dm = m.size() - 1;
  for (std::size_t i = a.size(); i-- > dm;) {
    const std::int64_t c = a[i];
    if (c == 0)
      continue;
    for (std::size_t j = 0; j <= dm; ++j)
      a[i - dm + j] -= c * m[j];
  }
  if (a.size() > dm)
    a.resize(dm);
  trim(a);
  return a;
}

// exact quotient a / m for monic m dividing a
IntPoly div_monic(IntPoly a, const IntPoly &m) {
  const std::size_t dm = m.size() - 1;
  IntPoly q(a.size() - dm, 0);
  for (std::size_t i = a.size(); i-- > dm;) {
    const std::int64_t c = a[i];
    q[i - dm] = c;
    for (std::size_t j = 0; j <= dm; ++j)
      a[i - dm + j] -= c * m[j];
  }
  return q;
}

std::uint64_t checked_power_minus_one(std::uint64_t l, unsigned d) {
  unsigned __int128 v = 1;
  for (unsigned i = 0; i < d; ++i) {
    v *= l;
    if (v > (static_cast<unsigned __int128>(1) << 63))
      throw TooLarge("l^d - 1 exceeds 63 bits");
  }
  return static_cast<std::uint64_t>(v - 1);
}

std::uint64_t mod_signed(std::int64_t a, std::uint64_t m) {
  const auto r = static_cast<__int128>(a) % static_cast<__int128>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// sum_j mu_j l^j mod m
std::uint64_t digit_value(const std::vector<std::int64_t> &mu, std::uint64_t l, std::uint64_t m) {
  std::uint64_t h = 0, p = 1 % m;
  for (std::int64_t c : mu) {
    h = (h + mulmod(mod_signed(c, m), p, m)) % m;
    p = mulmod(p, l % m, m);
  }
  return h;
}

std::vector<bool> prime_sieve(std::uint64_t limit) {
  std::vector<bool> p(limit + 1, true);
  p[0] = false;
  if (limit >= 1)
    p[1] = false;
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (p[i])
      for (std::uint64_t j = i * i; j <= limit; j += i)
        p[j] = false;
  return p;
}

// all vectors in [-N, N]^len with at most xi nonzero entries, in a fixed order
void bounded_vectors(std::size_t len, std::int64_t N, std::size_t xi,
                     std::vector<std::vector<std::int64_t>> &out) {
  std::vector<std::int64_t> cur(len, 0);
  auto rec = [&](auto &&self, std::size_t pos, std::size_t used) -> void {
    if (pos == len) {
      out.push_back(cur);
      return;
    }
    cur[pos] = 0;
    self(self, pos + 1, used);
    if (used == xi)
      return;
    for (std::int64_t v = -N; v <= N; ++v) {
      if (v == 0)
        continue;
      cur[pos] = v;
      self(self, pos + 1, used + 1);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, 0);
}

} // namespace

IntPoly cyclotomic(unsigned d) {
  if (d == 0)
    throw PreconditionViolation("cyclotomic polynomial of order 0");
  IntPoly p(d + 1, 0);
  p[0] = -1;
  p[d] = 1;
  for (unsigned e = 1; e < d; ++e)
    if (d % e == 0)
      p = div_monic(p, cyclotomic(e));
  return p;
}

std::size_t WeightProfile::support() const {
  return static_cast<std::size_t>(std::count_if(mu.begin(), mu.end(), [](auto v) { return v != 0; }));
}

bool WeightProfile::valid() const {
  for (auto v : mu)
    if (v > N || v < -N)
      return false;
  return support_bound == 0 || support() <= support_bound;
}

bool is_zero(const IntPoly &p) {
  return std::all_of(p.begin(), p.end(), [](auto c) { return c == 0; });
}

IntPoly cyclotomic_sum(const std::vector<std::int64_t> &mu, std::uint64_t s) {
  const std::size_t d = mu.size();
  if (d == 0)
    return {};
  IntPoly c(d, 0);
  for (std::size_t i = 0; i < d; ++i)
    c[static_cast<std::size_t>((s % d) * i % d)] += mu[i];
  return mod_monic(std::move(c), cyclotomic(static_cast<unsigned>(d)));
}

std::vector<IntPoly> cyclic_fourier(const std::vector<std::int64_t> &mu) {
  std::vector<IntPoly> out;
  for (std::size_t j = 0; j < mu.size(); ++j)
    out.push_back(cyclotomic_sum(mu, j));
  return out;
}

std::size_t rational_rank(const std::vector<std::vector<std::int64_t>> &rows) {
  if (rows.empty())
    return 0;
  std::vector<std::vector<cpp_int>> a;
  for (const auto &r : rows)
    a.emplace_back(r.begin(), r.end());
  const std::size_t m = a.size(), n = a[0].size();
  std::size_t rank = 0;
  cpp_int prev = 1;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t piv = rank;
    while (piv < m && a[piv][col] == 0)
      ++piv;
    if (piv == m)
      continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < m; ++i) {
      for (std::size_t j = col + 1; j < n; ++j)
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

ConvolutionRank convolution_rank(const std::vector<std::int64_t> &mu) {
  const std::size_t d = mu.size();
  ConvolutionRank r;
  for (const auto &c : cyclic_fourier(mu))
    r.fourier += !is_zero(c);
  std::vector<std::vector<std::int64_t>> circ(d, std::vector<std::int64_t>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      circ[i][j] = mu[(i + d - j) % d];
  r.elimination = rational_rank(circ);
  if (r.fourier != r.elimination)
    throw PreconditionViolation("convolution rank: Fourier count and elimination disagree");
  return r;
}

double phi_constant(std::uint64_t limit) {
  static std::mutex lock;
  static std::uint64_t cached_limit = 0;
  static double cached = 0;
  std::lock_guard<std::mutex> g(lock);
  if (cached_limit == limit)
    return cached;
  std::vector<std::uint64_t> phi(limit + 1);
  std::iota(phi.begin(), phi.end(), 0);
  for (std::uint64_t p = 2; p <= limit; ++p)
    if (phi[p] == p)
      for (std::uint64_t m = p; m <= limit; m += p)
        phi[m] -= phi[m] / p;
  double best = INFINITY;
  for (std::uint64_t n = 3; n <= limit; ++n) {
    const double x = static_cast<double>(n);
    best = std::min(best, static_cast<double>(phi[n]) * std::log(std::log(x)) / x);
  }
  cached_limit = limit;
  cached = best;
  return best;
}

double lemma_threshold(double omega, std::size_t xi, std::int64_t n_bound, double k) {
  return 2.0 * static_cast<double>(xi) * std::pow(omega, 1.0 / k) * static_cast<double>(n_bound);
}

OrbitCheck orbit_size_bound_check(const std::vector<std::int64_t> &mu, std::uint64_t l,
                                  std::uint64_t q, double omega) {
  const std::size_t d = mu.size();
  if (d < 3)
    throw PreconditionViolation("the orbit bound needs d >= 3");
  if (q == 0 || d % q != 0)
    throw PreconditionViolation("q must divide d");
  if (is_zero(cyclotomic_sum(mu, q)))
    throw HypothesisFailed("sum of zeta_d^(q i) mu_i vanishes");
  const std::uint64_t m = checked_power_minus_one(l, static_cast<unsigned>(d));
  const std::uint64_t h = digit_value(mu, l, m);
  OrbitCheck out;
  out.orbit = m / std::gcd(h, m);
  const double x = static_cast<double>(d);
  out.bound = std::pow(omega, 1.0 / static_cast<double>(q) * x / std::log(std::log(x)));
  out.pass = static_cast<double>(out.orbit) > out.bound;
  return out;
}

std::vector<std::uint64_t> prime_powers_dividing(std::uint64_t d, std::uint64_t n,
                                                 bool include_unit) {
  std::vector<std::uint64_t> out;
  if (include_unit && n > 1)
    out.push_back(1);
  for (std::uint64_t p : prime_factors(d))
    for (std::uint64_t q = p; d % q == 0 && q < n; q *= p)
      out.push_back(q);
  std::sort(out.begin(), out.end());
  return out;
}

bool forced_zero_check(const std::vector<std::int64_t> &mu, std::uint64_t n, bool include_unit) {
  if (n < 2)
    throw PreconditionViolation("threshold n must be at least 2");
  const std::size_t xi = n - 1;
  std::size_t support = 0;
  for (auto v : mu)
    support += v != 0;
  if (support >= xi)
    return false;
  for (std::uint64_t q : prime_powers_dividing(mu.size(), n, include_unit))
    if (!is_zero(cyclotomic_sum(mu, q)))
      return false;
  return true;
}

std::uint64_t TorusSpec::size() const {
  std::uint64_t s = 1;
  for (unsigned di : degrees)
    s *= checked_power_minus_one(l, di);
  return s;
}

std::vector<TorusProfile> bounded_profiles(const TorusSpec &torus, std::int64_t N,
                                           std::size_t xi) {
  std::size_t len = 0;
  for (unsigned di : torus.degrees)
    len += di;
  std::vector<std::vector<std::int64_t>> flat;
  bounded_vectors(len, N, xi, flat);
  std::vector<TorusProfile> out;
  for (const auto &v : flat) {
    if (std::all_of(v.begin(), v.end(), [](auto c) { return c == 0; }))
      continue;
    TorusProfile p;
    std::size_t pos = 0;
    for (unsigned di : torus.degrees) {
      p.emplace_back(v.begin() + static_cast<long>(pos), v.begin() + static_cast<long>(pos + di));
      pos += di;
    }
    out.push_back(std::move(p));
  }
  return out;
}

RegularSearch search_regular_t(const TorusSpec &torus, const std::vector<TorusProfile> &profiles,
                               unsigned M, std::uint64_t budget) {
  for (unsigned di : torus.degrees)
    if (di == 0 || torus.d % di != 0)
      throw PreconditionViolation("component degrees must divide d");
  const std::uint64_t m = checked_power_minus_one(torus.l, torus.d);
  const std::size_t nu = torus.degrees.size();
  std::vector<std::uint64_t> sizes(nu), cofactor(nu);
  for (std::size_t i = 0; i < nu; ++i) {
    sizes[i] = checked_power_minus_one(torus.l, torus.degrees[i]);
    cofactor[i] = m / sizes[i];
  }
  // per profile, the exponent coefficient of each e_i
  std::vector<std::vector<std::uint64_t>> coeff;
  for (const auto &p : profiles) {
    if (p.size() != nu)
      throw PreconditionViolation("profile does not match the torus");
    bool zero = true;
    std::vector<std::uint64_t> c(nu);
    for (std::size_t i = 0; i < nu; ++i) {
      if (p[i].size() != torus.degrees[i])
        throw PreconditionViolation("profile does not match the torus");
      for (auto v : p[i])
        zero = zero && v == 0;
      c[i] = mulmod(mulmod(digit_value(p[i], torus.l, m), cofactor[i], m), M % m, m);
    }
    if (!zero)
      coeff.push_back(std::move(c));
  }
  RegularSearch out;
  out.torus_size = torus.size();
  if (static_cast<unsigned __int128>(out.torus_size) * std::max<std::size_t>(coeff.size(), 1) >
      budget)
    throw BudgetExceeded("torus scan exceeds the evaluation budget");
  std::vector<std::uint64_t> e(nu, 0);
  for (std::uint64_t step = 0; step < out.torus_size; ++step) {
    bool good = true;
    for (const auto &c : coeff) {
      std::uint64_t x = 0;
      for (std::size_t i = 0; i < nu; ++i)
        x = (x + mulmod(c[i], e[i], m)) % m;
      if (x == 0) {
        good = false;
        ++out.collisions;
      }
    }
    if (good && !out.t)
      out.t = e;
    for (std::size_t i = 0; i < nu; ++i) {
      if (++e[i] < sizes[i])
        break;
      e[i] = 0;
    }
  }
  return out;
}

Matrix very_regular_element(const Field &f, std::size_t n,
                            const std::vector<std::vector<std::int64_t>> &weights, unsigned M,
                            std::uint64_t budget) {
  const FieldSpec &k = *f;
  const unsigned deg = k.degree();
  const std::uint64_t m = k.order() - 1, l = k.characteristic();
  std::vector<std::vector<std::uint64_t>> coeff;
  for (const auto &w : weights) {
    if (w.size() != n * deg)
      throw PreconditionViolation("weight has the wrong length");
    std::vector<std::uint64_t> c(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::int64_t> row(w.begin() + static_cast<long>(i * deg),
                                    w.begin() + static_cast<long>((i + 1) * deg));
      c[i] = mulmod(digit_value(row, l, m), M % m, m);
    }
    coeff.push_back(std::move(c));
  }
  for (std::size_t a = 0; a < coeff.size(); ++a)
    for (std::size_t b = a + 1; b < coeff.size(); ++b)
      if (coeff[a] == coeff[b])
        throw NotFound("two weights agree on the whole torus");
  std::vector<std::uint64_t> e(n, 0), vals(coeff.size());
  for (std::uint64_t step = 0;; ++step) {
    if (step >= budget)
      throw BudgetExceeded("very_regular_element exceeded its budget");
    for (std::size_t w = 0; w < coeff.size(); ++w) {
      std::uint64_t x = 0;
      for (std::size_t i = 0; i < n; ++i)
        x = (x + mulmod(coeff[w][i], e[i], m)) % m;
      vals[w] = x;
    }
    auto sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
      Matrix g(f, n, n);
      for (std::size_t i = 0; i < n; ++i)
        g(i, i) = k.pow(k.primitive(), e[i]);
      return g;
    }
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++e[i] < m)
        break;
      e[i] = 0;
    }
    if (i == n)
      throw NotFound("no element of the torus separates the weights");
  }
}

std::uint64_t factorial(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= n; ++i)
    r *= i;
  return r;
}

NiveauCheck niveau_injectivity_check(std::uint64_t N, std::uint64_t delta, std::uint64_t l,
                                     unsigned d) {
  const std::uint64_t s = 2 * delta + 1;
  std::uint64_t count = 1;
  for (unsigned i = 0; i < d; ++i) {
    count *= s;
    if (count > 10'000'000)
      throw BudgetExceeded("digit domain exceeds 10^7 points");
  }
  const std::uint64_t m = checked_power_minus_one(l, d);
  auto decode = [&](std::uint64_t idx) {
    std::vector<std::int64_t> b(d);
    for (unsigned i = 0; i < d; ++i) {
      b[i] = static_cast<std::int64_t>(idx % s) - static_cast<std::int64_t>(delta);
      idx /= s;
    }
    return b;
  };
  std::vector<std::uint64_t> base(count);
  for (std::uint64_t idx = 0; idx < count; ++idx)
    base[idx] = digit_value(decode(idx), l, m);
  NiveauCheck out;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> vals(count);
  for (std::uint64_t r = 1; r <= factorial(N); ++r) {
    for (std::uint64_t idx = 0; idx < count; ++idx)
      vals[idx] = {mulmod(r % m, base[idx], m), idx};
    std::sort(vals.begin(), vals.end());
    for (std::uint64_t i = 1; i < count; ++i)
      if (vals[i].first == vals[i - 1].first) {
        out.injective = false;
        out.r = r;
        out.b1 = decode(vals[i - 1].second);
        out.b2 = decode(vals[i].second);
        return out;
      }
  }
  return out;
}

OrbitSweep orbit_bound_sweep(const std::vector<unsigned> &ds, std::uint64_t l_min,
                             std::uint64_t l_max, const std::vector<std::size_t> &xis,
                             const std::vector<std::int64_t> &ns, unsigned jobs) {
  OrbitSweep out;
  out.k = phi_constant();
  auto primes = prime_sieve(l_max);
  struct Point {
    unsigned d;
    std::uint64_t l;
    std::size_t xi;
    std::int64_t N;
  };
  std::vector<Point> points;
  for (unsigned d : ds)
    for (std::uint64_t l = l_min; l <= l_max; ++l)
      if (primes[l])
        for (std::size_t xi : xis)
          for (std::int64_t N : ns)
            points.push_back({d, l, xi, N});
  struct Part {
    std::vector<OrbitRow> rows;
    std::uint64_t skipped = 0;
  };
  auto parts = parallel_map<Part>(points.size(), jobs, [&](std::size_t idx) {
    const Point &p = points[idx];
    Part part;
    const double sup = std::pow(static_cast<double>(p.l) / (2.0 * static_cast<double>(p.xi) *
                                                            static_cast<double>(p.N)),
                                out.k);
    const double omega = std::floor(sup);
    if (omega < 1 || static_cast<double>(p.l) <= lemma_threshold(omega, p.xi, p.N, out.k))
      return part; // l is not above the threshold for any positive integer Omega
    std::vector<std::vector<std::int64_t>> mus;
    bounded_vectors(p.d, p.N, p.xi, mus);
    for (std::uint64_t q : prime_powers_dividing(p.d, p.d + 1, true))
      for (const auto &mu : mus) {
        if (is_zero(cyclotomic_sum(mu, q))) {
          ++part.skipped;
          continue;
        }
        part.rows.push_back({p.d, p.l, q, p.xi, p.N, omega, mu,
                             orbit_size_bound_check(mu, p.l, q, omega)});
      }
    return part;
  });
  for (auto &part : parts) {
    out.skipped_hypothesis += part.skipped;
    for (auto &r : part.rows) {
      out.violations += !r.result.pass;
      out.rows.push_back(std::move(r));
    }
  }
  return out;
}

ForcedZeroSweep forced_zero_sweep(unsigned d_max, unsigned jobs) {
  ForcedZeroSweep out;
  out.d_max = d_max;
  struct Part {
    std::uint64_t examined = 0, hold = 0;
    std::vector<std::vector<std::int64_t>> bad, bad_without_unit;
  };
  auto parts = parallel_map<Part>(d_max, jobs, [&](std::size_t idx) {
    const unsigned d = static_cast<unsigned>(idx + 1);
    Part part;
    std::vector<std::vector<std::int64_t>> mus;
    bounded_vectors(d, 1, d, mus);
    for (const auto &mu : mus) {
      ++part.examined;
      const bool nonzero = std::any_of(mu.begin(), mu.end(), [](auto v) { return v != 0; });
      if (forced_zero_check(mu, d + 1, true)) {
        ++part.hold;
        if (nonzero)
          part.bad.push_back(mu);
      }
      if (nonzero && forced_zero_check(mu, d + 1, false))
        part.bad_without_unit.push_back(mu);
    }
    return part;
  });
  for (auto &p : parts) {
    out.examined += p.examined;
    out.hypotheses_hold += p.hold;
    for (auto &m : p.bad)
      out.counterexamples.push_back(m);
    for (auto &m : p.bad_without_unit)
      out.counterexamples_without_unit.push_back(m);
  }
  return out;
}

std::vector<ConvolutionRow> convolution_sweep(std::size_t count, std::uint64_t seed,
                                              unsigned d_max, std::int64_t N, unsigned jobs) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::int64_t>> mus(count);
  for (auto &mu : mus) {
    const std::size_t d = 1 + rng() % d_max;
    mu.resize(d);
    // sparse profiles exercise vanishing Fourier coefficients
    const std::uint64_t density = 1 + rng() % 4;
    for (auto &v : mu)
      v = rng() % density == 0 ? static_cast<std::int64_t>(rng() % (2 * N + 1)) - N : 0;
  }
  return parallel_map<ConvolutionRow>(count, jobs, [&](std::size_t i) {
    return ConvolutionRow{mus[i], convolution_rank(mus[i])};
  });
}

std::vector<NiveauRow> niveau_sweep(std::uint64_t n_max, std::uint64_t delta_max, unsigned d_max,
                                    std::uint64_t max_modulus, unsigned jobs) {
  auto primes = prime_sieve(max_modulus + 1);
  std::vector<NiveauRow> points;
  for (std::uint64_t N = 1; N <= n_max; ++N)
    for (std::uint64_t delta = 0; delta <= delta_max; ++delta)
      for (unsigned d = 1; d <= d_max; ++d)
        for (std::uint64_t l = (3 * delta + 2) * factorial(N) + 1; l <= max_modulus + 1; ++l) {
          if (!primes[l])
            continue;
          unsigned __int128 v = 1;
          for (unsigned i = 0; i < d; ++i)
            v *= l;
          if (v - 1 > max_modulus)
            break;
          points.push_back({N, delta, l, d, {}});
        }
  return parallel_map<NiveauRow>(points.size(), jobs, [&](std::size_t i) {
    NiveauRow r = points[i];
    r.result = niveau_injectivity_check(r.N, r.delta, r.l, r.d);
    return r;
  });
}

std::vector<RegularTRow> regular_t_sweep(const std::vector<std::uint64_t> &primes,
                                         std::int64_t N, std::size_t xi, unsigned M,
                                         unsigned jobs) {
  std::vector<RegularTRow> points;
  const std::vector<std::pair<unsigned, std::vector<unsigned>>> shapes = {
      {1, {1}}, {1, {1, 1}}, {2, {2}}, {2, {1, 2}}};
  for (std::uint64_t l : primes)
    for (const auto &[d, degs] : shapes)
      points.push_back({TorusSpec{l, d, degs}, N, xi, M, 0, {}});
  return parallel_map<RegularTRow>(points.size(), jobs, [&](std::size_t i) {
    RegularTRow r = points[i];
    auto profiles = bounded_profiles(r.torus, N, xi);
    r.profile_count = profiles.size();
    r.result = search_regular_t(r.torus, profiles, M);
    return r;
  });
}

} // namespace bigcheck
