#include "bigcheck/ff.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "bigcheck/poly.hpp"

namespace bigcheck {

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0)
      return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0)
        n /= p;
    }
  }
  if (n > 1)
    out.push_back(n);
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--)
    r *= base;
  return r;
}

namespace {

// x^(l^i) - x has every irreducible of degree dividing i as a factor, so
// an irreducible of degree d shares no factor with it for i <= d/2.
bool modulus_irreducible(std::uint64_t l, const std::vector<std::uint64_t> &m) {
  FieldSpec prime(l, {0, 1});
  Poly p(m.begin(), m.end());
  return poly::is_irreducible(prime, p);
}

} // namespace

FieldSpec::FieldSpec(std::uint64_t l, std::vector<std::uint64_t> modulus)
    : l_(l), modulus_(std::move(modulus)) {
  if (!is_prime(l))
    throw NotPrime(std::to_string(l) + " is not prime");
  if (modulus_.size() < 2 || modulus_.back() != 1)
    throw PreconditionViolation("modulus must be monic of degree >= 1");
  for (auto c : modulus_)
    if (c >= l)
      throw PreconditionViolation("modulus coefficients must lie in [0, l)");
  d_ = static_cast<unsigned>(modulus_.size() - 1);
  long double approx = 1;
  for (unsigned i = 0; i < d_; ++i)
    approx *= static_cast<long double>(l);
  if (approx > static_cast<long double>(kDefaultFieldBound))
    throw TooLarge("field of order " + std::to_string(l) + "^" + std::to_string(d_));
  q_ = ipow(l, d_);
  if (d_ > 1) {
    if (!modulus_irreducible(l, modulus_))
      throw PreconditionViolation("modulus is reducible over F_" + std::to_string(l));
    if (q_ <= kTableBound)
      build_tables();
  }
}

std::vector<std::uint64_t> FieldSpec::coeffs(Elt a) const {
  std::vector<std::uint64_t> c(d_);
  for (unsigned i = 0; i < d_; ++i) {
    c[i] = a % l_;
    a /= l_;
  }
  return c;
}

Elt FieldSpec::encode(std::span<const std::uint64_t> c) const {
  if (c.size() != d_)
    throw PreconditionViolation("element needs " + std::to_string(d_) + " coefficients");
  Elt v = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= l_)
      throw PreconditionViolation("coefficient out of range [0, l)");
    v = v * l_ + c[i];
  }
  return v;
}

Elt FieldSpec::add_slow(Elt a, Elt b) const {
  Elt r = 0, place = 1;
  for (unsigned i = 0; i < d_; ++i) {
    Elt s = a % l_ + b % l_;
    if (s >= l_)
      s -= l_;
    r += s * place;
    place *= l_;
    a /= l_;
    b /= l_;
  }
  return r;
}

Elt FieldSpec::neg_slow(Elt a) const {
  Elt r = 0, place = 1;
  for (unsigned i = 0; i < d_; ++i) {
    Elt c = a % l_;
    r += (c == 0 ? 0 : l_ - c) * place;
    place *= l_;
    a /= l_;
  }
  return r;
}

Elt FieldSpec::mul_slow(Elt a, Elt b) const {
  auto ca = coeffs(a), cb = coeffs(b);
  std::vector<unsigned __int128> prod(2 * d_ - 1, 0);
  for (unsigned i = 0; i < d_; ++i)
    if (ca[i])
      for (unsigned j = 0; j < d_; ++j)
        prod[i + j] += static_cast<unsigned __int128>(ca[i]) * cb[j];
  std::vector<std::uint64_t> r(prod.size());
  for (std::size_t i = 0; i < prod.size(); ++i)
    r[i] = static_cast<std::uint64_t>(prod[i] % l_);
  // reduce by the monic modulus from the top
  for (std::size_t k = r.size(); k-- > d_;) {
    std::uint64_t c = r[k];
    if (!c)
      continue;
    r[k] = 0;
    for (unsigned j = 0; j < d_; ++j) {
      std::uint64_t sub = static_cast<std::uint64_t>(
          (static_cast<unsigned __int128>(c) * modulus_[j]) % l_);
      std::uint64_t &t = r[k - d_ + j];
      t = (t + l_ - sub) % l_;
    }
  }
  r.resize(d_);
  return encode(r);
}

void FieldSpec::build_tables() {
  // find the smallest code of multiplicative order q-1 with slow arithmetic
  auto factors = prime_factors(q_ - 1);
  auto slow_pow = [&](Elt a, std::uint64_t e) {
    Elt r = 1;
    while (e) {
      if (e & 1)
        r = mul_slow(r, a);
      a = mul_slow(a, a);
      e >>= 1;
    }
    return r;
  };
  Elt g = 0;
  for (Elt cand = 2; cand < q_; ++cand) {
    bool ok = true;
    for (auto p : factors)
      if (slow_pow(cand, (q_ - 1) / p) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      g = cand;
      break;
    }
  }
  exp_.resize(q_ - 1);
  log_.assign(q_, 0);
  Elt cur = 1;
  for (std::uint64_t e = 0; e < q_ - 1; ++e) {
    exp_[e] = static_cast<std::uint32_t>(cur);
    log_[cur] = static_cast<std::uint32_t>(e);
    cur = mul_slow(cur, g);
  }
  table_generator_ = g;
}

Elt FieldSpec::pow(Elt a, std::uint64_t e) const {
  if (e == 0)
    return 1;
  if (a == 0)
    return 0;
  if (!log_.empty()) {
    auto r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(log_[a]) * e) % (q_ - 1));
    return exp_[r];
  }
  Elt r = 1;
  while (e) {
    if (e & 1)
      r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elt FieldSpec::inv(Elt a) const {
  if (a == 0)
    throw DivisionByZero("inverse of zero in " + name());
  if (!log_.empty())
    return exp_[log_[a] == 0 ? 0 : (q_ - 1) - log_[a]];
  return pow(a, q_ - 2);
}

Elt FieldSpec::frobenius(Elt a, unsigned i) const {
  i %= d_;
  for (unsigned k = 0; k < i; ++k)
    a = pow(a, l_);
  return a;
}

std::uint64_t FieldSpec::element_order(Elt a) const {
  if (a == 0)
    throw ZeroArgument("order of zero");
  std::uint64_t ord = q_ - 1;
  for (auto p : prime_factors(q_ - 1))
    while (ord % p == 0 && pow(a, ord / p) == 1)
      ord /= p;
  return ord;
}

Elt FieldSpec::primitive() const {
  std::call_once(primitive_once_, [this] {
    if (q_ > kDiscreteLogBound)
      return;
    if (q_ == 2) {
      primitive_ = 1;
      return;
    }
    for (Elt c = 1; c < q_; ++c)
      if (element_order(c) == q_ - 1) {
        primitive_ = c;
        return;
      }
  });
  if (primitive_ == 0)
    throw TooLarge("primitive element search limited to fields of order <= 2^24");
  return primitive_;
}

std::uint64_t FieldSpec::discrete_log(Elt g, Elt x) const {
  if (x == 0)
    throw ZeroArgument("discrete log of zero");
  if (q_ > kDiscreteLogBound)
    throw TooLarge("discrete log limited to fields of order <= 2^24");
  const std::uint64_t n = q_ - 1;
  if (n == 1)
    return 0;
  if (!log_.empty()) {
    // log_g(x) = log_t(x) / log_t(g) mod n
    std::int64_t a = log_[g], m = static_cast<std::int64_t>(n);
    std::int64_t old_r = a, r = m, old_s = 1, s = 0;
    while (r != 0) {
      auto qt = old_r / r;
      std::tie(old_r, r) = std::make_pair(r, old_r - qt * r);
      std::tie(old_s, s) = std::make_pair(s, old_s - qt * s);
    }
    if (old_r != 1)
      throw PreconditionViolation("discrete log base is not primitive");
    auto inv = static_cast<std::uint64_t>((old_s % m + m) % m);
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(log_[x]) * inv) % n);
  }
  // baby-step giant-step
  std::uint64_t m = 1;
  while (m * m < n)
    ++m;
  std::unordered_map<Elt, std::uint64_t> baby;
  baby.reserve(m * 2);
  Elt cur = 1;
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = mul(cur, g);
  }
  Elt giant = inv(cur);
  Elt y = x;
  for (std::uint64_t i = 0; i <= m; ++i) {
    if (auto it = baby.find(y); it != baby.end())
      return (i * m + it->second) % n;
    y = mul(y, giant);
  }
  throw PreconditionViolation("discrete log base is not primitive");
}

std::string FieldSpec::name() const {
  if (d_ == 1)
    return "F_" + std::to_string(l_);
  return "F_" + std::to_string(l_) + "^" + std::to_string(d_);
}

namespace {

std::mutex registry_mutex;
std::map<std::pair<std::uint64_t, unsigned>, Field> &registry() {
  static std::map<std::pair<std::uint64_t, unsigned>, Field> r;
  return r;
}

} // namespace

Field make_field(std::uint64_t l, unsigned d, std::uint64_t bound) {
  if (!is_prime(l))
    throw NotPrime(std::to_string(l) + " is not prime");
  if (d == 0)
    throw PreconditionViolation("degree must be positive");
  long double approx = 1;
  for (unsigned i = 0; i < d; ++i)
    approx *= static_cast<long double>(l);
  if (approx > static_cast<long double>(bound))
    throw TooLarge("field of order " + std::to_string(l) + "^" + std::to_string(d) +
                   " exceeds bound");
  std::lock_guard lock(registry_mutex);
  auto key = std::make_pair(l, d);
  if (auto it = registry().find(key); it != registry().end())
    return it->second;
  std::vector<std::uint64_t> modulus;
  if (d == 1) {
    modulus = {0, 1};
  } else {
    FieldSpec prime(l, {0, 1});
    const std::uint64_t count = ipow(l, d);
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly cand(d + 1);
      std::uint64_t c = code;
      for (unsigned i = 0; i < d; ++i) {
        cand[i] = c % l;
        c /= l;
      }
      cand[d] = 1;
      if (cand[0] == 0)
        continue;
      if (poly::is_irreducible(prime, cand)) {
        modulus.assign(cand.begin(), cand.end());
        break;
      }
    }
  }
  auto f = std::make_shared<const FieldSpec>(l, modulus);
  registry().emplace(key, f);
  return f;
}

Field make_field_with_modulus(std::uint64_t l, std::vector<std::uint64_t> modulus) {
  if (modulus.size() < 2)
    throw PreconditionViolation("modulus must have degree >= 1");
  auto canonical = make_field(l, static_cast<unsigned>(modulus.size() - 1));
  if (canonical->modulus() == modulus)
    return canonical;
  return std::make_shared<const FieldSpec>(l, std::move(modulus));
}

bool same_field(const Field &a, const Field &b) {
  return a == b || (a && b && *a == *b);
}

void require_same_field(const Field &a, const Field &b) {
  if (!same_field(a, b))
    throw FieldMismatch((a ? a->name() : "null") + " vs " + (b ? b->name() : "null"));
}

FieldElement FieldElement::from_coeffs(Field f, std::span<const std::uint64_t> c) {
  Elt v = f->encode(c);
  return {std::move(f), v};
}

FieldElement FieldElement::operator+(const FieldElement &o) const {
  require_same_field(field_, o.field_);
  return {field_, field_->add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement &o) const {
  require_same_field(field_, o.field_);
  return {field_, field_->sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement &o) const {
  require_same_field(field_, o.field_);
  return {field_, field_->mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement &o) const {
  require_same_field(field_, o.field_);
  if (o.value_ == 0)
    throw DivisionByZero("division by zero in " + field_->name());
  return {field_, field_->div(value_, o.value_)};
}

FieldElement arith(const FieldElement &a, const FieldElement &b, ArithOp op) {
  switch (op) {
  case ArithOp::add:
    return a + b;
  case ArithOp::sub:
    return a - b;
  case ArithOp::mul:
    return a * b;
  case ArithOp::div:
    return a / b;
  }
  throw PreconditionViolation("unknown op");
}

FieldElement primitive_element(const Field &f) { return {f, f->primitive()}; }

std::uint64_t discrete_log(const FieldElement &g, const FieldElement &x) {
  require_same_field(g.field(), x.field());
  return g.field()->discrete_log(g.value(), x.value());
}

} // namespace bigcheck
