#pragma once

// Finite fields GF(p^k) for small odd p.
//
// Elements are stored in Zech-logarithm form: rep 0 is the zero element and
// rep r > 0 stands for g^(r-1), g the smallest primitive element of the field.
// Multiplication is an addition of logarithms; addition goes through the Zech
// table z(d) = log(1 + g^d).  The coefficient vector with respect to the power
// basis of the modulus is recovered through the "ordinal" sum c_i p^i, which
// also fixes the canonical order of elements.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gaussforge/error.hpp"

namespace gaussforge {

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense polynomials over GF(p), coefficient i is the coefficient of t^i.
using ModPoly = std::vector<unsigned>;

inline void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b.
inline ModPoly poly_rem(ModPoly a, const ModPoly& b, unsigned p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const unsigned lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
    trim(a);
  }
  return a;
}

inline ModPoly poly_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, unsigned p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_rem(std::move(r), m, p);
}

inline ModPoly poly_powmod(ModPoly base, std::uint64_t e, const ModPoly& m, unsigned p) {
  ModPoly r{1};
  base = poly_rem(std::move(base), m, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

// Digits of `value` in base p, length `len`.
inline ModPoly digits(std::uint64_t value, unsigned p, std::size_t len) {
  ModPoly d(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    d[i] = static_cast<unsigned>(value % p);
    value /= p;
  }
  return d;
}

inline std::uint32_t from_digits(const ModPoly& d, unsigned p) {
  std::uint64_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return static_cast<std::uint32_t>(v);
}

// Monic, degree k = low.size(); irreducible iff no monic factor of degree <= k/2.
inline bool is_irreducible_monic(const ModPoly& low, unsigned p) {
  const std::size_t k = low.size();
  if (k == 1) return true;
  if (low[0] == 0) return false;
  ModPoly m = low;
  m.push_back(1);
  for (std::size_t deg = 1; deg <= k / 2; ++deg) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      ModPoly div = digits(c, p, deg);
      div.push_back(1);
      if (poly_rem(m, div, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

class FieldCtx;

/// Element of a FieldCtx.  Cheap to copy; the context outlives every element
/// because contexts are interned for the process lifetime.
class Scalar {
 public:
  using Rep = std::uint32_t;

  Scalar() = default;
  Scalar(const FieldCtx& field, Rep rep) : field_(&field), rep_(rep) {}

  const FieldCtx& field() const;
  bool has_field() const noexcept { return field_ != nullptr; }
  Rep rep() const noexcept { return rep_; }
  bool is_zero() const noexcept { return rep_ == 0; }
  bool is_one() const noexcept { return rep_ == 1; }

  std::uint32_t ordinal() const;
  std::vector<unsigned> coeffs() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar inv() const;
  Scalar pow(std::int64_t e) const;
  Scalar frobenius() const;

  friend bool operator==(const Scalar& a, const Scalar& b) noexcept {
    return a.field_ == b.field_ && a.rep_ == b.rep_;
  }
  // Canonical order: by ordinal.
  friend bool operator<(const Scalar& a, const Scalar& b) { return a.ordinal() < b.ordinal(); }

 private:
  const FieldCtx& checked(const Scalar& o) const;

  const FieldCtx* field_ = nullptr;
  Rep rep_ = 0;
};

class FieldCtx {
 public:
  using Rep = Scalar::Rep;

  static constexpr unsigned kMaxPrime = 256;
  static constexpr unsigned kMaxDegree = 8;
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

  /// Interned context for GF(p^k).  Throws FieldError for unsupported input.
  static const FieldCtx& get(unsigned p, unsigned k);

  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

  unsigned p() const noexcept { return p_; }
  unsigned k() const noexcept { return k_; }
  std::uint32_t order() const noexcept { return q_; }
  /// Low coefficients c_0..c_{k-1} of the monic modulus t^k + sum c_i t^i.
  const std::vector<unsigned>& modulus() const noexcept { return modulus_; }
  /// Ordinal of the primitive element used for logarithms.
  std::uint32_t generator_ordinal() const noexcept { return exp_.empty() ? 0 : exp_[1 % exp_.size()]; }

  // Raw arithmetic on reps.
  Rep add(Rep a, Rep b) const noexcept {
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t la = a - 1, lb = b - 1;
    const std::uint32_t d = lb >= la ? lb - la : lb + qm1_ - la;
    const Rep z = zech_[d];
    if (z == 0) return 0;
    return mul(a, z);
  }
  Rep neg(Rep a) const noexcept { return a == 0 ? 0 : mul(a, minus_one_); }
  Rep sub(Rep a, Rep b) const noexcept { return add(a, neg(b)); }
  Rep mul(Rep a, Rep b) const noexcept {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = (a - 1) + (b - 1);
    if (s >= qm1_) s -= qm1_;
    return s + 1;
  }
  Rep inv(Rep a) const {
    if (a == 0) throw FieldError("division by zero");
    return a == 1 ? 1 : qm1_ - (a - 1) + 1;
  }
  Rep div(Rep a, Rep b) const { return mul(a, inv(b)); }
  Rep pow(Rep a, std::int64_t e) const {
    if (a == 0) {
      if (e > 0) return 0;
      if (e == 0) return 1;
      throw FieldError("division by zero");
    }
    std::int64_t r = e % static_cast<std::int64_t>(qm1_);
    if (r < 0) r += qm1_;
    return static_cast<Rep>((static_cast<std::uint64_t>(a - 1) * static_cast<std::uint64_t>(r)) % qm1_) + 1;
  }
  Rep frobenius(Rep a) const noexcept {
    if (a == 0) return 0;
    return static_cast<Rep>((static_cast<std::uint64_t>(a - 1) * p_) % qm1_) + 1;
  }
  /// Inverse of Frobenius, i.e. the unique p-th root.
  Rep frobenius_inverse(Rep a) const noexcept {
    if (a == 0) return 0;
    return static_cast<Rep>((static_cast<std::uint64_t>(a - 1) * pinv_) % qm1_) + 1;
  }

  std::uint32_t ordinal(Rep a) const noexcept { return a == 0 ? 0 : exp_[a - 1]; }
  Rep from_ordinal(std::uint32_t ord) const {
    if (ord >= q_) throw FieldError("ordinal out of range");
    return log_[ord];
  }
  Rep from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return log_[static_cast<std::uint32_t>(r)];
  }
  std::vector<unsigned> coeffs(Rep a) const { return detail::digits(ordinal(a), p_, k_); }
  Rep from_coeffs(std::span<const std::int64_t> c) const {
    if (c.size() > k_) throw FieldError("too many coefficients for GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")");
    detail::ModPoly d(k_, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::int64_t r = c[i] % static_cast<std::int64_t>(p_);
      d[i] = static_cast<unsigned>(r < 0 ? r + p_ : r);
    }
    return log_[detail::from_digits(d, p_)];
  }

  Scalar zero() const { return {*this, 0}; }
  Scalar one() const { return {*this, 1}; }
  Scalar scalar(std::int64_t n) const { return {*this, from_int(n)}; }
  Scalar from_ordinal_scalar(std::uint32_t ord) const { return {*this, from_ordinal(ord)}; }
  /// All elements in canonical (ordinal) order.
  std::vector<Scalar> elements() const {
    std::vector<Scalar> out;
    out.reserve(q_);
    for (std::uint32_t o = 0; o < q_; ++o) out.emplace_back(*this, log_[o]);
    return out;
  }

  bool is_prime_field() const noexcept { return k_ == 1; }
  std::string name() const {
    return k_ == 1 ? "GF(" + std::to_string(p_) + ")" : "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")";
  }

 private:
  FieldCtx(unsigned p, unsigned k);

  unsigned p_;
  unsigned k_;
  std::uint32_t q_;
  std::uint32_t qm1_;
  std::uint64_t pinv_ = 1;  // p^(k-1) mod (q-1)
  Rep minus_one_ = 1;
  std::vector<unsigned> modulus_;
  std::vector<std::uint32_t> exp_;  // exp_[i] = ordinal of g^i
  std::vector<Rep> log_;            // log_[ordinal] = rep
  std::vector<Rep> zech_;           // zech_[d] = rep of 1 + g^d
};

inline FieldCtx::FieldCtx(unsigned p, unsigned k) : p_(p), k_(k) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) q *= p;
  q_ = static_cast<std::uint32_t>(q);
  qm1_ = q_ - 1;

  // Lexicographically smallest monic irreducible: candidates ordered by the
  // integer sum c_i p^i of their low coefficients.
  for (std::uint64_t c = 0; c < q; ++c) {
    auto low = detail::digits(c, p, k);
    if (detail::is_irreducible_monic(low, p)) {
      modulus_ = std::move(low);
      break;
    }
  }
  detail::ModPoly m = modulus_;
  m.push_back(1);

  // Smallest primitive element by ordinal.
  const auto factors = detail::prime_factors(qm1_);
  detail::ModPoly gen;
  for (std::uint64_t cand = 1; cand < q; ++cand) {
    auto g = detail::digits(cand, p, k);
    detail::trim(g);
    bool primitive = true;
    for (auto r : factors) {
      auto t = detail::poly_powmod(g, qm1_ / r, m, p);
      if (t.size() == 1 && t[0] == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = g;
      break;
    }
  }
  if (qm1_ == 1) gen = {1};  // GF(2) is excluded, kept for completeness

  exp_.resize(qm1_);
  log_.assign(q_, 0);
  detail::ModPoly cur{1};
  for (std::uint32_t i = 0; i < qm1_; ++i) {
    auto d = cur;
    d.resize(k, 0);
    const auto ord = detail::from_digits(d, p);
    exp_[i] = ord;
    log_[ord] = i + 1;
    cur = detail::poly_mulmod(cur, gen, m, p);
  }
  zech_.resize(qm1_);
  for (std::uint32_t d = 0; d < qm1_; ++d) {
    const std::uint32_t ord = exp_[d];
    const std::uint32_t c0 = ord % p;
    zech_[d] = log_[ord - c0 + (c0 + 1) % p];
  }
  minus_one_ = log_[p - 1];
  pinv_ = 1;
  for (unsigned i = 0; i + 1 < k; ++i) pinv_ = (pinv_ * p) % qm1_;
}

inline const FieldCtx& FieldCtx::get(unsigned p, unsigned k) {
  if (!detail::is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (p == 2) throw FieldError("characteristic 2 is not supported");
  if (p > kMaxPrime) throw FieldError("characteristic " + std::to_string(p) + " exceeds " + std::to_string(kMaxPrime));
  if (k == 0) throw FieldError("extension degree must be at least 1");
  if (k > kMaxDegree) throw FieldError("extension degree " + std::to_string(k) + " exceeds " + std::to_string(kMaxDegree));
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxOrder) throw FieldError("field order " + std::to_string(p) + "^" + std::to_string(k) + " exceeds supported size 2^20");
  }

  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<FieldCtx>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{p, k}];
  if (!slot) slot.reset(new FieldCtx(p, k));
  return *slot;
}

/// Field creation entry point.
inline const FieldCtx& field_create(unsigned p, unsigned k) { return FieldCtx::get(p, k); }

// ---- Scalar ----

inline const FieldCtx& Scalar::field() const {
  if (!field_) throw FieldError("scalar has no field");
  return *field_;
}

inline const FieldCtx& Scalar::checked(const Scalar& o) const {
  if (!field_ || field_ != o.field_) throw FieldError("field context mismatch");
  return *field_;
}

inline std::uint32_t Scalar::ordinal() const { return field().ordinal(rep_); }
inline std::vector<unsigned> Scalar::coeffs() const { return field().coeffs(rep_); }
inline Scalar Scalar::operator+(const Scalar& o) const { return {checked(o), field_->add(rep_, o.rep_)}; }
inline Scalar Scalar::operator-(const Scalar& o) const { return {checked(o), field_->sub(rep_, o.rep_)}; }
inline Scalar Scalar::operator*(const Scalar& o) const { return {checked(o), field_->mul(rep_, o.rep_)}; }
inline Scalar Scalar::operator/(const Scalar& o) const { return {checked(o), field_->div(rep_, o.rep_)}; }
inline Scalar Scalar::operator-() const { return {field(), field_->neg(rep_)}; }
inline Scalar Scalar::inv() const { return {field(), field_->inv(rep_)}; }
inline Scalar Scalar::pow(std::int64_t e) const { return {field(), field_->pow(rep_, e)}; }
inline Scalar Scalar::frobenius() const { return {field(), field_->frobenius(rep_)}; }

inline Scalar frobenius(const Scalar& a) { return a.frobenius(); }

/// All x with x^n = a, in canonical order.
inline std::vector<Scalar> nth_roots(const Scalar& a, std::uint64_t n) {
  if (n == 0) throw FieldError("root order must be positive");
  const FieldCtx& F = a.field();
  if (a.is_zero()) return {F.zero()};

  // n = p^j: unique root through the inverse Frobenius.
  std::uint64_t m = n;
  unsigned j = 0;
  while (m % F.p() == 0) {
    m /= F.p();
    ++j;
  }
  if (m == 1) {
    Scalar::Rep r = a.rep();
    for (unsigned i = 0; i < j; ++i) r = F.frobenius_inverse(r);
    return {Scalar(F, r)};
  }

  // Discrete-log route: solve n*x = log(a) mod (q-1).
  const std::uint64_t order = F.order() - 1;
  const std::uint64_t la = a.rep() - 1;
  const std::uint64_t nr = n % order;
  const std::uint64_t g = std::gcd(nr, order);
  if (la % g != 0) return {};
  const std::uint64_t mod = order / g;
  std::uint64_t x0 = 0;
  if (mod > 1) {
    // inverse of (nr/g) mod `mod` by extended Euclid
    std::int64_t t0 = 0, t1 = 1;
    std::int64_t r0 = static_cast<std::int64_t>(mod), r1 = static_cast<std::int64_t>((nr / g) % mod);
    while (r1 != 0) {
      const std::int64_t qt = r0 / r1;
      std::tie(t0, t1) = std::pair{t1, t0 - qt * t1};
      std::tie(r0, r1) = std::pair{r1, r0 - qt * r1};
    }
    const std::uint64_t inv = static_cast<std::uint64_t>((t0 % static_cast<std::int64_t>(mod) + static_cast<std::int64_t>(mod)) %
                                                         static_cast<std::int64_t>(mod));
    x0 = ((la / g) % mod) * inv % mod;
  }
  std::vector<Scalar> out;
  out.reserve(g);
  for (std::uint64_t t = 0; t < g; ++t)
    out.emplace_back(F, static_cast<Scalar::Rep>((x0 + t * mod) % order) + 1);
  std::sort(out.begin(), out.end());
  return out;
}

// ---- text syntax: "2", "-1", "[c0,c1,...]" ----

inline std::string to_string(const Scalar& a) {
  const FieldCtx& F = a.field();
  if (F.is_prime_field()) return std::to_string(a.ordinal());
  std::string s = "[";
  const auto c = a.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + "]";
}

namespace detail {

inline void skip_ws(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r')) ++pos;
}

// Signed decimal integer reduced mod p.  Digits are folded modulo p so long
// literals do not overflow.
inline std::int64_t parse_int_mod(std::string_view s, std::size_t& pos, unsigned p) {
  skip_ws(s, pos);
  bool negative = false;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
    negative = s[pos] == '-';
    ++pos;
    skip_ws(s, pos);
  }
  if (pos >= s.size() || s[pos] < '0' || s[pos] > '9') throw ParseError(pos, "expected integer");
  std::int64_t v = 0;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
    v = (v * 10 + (s[pos] - '0')) % p;
    ++pos;
  }
  return negative ? -v : v;
}

// Parses a scalar starting at pos; advances pos.
inline Scalar parse_scalar_at(std::string_view s, std::size_t& pos, const FieldCtx& F) {
  skip_ws(s, pos);
  if (pos < s.size() && s[pos] == '[') {
    ++pos;
    std::vector<std::int64_t> c;
    while (true) {
      c.push_back(parse_int_mod(s, pos, F.p()));
      skip_ws(s, pos);
      if (pos < s.size() && s[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < s.size() && s[pos] == ']') {
        ++pos;
        break;
      }
      throw ParseError(pos, "expected ',' or ']' in extension element");
    }
    if (c.size() > F.k()) throw ParseError(pos, "extension element has more than " + std::to_string(F.k()) + " coordinates");
    return Scalar(F, F.from_coeffs(c));
  }
  return F.scalar(parse_int_mod(s, pos, F.p()));
}

}  // namespace detail

inline Scalar parse_scalar(std::string_view text, const FieldCtx& F) {
  std::size_t pos = 0;
  Scalar v = detail::parse_scalar_at(text, pos, F);
  detail::skip_ws(text, pos);
  if (pos != text.size()) throw ParseError(pos, "trailing characters after scalar");
  return v;
}

/// Comma-separated scalars; commas inside brackets do not split.
inline std::vector<Scalar> parse_scalar_list(std::string_view text, const FieldCtx& F) {
  std::vector<Scalar> out;
  std::size_t pos = 0;
  detail::skip_ws(text, pos);
  if (pos < text.size() && text[pos] == '(') ++pos;
  while (true) {
    out.push_back(detail::parse_scalar_at(text, pos, F));
    detail::skip_ws(text, pos);
    if (pos < text.size() && (text[pos] == ',' || text[pos] == ':')) {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == ')') {
      ++pos;
      detail::skip_ws(text, pos);
    }
    if (pos != text.size()) throw ParseError(pos, "expected ',' between coordinates");
    return out;
  }
}

/// Embedding GF(p^k) -> GF(p^(k*m)).  The generator t of the small field goes
/// to the smallest (by ordinal) root of its modulus in the large field; equal
/// fields embed by the identity.
class FieldEmbedding {
 public:
  FieldEmbedding(const FieldCtx& from, const FieldCtx& to) : from_(&from), to_(&to) {
    if (from.p() != to.p() || to.k() % from.k() != 0)
      throw FieldError("no embedding " + from.name() + " -> " + to.name());
    table_.resize(from.order());
    if (&from == &to) {
      for (std::uint32_t o = 0; o < from.order(); ++o) table_[o] = from.from_ordinal(o);
      return;
    }
    // root of t^k + sum c_i t^i in the large field
    Scalar::Rep root = 0;
    bool found = false;
    for (std::uint32_t o = 0; o < to.order() && !found; ++o) {
      const Scalar::Rep r = to.from_ordinal(o);
      Scalar::Rep acc = 1;  // leading coefficient
      for (std::size_t i = from.k(); i-- > 0;) acc = to.add(to.mul(acc, r), to.from_int(from.modulus()[i]));
      if (acc == 0) {
        root = r;
        found = true;
      }
    }
    if (!found) throw FieldError("modulus of " + from.name() + " has no root in " + to.name());
    std::vector<Scalar::Rep> powers(from.k());
    for (unsigned i = 0; i < from.k(); ++i) powers[i] = to.pow(root, i);
    for (std::uint32_t o = 0; o < from.order(); ++o) {
      const auto c = detail::digits(o, from.p(), from.k());
      Scalar::Rep acc = 0;
      for (unsigned i = 0; i < from.k(); ++i) acc = to.add(acc, to.mul(to.from_int(c[i]), powers[i]));
      table_[o] = acc;
    }
  }

  const FieldCtx& from() const noexcept { return *from_; }
  const FieldCtx& to() const noexcept { return *to_; }

  Scalar operator()(const Scalar& a) const {
    if (&a.field() != from_) throw FieldError("embedding applied to an element of the wrong field");
    return Scalar(*to_, table_[a.ordinal()]);
  }

 private:
  const FieldCtx* from_;
  const FieldCtx* to_;
  std::vector<Scalar::Rep> table_;
};

}  // namespace gaussforge
