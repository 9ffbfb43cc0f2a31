#pragma once

// Sparse multivariate polynomials over GF(p^k) in variables Z0..Z{n-1}.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gaussforge/error.hpp"
#include "gaussforge/gf.hpp"

namespace gaussforge {

using Exponents = std::vector<unsigned>;

inline unsigned total_degree(const Exponents& e) {
  unsigned d = 0;
  for (auto x : e) d += x;
  return d;
}

/// Graded-lex, largest first: higher total degree, then larger exponent of Z0, Z1, ...
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

class MultiPoly {
 public:
  using Terms = std::map<Exponents, Scalar, GradedLexGreater>;

  MultiPoly(const FieldCtx& field, std::size_t num_vars) : field_(&field), num_vars_(num_vars) {}

  static MultiPoly constant(const FieldCtx& field, std::size_t num_vars, const Scalar& c) {
    MultiPoly r(field, num_vars);
    r.add_term(Exponents(num_vars, 0), c);
    return r;
  }
  static MultiPoly variable(const FieldCtx& field, std::size_t num_vars, std::size_t i) {
    if (i >= num_vars) throw DimensionError("variable index " + std::to_string(i) + " out of range");
    MultiPoly r(field, num_vars);
    Exponents e(num_vars, 0);
    e[i] = 1;
    r.add_term(e, field.one());
    return r;
  }

  const FieldCtx& field() const noexcept { return *field_; }
  std::size_t num_vars() const noexcept { return num_vars_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const noexcept { return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.begin()->first)); }

  bool is_homogeneous() const noexcept {
    if (terms_.empty()) return true;
    const unsigned d = total_degree(terms_.begin()->first);
    return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return total_degree(t.first) == d; });
  }

  unsigned max_exponent(std::size_t var) const {
    unsigned m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, e[var]);
    return m;
  }

  /// Adds c * Z^e, merging with an existing term and dropping zeros.
  void add_term(const Exponents& e, const Scalar& c) {
    if (e.size() != num_vars_) throw DimensionError("exponent vector has wrong length");
    if (&c.field() != field_) throw FieldError("field context mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  Scalar coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? field_->zero() : it->second;
  }

  MultiPoly operator+(const MultiPoly& o) const {
    check_compatible(o);
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }
  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  MultiPoly operator-(const MultiPoly& o) const { return *this + (-o); }
  MultiPoly operator*(const MultiPoly& o) const {
    check_compatible(o);
    MultiPoly r(*field_, num_vars_);
    Exponents e(num_vars_);
    for (const auto& [ea, ca] : terms_) {
      for (const auto& [eb, cb] : o.terms_) {
        for (std::size_t i = 0; i < num_vars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  MultiPoly operator*(const Scalar& s) const {
    MultiPoly r(*field_, num_vars_);
    for (const auto& [e, c] : terms_) r.add_term(e, c * s);
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly pow(unsigned e) const {
    MultiPoly r = constant(*field_, num_vars_, field_->one());
    MultiPoly b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.field_ == b.field_ && a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  /// Formal partial derivative; exponents act through their residue mod p.
  MultiPoly partial_derivative(std::size_t i) const {
    if (i >= num_vars_) throw DimensionError("variable index " + std::to_string(i) + " out of range");
    MultiPoly r(*field_, num_vars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      const Scalar factor = field_->scalar(e[i]);
      if (factor.is_zero()) continue;
      Exponents ne = e;
      --ne[i];
      r.add_term(ne, c * factor);
    }
    return r;
  }

  Scalar evaluate(std::span<const Scalar> point) const {
    if (point.size() != num_vars_)
      throw DimensionError("point has " + std::to_string(point.size()) + " coordinates, expected " + std::to_string(num_vars_));
    for (const auto& s : point)
      if (&s.field() != field_) throw FieldError("field context mismatch");
    // powers[v][j] = point[v]^j
    std::vector<std::vector<Scalar>> powers(num_vars_);
    for (std::size_t v = 0; v < num_vars_; ++v) {
      const unsigned m = max_exponent(v);
      powers[v].reserve(m + 1);
      powers[v].push_back(field_->one());
      for (unsigned j = 1; j <= m; ++j) powers[v].push_back(powers[v].back() * point[v]);
    }
    Scalar acc = field_->zero();
    for (const auto& [e, c] : terms_) {
      Scalar t = c;
      for (std::size_t v = 0; v < num_vars_ && !t.is_zero(); ++v) t *= powers[v][e[v]];
      acc += t;
    }
    return acc;
  }

  /// f(M W): variable Z_i becomes sum_j M[i][j] W_j over new variables W.
  MultiPoly substitute_linear(const std::vector<std::vector<Scalar>>& map) const {
    if (map.size() != num_vars_)
      throw DimensionError("substitution has " + std::to_string(map.size()) + " rows, expected " + std::to_string(num_vars_));
    const std::size_t m = map.empty() ? 0 : map[0].size();
    std::vector<std::vector<MultiPoly>> powers;
    powers.reserve(num_vars_);
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (map[i].size() != m) throw DimensionError("ragged substitution matrix");
      MultiPoly form(*field_, m);
      for (std::size_t j = 0; j < m; ++j) {
        Exponents e(m, 0);
        e[j] = 1;
        form.add_term(e, map[i][j]);
      }
      std::vector<MultiPoly> pw{constant(*field_, m, field_->one())};
      const unsigned top = max_exponent(i);
      for (unsigned k = 1; k <= top; ++k) pw.push_back(pw.back() * form);
      powers.push_back(std::move(pw));
    }
    MultiPoly r(*field_, m);
    for (const auto& [e, c] : terms_) {
      MultiPoly t = constant(*field_, m, c);
      for (std::size_t i = 0; i < num_vars_; ++i)
        if (e[i]) t = t * powers[i][e[i]];
      r += t;
    }
    return r;
  }

  /// Same polynomial viewed in `n >= num_vars()` variables.
  MultiPoly with_num_vars(std::size_t n) const {
    if (n < num_vars_) throw DimensionError("cannot drop variables");
    MultiPoly r(*field_, n);
    for (const auto& [e, c] : terms_) {
      Exponents ne = e;
      ne.resize(n, 0);
      r.terms_.emplace(std::move(ne), c);
    }
    return r;
  }

  /// Coefficients mapped through a field embedding.
  MultiPoly embed(const FieldEmbedding& emb) const {
    if (&emb.from() != field_) throw FieldError("embedding source does not match polynomial field");
    MultiPoly r(emb.to(), num_vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, emb(c));
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) s += " + ";
      first = false;
      std::string mono;
      for (std::size_t v = 0; v < num_vars_; ++v) {
        if (e[v] == 0) continue;
        if (!mono.empty()) mono += '*';
        mono += 'Z' + std::to_string(v);
        if (e[v] > 1) mono += '^' + std::to_string(e[v]);
      }
      if (mono.empty())
        s += gaussforge::to_string(c);
      else if (c.is_one())
        s += mono;
      else
        s += gaussforge::to_string(c) + '*' + mono;
    }
    return s;
  }

 private:
  void check_compatible(const MultiPoly& o) const {
    if (o.field_ != field_) throw FieldError("field context mismatch");
    if (o.num_vars_ != num_vars_) throw DimensionError("variable count mismatch");
  }

  const FieldCtx* field_;
  std::size_t num_vars_;
  Terms terms_;
};

inline MultiPoly operator*(const Scalar& s, const MultiPoly& f) { return f * s; }

// ---- parsing ----

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, const FieldCtx& F, std::size_t num_vars) : s_(text), F_(F), n_(num_vars) {}

  MultiPoly parse() {
    MultiPoly r = expression();
    skip_ws(s_, pos_);
    if (pos_ != s_.size()) throw ParseError(pos_, std::string("unexpected character '") + s_[pos_] + "'");
    return r;
  }

 private:
  MultiPoly expression() {
    skip_ws(s_, pos_);
    MultiPoly r(F_, n_);
    bool negate = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      negate = s_[pos_] == '-';
      ++pos_;
    }
    MultiPoly t = term();
    r = negate ? -t : t;
    while (true) {
      skip_ws(s_, pos_);
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) return r;
      const bool minus = s_[pos_] == '-';
      ++pos_;
      MultiPoly u = term();
      r = minus ? r - u : r + u;
    }
  }

  MultiPoly term() {
    MultiPoly r = factor();
    while (true) {
      skip_ws(s_, pos_);
      if (pos_ >= s_.size() || s_[pos_] != '*') return r;
      ++pos_;
      r = r * factor();
    }
  }

  MultiPoly factor() {
    MultiPoly base = primary();
    skip_ws(s_, pos_);
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip_ws(s_, pos_);
      const std::size_t start = pos_;
      unsigned e = 0;
      if (pos_ >= s_.size() || s_[pos_] < '0' || s_[pos_] > '9') throw ParseError(pos_, "expected exponent");
      while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') {
        e = e * 10 + static_cast<unsigned>(s_[pos_] - '0');
        if (e > 4096) throw ParseError(start, "exponent too large");
        ++pos_;
      }
      return base.pow(e);
    }
    return base;
  }

  MultiPoly primary() {
    skip_ws(s_, pos_);
    if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly r = expression();
      skip_ws(s_, pos_);
      if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError(pos_, "expected ')'");
      ++pos_;
      return r;
    }
    if (c == 'Z' || c == 'z') {
      const std::size_t start = pos_;
      ++pos_;
      if (pos_ >= s_.size() || s_[pos_] < '0' || s_[pos_] > '9') throw ParseError(pos_, "expected variable index after 'Z'");
      std::size_t idx = 0;
      while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') {
        idx = idx * 10 + static_cast<std::size_t>(s_[pos_] - '0');
        if (idx > 1000) break;
        ++pos_;
      }
      if (idx >= n_)
        throw ParseError(start, "variable Z" + std::to_string(idx) + " out of range for " + std::to_string(n_) + " variables");
      return MultiPoly::variable(F_, n_, idx);
    }
    if (c == '[' || (c >= '0' && c <= '9')) {
      const Scalar v = parse_scalar_at(s_, pos_, F_);
      return MultiPoly::constant(F_, n_, v);
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  const FieldCtx& F_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the polynomial grammar: Z0..Z9, + - * ^, parentheses, integer and
/// bracketed extension-field coefficients.
inline MultiPoly parse_poly(std::string_view text, const FieldCtx& F, std::size_t num_vars, bool require_homogeneous = false) {
  MultiPoly f = detail::PolyParser(text, F, num_vars).parse();
  if (require_homogeneous && !f.is_homogeneous()) throw ParseError(0, "polynomial is not homogeneous");
  return f;
}

struct EulerCheck {
  bool holds;
  MultiPoly residual;
};

/// sum_i Z_i df/dZ_i - (d mod p) f; always zero for homogeneous f.
inline EulerCheck euler_identity_check(const MultiPoly& f) {
  if (!f.is_homogeneous()) throw Error("Euler identity requires a homogeneous polynomial");
  const auto& F = f.field();
  MultiPoly sum(F, f.num_vars());
  for (std::size_t i = 0; i < f.num_vars(); ++i)
    sum += MultiPoly::variable(F, f.num_vars(), i) * f.partial_derivative(i);
  const int d = std::max(f.degree(), 0);
  MultiPoly residual = sum - f * F.scalar(d);
  const bool ok = residual.is_zero();
  return {ok, std::move(residual)};
}

/// Straight-line evaluator over raw reps for the enumeration hot loops.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const MultiPoly& f) : field_(&f.field()), num_vars_(f.num_vars()) {
    for (const auto& [e, c] : f.terms()) {
      Term t;
      t.log_coeff = c.rep() - 1;
      for (std::size_t v = 0; v < e.size(); ++v)
        if (e[v]) t.factors.push_back({static_cast<std::uint32_t>(v), e[v]});
      terms_.push_back(std::move(t));
    }
  }

  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar::Rep operator()(const Scalar::Rep* x) const noexcept {
    const FieldCtx& F = *field_;
    const std::uint64_t qm1 = F.order() - 1;
    Scalar::Rep acc = 0;
    for (const auto& t : terms_) {
      std::uint64_t lg = t.log_coeff;
      bool zero = false;
      for (const auto& [v, e] : t.factors) {
        const Scalar::Rep xv = x[v];
        if (xv == 0) {
          zero = true;
          break;
        }
        lg += static_cast<std::uint64_t>(e) * (xv - 1);
      }
      if (zero) continue;
      acc = F.add(acc, static_cast<Scalar::Rep>(lg % qm1) + 1);
    }
    return acc;
  }

 private:
  struct Term {
    std::uint64_t log_coeff = 0;
    std::vector<std::pair<std::uint32_t, unsigned>> factors;
  };

  const FieldCtx* field_ = nullptr;
  std::size_t num_vars_ = 0;
  std::vector<Term> terms_;
};

}  // namespace gaussforge
