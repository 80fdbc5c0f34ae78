#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <unordered_map>
#include <vector>

#include "poincare_deform/generators.hpp"
#include "poincare_deform/scalar.hpp"

namespace poincare_deform {

// Exponent vector over the fixed generator registry.
struct Mono {
  std::array<uint8_t, kMaxGenerators> e{};

  bool operator==(const Mono& o) const {
    return std::memcmp(e.data(), o.e.data(), sizeof(e)) == 0;
  }
  int total_degree() const {
    int d = 0;
    for (auto v : e) d += v;
    return d;
  }
  uint64_t mask() const {
    uint64_t m = 0;
    for (int g = 0; g < kMaxGenerators; ++g)
      if (e[static_cast<std::size_t>(g)]) m |= (uint64_t{1} << g);
    return m;
  }
};

struct MonoHash {
  std::size_t operator()(const Mono& m) const {
    uint64_t words[8];
    std::memcpy(words, m.e.data(), sizeof(words));
    uint64_t h = 0x9e3779b97f4a7c15ull;
    for (uint64_t w : words) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Commutative polynomial in the phase-space generators with Scalar
// coefficients.  The union of all generators present is cached as a bitmask
// so bracket evaluation can skip irrelevant table rows quickly.
class Poly {
 public:
  using TermMap = std::unordered_map<Mono, Scalar, MonoHash>;

  Poly() = default;

  static Poly zero() { return Poly(); }
  static Poly constant(Scalar c) {
    Poly p;
    if (!c.is_zero()) p.insert(Mono{}, std::move(c));
    return p;
  }
  static Poly one() { return constant(Scalar::one()); }
  static Poly generator(int gen, Scalar c = Scalar::one()) {
    Poly p;
    Mono m;
    m.e[static_cast<std::size_t>(gen)] = 1;
    p.insert(m, std::move(c));
    return p;
  }
  static Poly generator(const std::string& name) { return generator(gen_id(name)); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  uint64_t gen_mask() const { return mask_; }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{});
  }
  Scalar constant_coeff() const {
    auto it = terms_.find(Mono{});
    return it == terms_.end() ? Scalar::zero() : it->second;
  }

  void insert(const Mono& m, Scalar c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, std::move(c));
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) {
        terms_.erase(it);
        rebuild_mask();
        return;
      }
    }
    mask_ |= m.mask();
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    bool removed = false;
    for (const auto& [m, c] : o.terms_) {
      auto [it, fresh] = terms_.try_emplace(m, c);
      if (fresh) {
        mask_ |= m.mask();
      } else {
        it->second += c;
        if (it->second.is_zero()) {
          terms_.erase(it);
          removed = true;
        }
      }
    }
    if (removed) rebuild_mask();
    return *this;
  }
  Poly& operator-=(const Poly& o) { return *this += -o; }

  friend Poly operator+(Poly a, const Poly& b) {
    a += b;
    return a;
  }
  friend Poly operator-(Poly a, const Poly& b) {
    a -= b;
    return a;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Mono m = ma;
        for (int g = 0; g < kMaxGenerators; ++g) {
          unsigned s = unsigned(m.e[static_cast<std::size_t>(g)]) +
                       unsigned(mb.e[static_cast<std::size_t>(g)]);
          if (s > 255u) throw std::overflow_error("Poly: exponent overflow");
          m.e[static_cast<std::size_t>(g)] = static_cast<uint8_t>(s);
        }
        r.insert(m, ca * cb);
      }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  // Product truncated at l^ord: term pairs whose coefficient l-valuations
  // already sum past the cutoff contribute nothing after truncation, so they
  // are skipped outright and surviving coefficients are trimmed on insert.
  friend Poly mul_truncated(const Poly& a, const Poly& b, int ord) {
    Poly r;
    if (ord <= 0 || a.is_zero() || b.is_zero()) return r;
    struct BTerm {
      const Mono* m;
      const Scalar* c;
      int val;
    };
    std::vector<BTerm> bt;
    bt.reserve(b.terms_.size());
    for (const auto& [mb, cb] : b.terms_) bt.push_back({&mb, &cb, cb.lambda_valuation()});
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    for (const auto& [ma, ca] : a.terms_) {
      int va = ca.lambda_valuation();
      for (const auto& t : bt) {
        if (va + t.val >= ord) continue;
        Mono m = ma;
        for (int g = 0; g < kMaxGenerators; ++g) {
          unsigned s = unsigned(m.e[static_cast<std::size_t>(g)]) +
                       unsigned(t.m->e[static_cast<std::size_t>(g)]);
          if (s > 255u) throw std::overflow_error("Poly: exponent overflow");
          m.e[static_cast<std::size_t>(g)] = static_cast<uint8_t>(s);
        }
        r.insert(m, (ca * *t.c).truncate_lambda(ord));
      }
    }
    return r;
  }

  Poly scaled(const Scalar& c) const {
    if (c.is_zero()) return Poly();
    Poly r = *this;
    for (auto& [m, v] : r.terms_) v *= c;
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (const auto& [m, c] : a.terms_) {
      auto it = b.terms_.find(m);
      if (it == b.terms_.end() || it->second != c) return false;
    }
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly derivative(int gen) const {
    Poly r;
    auto gi = static_cast<std::size_t>(gen);
    for (const auto& [m, c] : terms_) {
      if (m.e[gi] == 0) continue;
      Mono d = m;
      d.e[gi] -= 1;
      r.insert(d, c * Scalar::integer(m.e[gi]));
    }
    return r;
  }

  // Complex conjugation as a function on phase space: conjugate coefficients
  // and map each generator to its declared conjugate partner.
  Poly star() const {
    const auto& tab = GenTable::instance();
    Poly r;
    for (const auto& [m, c] : terms_) {
      Mono sm{};
      int sign_par = 0;
      for (int g = 0; g < kMaxGenerators; ++g) {
        uint8_t e = m.e[static_cast<std::size_t>(g)];
        if (!e) continue;
        if (g >= tab.size()) throw std::domain_error("Poly: unregistered generator");
        const GenInfo& info = tab.info(g);
        if (info.conj_partner < 0)
          throw std::domain_error("Poly: no conjugation rule for generator " + info.name);
        sm.e[static_cast<std::size_t>(info.conj_partner)] += e;
        if (info.conj_sign < 0) sign_par += e;
      }
      Scalar sc = c.conj();
      if (sign_par % 2) sc = -sc;
      r.insert(sm, std::move(sc));
    }
    return r;
  }

  // Minimal l-adic valuation across all coefficients (coefficients carry the
  // deformation parameter); INT_MAX for the zero polynomial.
  int lambda_valuation() const {
    int v = std::numeric_limits<int>::max();
    for (const auto& [m, c] : terms_) v = std::min(v, c.lambda_valuation());
    return v;
  }

  Poly truncate_lambda(int n) const {
    Poly r;
    for (const auto& [m, c] : terms_) r.insert(m, c.truncate_lambda(n));
    return r;
  }

  Poly set_lambda_zero() const {
    Poly r;
    for (const auto& [m, c] : terms_) r.insert(m, c.set_lambda_zero());
    return r;
  }

  Poly map_coeffs(const auto& fn) const {
    Poly r;
    for (const auto& [m, c] : terms_) r.insert(m, fn(c));
    return r;
  }

  std::complex<double> eval_double(const std::array<double, kMaxGenerators>& vals, double lam,
                                   double hb = 0.0) const {
    std::complex<double> s{0.0, 0.0};
    for (const auto& [m, c] : terms_) {
      std::complex<double> t = c.eval_double(lam, hb);
      for (int g = 0; g < kMaxGenerators; ++g)
        for (int k = 0; k < m.e[static_cast<std::size_t>(g)]; ++k)
          t *= vals[static_cast<std::size_t>(g)];
      s += t;
    }
    return s;
  }

  // Deterministic printable form: terms sorted by total degree, then by
  // exponent vectors in registry order.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const Mono, Scalar>*> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [](const auto* a, const auto* b) {
      int da = a->first.total_degree(), db = b->first.total_degree();
      if (da != db) return da < db;
      return std::memcmp(a->first.e.data(), b->first.e.data(), kMaxGenerators) < 0;
    });
    std::string out;
    bool first = true;
    for (const auto* t : ts) {
      std::string mono;
      for (int g = 0; g < kMaxGenerators; ++g) {
        uint8_t e = t->first.e[static_cast<std::size_t>(g)];
        if (!e) continue;
        if (!mono.empty()) mono += "*";
        mono += gen_name(g);
        if (e > 1) mono += "^" + std::to_string(int(e));
      }
      std::string cs = t->second.str();
      std::string piece;
      bool neg = false;
      if (cs.size() > 1 && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
          cs.find(" - ") == std::string::npos && cs.find('(') == std::string::npos) {
        neg = true;
        cs = cs.substr(1);
      }
      bool needs_paren = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
      if (needs_paren) cs = "(" + cs + ")";
      if (mono.empty()) {
        piece = cs;
      } else if (cs == "1") {
        piece = mono;
      } else {
        piece = cs + "*" + mono;
      }
      if (first) {
        out += (neg ? "-" : "") + piece;
        first = false;
      } else {
        out += (neg ? " - " : " + ") + piece;
      }
    }
    return out;
  }

 private:
  void rebuild_mask() {
    mask_ = 0;
    for (const auto& [m, c] : terms_) mask_ |= m.mask();
  }

  TermMap terms_;
  uint64_t mask_ = 0;
};

}  // namespace poincare_deform
