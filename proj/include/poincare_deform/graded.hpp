#pragma once

// Exact fast kernel for lambda-graded sectors of the algebra.
//
// Within the phase-space sector every quantity satisfies a grading identity:
// for each of its terms, 2 * (lambda exponent) - (total degree in the active
// generators) is one and the same integer, the "grade" of the quantity.  The
// deformation power is therefore redundant once the grade is known, and a term
// is fully described by a packed exponent vector plus a coefficient.  All
// coefficients arising in this sector are dyadic Gaussian rationals
// (m + n i) / 2^k, so they fit machine words with explicit overflow checks.
//
// Everything here is exact arithmetic in that compressed representation:
// conversions verify the grading and the coefficient shape term by term and
// throw on any violation, every machine-word operation is overflow-checked,
// and the trusted-order bookkeeping reproduces the Series rules verbatim, so
// residuals and their recorded orders agree with the generic engine exactly.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "poincare_deform/relation.hpp"

namespace poincare_deform {

// ---------------------------------------------------------------------------
// Coefficients: (re + im * i) / 2^e2 with 64-bit components, normalised so the
// exponent is minimal.  Arithmetic goes through 128-bit intermediates and
// refuses (by throwing) to produce anything a 64-bit component cannot hold.
// ---------------------------------------------------------------------------
struct DyadicGaussian {
  long long re = 0;
  long long im = 0;
  int e2 = 0;

  DyadicGaussian() = default;
  DyadicGaussian(long long r, long long i, int e) : re(r), im(i), e2(e) { normalize(); }

  static DyadicGaussian zero() { return {}; }
  static DyadicGaussian one() { return {1, 0, 0}; }
  static DyadicGaussian integer(long long n) { return {n, 0, 0}; }
  static DyadicGaussian imag_unit() { return {0, 1, 0}; }
  // n / 2^k
  static DyadicGaussian dyadic(long long n, int k) { return {n, 0, k}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_one() const { return re == 1 && im == 0 && e2 == 0; }

  DyadicGaussian conj() const { return {re, -im, e2}; }
  DyadicGaussian operator-() const { return {-re, -im, e2}; }

  friend bool operator==(const DyadicGaussian& a, const DyadicGaussian& b) {
    return a.re == b.re && a.im == b.im && a.e2 == b.e2;
  }

 private:
  static long long clamp128(__int128 v) {
    if (v > static_cast<__int128>(std::numeric_limits<long long>::max()) ||
        v < static_cast<__int128>(std::numeric_limits<long long>::min()))
      throw std::overflow_error("DyadicGaussian: component exceeds 64 bits");
    return static_cast<long long>(v);
  }

  void normalize() {
    if (re == 0 && im == 0) {
      e2 = 0;
      return;
    }
    while (e2 > 0 && (re % 2 == 0) && (im % 2 == 0)) {
      re /= 2;
      im /= 2;
      --e2;
    }
  }

 public:
  friend DyadicGaussian mul(const DyadicGaussian& a, const DyadicGaussian& b) {
    if (a.is_zero() || b.is_zero()) return {};
    __int128 r = static_cast<__int128>(a.re) * b.re - static_cast<__int128>(a.im) * b.im;
    __int128 i = static_cast<__int128>(a.re) * b.im + static_cast<__int128>(a.im) * b.re;
    DyadicGaussian d;
    d.re = clamp128(r);
    d.im = clamp128(i);
    d.e2 = a.e2 + b.e2;
    d.normalize();
    return d;
  }

  friend DyadicGaussian add(const DyadicGaussian& a, const DyadicGaussian& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int e = std::max(a.e2, b.e2);
    int sa = e - a.e2, sb = e - b.e2;
    if (sa > 62 || sb > 62)
      throw std::overflow_error("DyadicGaussian: exponent spread too large for 128-bit alignment");
    __int128 r = (static_cast<__int128>(a.re) << sa) + (static_cast<__int128>(b.re) << sb);
    __int128 i = (static_cast<__int128>(a.im) << sa) + (static_cast<__int128>(b.im) << sb);
    DyadicGaussian d;
    d.e2 = e;
    // strip shared factors of two while still in 128 bits, then range-check
    while (d.e2 > 0 && (r % 2 == 0) && (i % 2 == 0) && (r != 0 || i != 0)) {
      r /= 2;
      i /= 2;
      --d.e2;
    }
    if (r == 0 && i == 0) return {};
    d.re = clamp128(r);
    d.im = clamp128(i);
    return d;
  }

  friend DyadicGaussian scale_int(const DyadicGaussian& a, long long n) {
    if (n == 0 || a.is_zero()) return {};
    DyadicGaussian d;
    d.re = clamp128(static_cast<__int128>(a.re) * n);
    d.im = clamp128(static_cast<__int128>(a.im) * n);
    d.e2 = a.e2;
    d.normalize();
    return d;
  }

  GaussRat to_gauss() const {
    using boost::multiprecision::cpp_int;
    cpp_int den = cpp_int(1) << e2;
    return GaussRat(Rat(cpp_int(re), den), Rat(cpp_int(im), den));
  }

  // Requires both denominators to be powers of two and the scaled numerators
  // to fit 64 bits; everything in the graded sector does.
  static DyadicGaussian from_gauss(const GaussRat& g) {
    using boost::multiprecision::cpp_int;
    auto split = [](const Rat& r, long long& num, int& k) {
      cpp_int n = boost::multiprecision::numerator(r);
      cpp_int d = boost::multiprecision::denominator(r);
      if (d <= 0 || (d & (d - 1)) != 0)
        throw std::domain_error("DyadicGaussian: denominator is not a power of two");
      k = (d == 1) ? 0 : static_cast<int>(boost::multiprecision::msb(d));
      if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min())
        throw std::overflow_error("DyadicGaussian: numerator exceeds 64 bits");
      num = static_cast<long long>(n);
    };
    long long nr = 0, ni = 0;
    int kr = 0, ki = 0;
    split(g.re, nr, kr);
    split(g.im, ni, ki);
    int e = std::max(kr, ki);
    if (e - kr > 62 || e - ki > 62)
      throw std::overflow_error("DyadicGaussian: exponent spread too large");
    __int128 r = static_cast<__int128>(nr) << (e - kr);
    __int128 i = static_cast<__int128>(ni) << (e - ki);
    return DyadicGaussian(clamp128(r), clamp128(i), e);
  }
};

// surface the hidden friends for qualified lookup
DyadicGaussian mul(const DyadicGaussian& a, const DyadicGaussian& b);
DyadicGaussian add(const DyadicGaussian& a, const DyadicGaussian& b);
DyadicGaussian scale_int(const DyadicGaussian& a, long long n);

// ---------------------------------------------------------------------------
// Lane assignment: up to 16 active generators, each owning a 4-bit field of a
// packed 64-bit exponent key.  Conjugation data comes from the registry.
// ---------------------------------------------------------------------------
struct GradedLanes {
  std::array<int8_t, kMaxGenerators> lane_of;  // -1 when the generator is absent
  std::vector<int> gen_of;                     // lane -> generator id
  std::array<int8_t, 16> star_lane;            // image lane under conjugation, -1 if unusable
  std::array<int8_t, 16> star_sign;            // sign picked up per unit exponent

  static GradedLanes for_gens(const std::vector<int>& ids) {
    if (ids.size() > 16) throw std::invalid_argument("GradedLanes: more than 16 generators");
    GradedLanes L;
    L.lane_of.fill(-1);
    L.star_lane.fill(-1);
    L.star_sign.fill(0);
    L.gen_of = ids;
    for (std::size_t k = 0; k < ids.size(); ++k)
      L.lane_of[static_cast<std::size_t>(ids[k])] = static_cast<int8_t>(k);
    const GenTable& tab = GenTable::instance();
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const GenInfo& info = tab.info(ids[k]);
      if (info.conj_partner < 0) continue;
      int8_t partner = L.lane_of[static_cast<std::size_t>(info.conj_partner)];
      if (partner < 0) continue;  // partner outside the sector: star will throw if used
      L.star_lane[k] = partner;
      L.star_sign[k] = static_cast<int8_t>(info.conj_sign);
    }
    return L;
  }

  int lanes() const { return static_cast<int>(gen_of.size()); }
};

namespace graded_detail {

inline int key_degree(uint64_t key) {
  // nibble sum via SWAR accumulation
  uint64_t x = (key & 0x0f0f0f0f0f0f0f0fULL) + ((key >> 4) & 0x0f0f0f0f0f0f0f0fULL);
  x = (x & 0x00ff00ff00ff00ffULL) + ((x >> 8) & 0x00ff00ff00ff00ffULL);
  x = (x & 0x0000ffff0000ffffULL) + ((x >> 16) & 0x0000ffff0000ffffULL);
  return static_cast<int>((x + (x >> 32)) & 0xffULL);
}

inline uint64_t key_add(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  // carry out of any 4-bit lane means an exponent overflowed its field
  if (((a & b) | ((a | b) & ~s)) & 0x8888888888888888ULL)
    throw std::overflow_error("graded key: lane exponent overflow");
  return s;
}

inline int lane_exp(uint64_t key, int lane) { return static_cast<int>((key >> (4 * lane)) & 0xf); }

}  // namespace graded_detail

// ---------------------------------------------------------------------------
// Polynomial in packed form.  Terms are sorted by (degree, key), unique, and
// nonzero; `grade` makes the lambda exponent of a term (deg + grade) / 2, and
// `ord` is the trusted lambda window with exactly the Series semantics.
// ---------------------------------------------------------------------------
struct FlatTerm {
  uint64_t key = 0;
  int32_t deg = 0;
  DyadicGaussian c;
};

struct FlatPoly {
  int32_t grade = 0;
  int32_t ord = kExactOrder;
  std::vector<FlatTerm> terms;

  bool is_zero() const { return terms.empty(); }

  // lambda exponent of the lowest layer; INT_MAX on the zero polynomial
  int valuation() const {
    if (terms.empty()) return std::numeric_limits<int>::max();
    return (terms.front().deg + grade) / 2;
  }

  static FlatPoly constant(const DyadicGaussian& c, int lambda_exp = 0) {
    FlatPoly p;
    p.grade = 2 * lambda_exp;
    if (!c.is_zero()) p.terms.push_back({0, 0, c});
    return p;
  }
  static FlatPoly one() { return constant(DyadicGaussian::one()); }

  FlatPoly truncated(int32_t n) const {
    FlatPoly r;
    r.grade = grade;
    r.ord = std::min(ord, n);
    int32_t cut = (r.ord == kExactOrder) ? std::numeric_limits<int32_t>::max()
                                         : 2 * r.ord - grade;
    for (const auto& t : terms)
      if (t.deg < cut) r.terms.push_back(t);
    return r;
  }

  // reinterpret the trusted window without touching terms (Newton widening)
  FlatPoly widened(int32_t n) const {
    FlatPoly r = *this;
    r.ord = n;
    return r;
  }
};

namespace graded_detail {

// Open-addressing accumulator keyed by the packed exponent vector.
class FlatAccum {
 public:
  explicit FlatAccum(std::size_t expect = 64) { rehash(cap_for(expect)); }

  void add(uint64_t key, int32_t deg, const DyadicGaussian& c) {
    if (c.is_zero()) return;
    if (count_ * 8 >= slots_.size() * 5) rehash(slots_.size() * 2);
    std::size_t mask = slots_.size() - 1;
    std::size_t h = static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ULL) >> shift_);
    for (;; h = (h + 1) & mask) {
      Slot& s = slots_[h];
      if (!s.used) {
        s.used = true;
        s.key = key;
        s.deg = deg;
        s.c = c;
        ++count_;
        return;
      }
      if (s.key == key) {
        s.c = ::poincare_deform::add(s.c, c);
        return;
      }
    }
  }

  // drain into a normalised term vector, dropping zeros and terms at or above
  // the degree cutoff, sorted by (deg, key)
  std::vector<FlatTerm> finish(int32_t degree_cut) {
    std::vector<FlatTerm> out;
    out.reserve(count_);
    for (const Slot& s : slots_)
      if (s.used && !s.c.is_zero() && s.deg < degree_cut) out.push_back({s.key, s.deg, s.c});
    std::sort(out.begin(), out.end(), [](const FlatTerm& a, const FlatTerm& b) {
      return a.deg != b.deg ? a.deg < b.deg : a.key < b.key;
    });
    return out;
  }

 private:
  struct Slot {
    uint64_t key = 0;
    DyadicGaussian c;
    int32_t deg = 0;
    bool used = false;
  };

  static std::size_t cap_for(std::size_t expect) {
    std::size_t cap = 64;
    while (cap * 5 < expect * 8) cap *= 2;
    return cap;
  }

  void rehash(std::size_t cap) {
    std::vector<Slot> old = std::move(slots_);
    slots_.assign(cap, Slot{});
    shift_ = 64;
    for (std::size_t c = cap; c > 1; c /= 2) --shift_;
    count_ = 0;
    std::size_t mask = cap - 1;
    for (const Slot& s : old) {
      if (!s.used) continue;
      std::size_t h = static_cast<std::size_t>((s.key * 0x9E3779B97F4A7C15ULL) >> shift_);
      while (slots_[h].used) h = (h + 1) & mask;
      slots_[h] = s;
      ++count_;
    }
  }

  std::vector<Slot> slots_;
  unsigned shift_ = 58;
  std::size_t count_ = 0;
};

// grade bookkeeping for sums: the zero polynomial is grade-agnostic
inline int32_t join_grade(const FlatPoly& a, const FlatPoly& b) {
  if (a.is_zero()) return b.is_zero() ? a.grade : b.grade;
  if (b.is_zero()) return a.grade;
  if (a.grade != b.grade) throw std::logic_error("graded sum: incompatible grades");
  return a.grade;
}

inline int32_t degree_cut(int32_t ord, int32_t grade) {
  return ord == kExactOrder ? std::numeric_limits<int32_t>::max() : 2 * ord - grade;
}

}  // namespace graded_detail

// --- ring operations, each mirroring its Series counterpart's window rules ---

inline FlatPoly flat_add(const FlatPoly& a, const FlatPoly& b, int sign = +1) {
  FlatPoly r;
  r.grade = graded_detail::join_grade(a, b);
  r.ord = std::min(a.ord, b.ord);
  int32_t cut = graded_detail::degree_cut(r.ord, r.grade);
  r.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  auto before = [](const FlatTerm& x, const FlatTerm& y) {
    return x.deg != y.deg ? x.deg < y.deg : x.key < y.key;
  };
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size() || (i < a.terms.size() && before(a.terms[i], b.terms[j]))) {
      if (a.terms[i].deg < cut) r.terms.push_back(a.terms[i]);
      ++i;
    } else if (i == a.terms.size() || before(b.terms[j], a.terms[i])) {
      if (b.terms[j].deg < cut) {
        FlatTerm t = b.terms[j];
        if (sign < 0) t.c = -t.c;
        r.terms.push_back(t);
      }
      ++j;
    } else {
      DyadicGaussian c =
          add(a.terms[i].c, sign < 0 ? -b.terms[j].c : b.terms[j].c);
      if (!c.is_zero() && a.terms[i].deg < cut) r.terms.push_back({a.terms[i].key, a.terms[i].deg, c});
      ++i;
      ++j;
    }
  }
  return r;
}

inline FlatPoly flat_sub(const FlatPoly& a, const FlatPoly& b) { return flat_add(a, b, -1); }

inline FlatPoly flat_neg(const FlatPoly& a) {
  FlatPoly r = a;
  for (auto& t : r.terms) t.c = -t.c;
  return r;
}

inline FlatPoly flat_mul(const FlatPoly& a, const FlatPoly& b) {
  FlatPoly r;
  r.grade = a.grade + b.grade;
  r.ord = std::min(detail::sat_add_ord(a.ord, b.valuation()),
                   detail::sat_add_ord(b.ord, a.valuation()));
  if (a.is_zero() || b.is_zero()) return r;
  int32_t cut = graded_detail::degree_cut(r.ord, r.grade);
  graded_detail::FlatAccum acc(a.terms.size() + b.terms.size());
  for (const auto& ta : a.terms) {
    int32_t room = cut == std::numeric_limits<int32_t>::max()
                       ? cut
                       : cut - ta.deg;  // b-terms must stay strictly below
    for (const auto& tb : b.terms) {
      if (tb.deg >= room) break;  // b sorted by degree: nothing further survives
      acc.add(graded_detail::key_add(ta.key, tb.key), ta.deg + tb.deg, mul(ta.c, tb.c));
    }
  }
  r.terms = acc.finish(cut);
  return r;
}

// multiply by c * lambda^shift (mirrors Series::scaled with a monomial Scalar)
inline FlatPoly flat_scale(const FlatPoly& a, const DyadicGaussian& c, int lambda_shift = 0) {
  FlatPoly r;
  r.grade = a.grade + 2 * lambda_shift;
  r.ord = a.ord;
  if (c.is_zero()) return r;
  if (a.ord != kExactOrder)
    r.ord = detail::sat_add_ord(a.ord, lambda_shift);
  r.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) r.terms.push_back({t.key, t.deg, mul(t.c, c)});
  return r;
}

inline FlatPoly flat_derivative(const FlatPoly& a, int lane) {
  FlatPoly r;
  r.grade = a.grade + 1;  // degree drops by one, lambda exponents are unchanged
  r.ord = a.ord;
  r.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) {
    int e = graded_detail::lane_exp(t.key, lane);
    if (e == 0) continue;
    r.terms.push_back({t.key - (uint64_t{1} << (4 * lane)), t.deg - 1, scale_int(t.c, e)});
  }
  return r;
}

// entry-wise complex conjugation through the registry's conjugation pairs
inline FlatPoly flat_star(const FlatPoly& a, const GradedLanes& L) {
  FlatPoly r;
  r.grade = a.grade;
  r.ord = a.ord;
  r.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) {
    uint64_t key = 0;
    int sign = 0;
    for (int lane = 0; lane < L.lanes(); ++lane) {
      int e = graded_detail::lane_exp(t.key, lane);
      if (!e) continue;
      if (L.star_lane[static_cast<std::size_t>(lane)] < 0)
        throw std::domain_error("graded star: no conjugation rule for lane generator " +
                                gen_name(L.gen_of[static_cast<std::size_t>(lane)]));
      key += static_cast<uint64_t>(e)
             << (4 * L.star_lane[static_cast<std::size_t>(lane)]);
      if (L.star_sign[static_cast<std::size_t>(lane)] < 0) sign += e;
    }
    DyadicGaussian c = t.c.conj();
    if (sign % 2) c = -c;
    r.terms.push_back({key, t.deg, c});
  }
  std::sort(r.terms.begin(), r.terms.end(), [](const FlatTerm& x, const FlatTerm& y) {
    return x.deg != y.deg ? x.deg < y.deg : x.key < y.key;
  });
  return r;
}

// exact division by lambda with an optional dyadic denominator (the spin
// vector normalisation); requires the lambda^0 layer to be absent
inline FlatPoly flat_divide_lambda(const FlatPoly& a, long long scale_den = 1) {
  if (!a.is_zero() && a.valuation() < 1)
    throw std::domain_error("graded: value has a nonzero l^0 part, cannot divide by l");
  FlatPoly r;
  r.grade = a.grade - 2;
  r.ord = detail::sat_add_ord(a.ord, -1);
  int k = 0;
  long long d = scale_den;
  while (d % 2 == 0 && d > 1) {
    d /= 2;
    ++k;
  }
  if (d != 1) throw std::domain_error("graded: non-dyadic scale denominator");
  r.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) r.terms.push_back({t.key, t.deg, mul(t.c, DyadicGaussian(1, 0, k))});
  return r;
}

// ---------------------------------------------------------------------------
// Conversions.  from_series validates the grading term by term; to_series
// reconstructs the full representation including the deformation powers.
// ---------------------------------------------------------------------------
inline FlatPoly flat_from_series(const Series& s, const GradedLanes& L) {
  FlatPoly r;
  r.ord = s.ord;
  bool grade_set = false;
  for (const auto& [m, c] : s.p.terms()) {
    uint64_t key = 0;
    int deg = 0;
    for (int g = 0; g < kMaxGenerators; ++g) {
      uint8_t e = m.e[static_cast<std::size_t>(g)];
      if (!e) continue;
      int8_t lane = L.lane_of[static_cast<std::size_t>(g)];
      if (lane < 0)
        throw std::domain_error("graded conversion: generator outside the sector: " + gen_name(g));
      if (e > 15) throw std::overflow_error("graded conversion: exponent exceeds a 4-bit lane");
      key |= static_cast<uint64_t>(e) << (4 * lane);
      deg += e;
    }
    if (!c.den_is_one())
      throw std::domain_error("graded conversion: coefficient has a nontrivial denominator");
    for (const auto& pt : c.num().terms()) {
      if (ParamPoly::hdeg_of(pt.key) != 0)
        throw std::domain_error("graded conversion: semiclassical parameter present");
      int lexp = ParamPoly::ldeg_of(pt.key);
      int grade = 2 * lexp - deg;
      if (!grade_set) {
        r.grade = grade;
        grade_set = true;
      } else if (grade != r.grade) {
        throw std::domain_error("graded conversion: value is not lambda-graded");
      }
      r.terms.push_back({key, deg, DyadicGaussian::from_gauss(pt.c)});
    }
  }
  std::sort(r.terms.begin(), r.terms.end(), [](const FlatTerm& a, const FlatTerm& b) {
    return a.deg != b.deg ? a.deg < b.deg : a.key < b.key;
  });
  return r;
}

inline Series flat_to_series(const FlatPoly& f, const GradedLanes& L) {
  Poly p;
  for (const auto& t : f.terms) {
    Mono m{};
    for (int lane = 0; lane < L.lanes(); ++lane) {
      int e = graded_detail::lane_exp(t.key, lane);
      if (e) m.e[static_cast<std::size_t>(L.gen_of[static_cast<std::size_t>(lane)])] =
          static_cast<uint8_t>(e);
    }
    int lexp2 = t.deg + f.grade;
    if (lexp2 < 0 || lexp2 % 2 != 0)
      throw std::logic_error("graded conversion: broken grading invariant");
    p.insert(m, Scalar(ParamPoly::monomial(lexp2 / 2, 0, t.c.to_gauss())));
  }
  return Series(std::move(p), f.ord);
}

// packed form of a single generator: one lane at exponent one
inline FlatPoly flat_generator(int gen_id, const GradedLanes& L) {
  int8_t lane = L.lane_of[static_cast<std::size_t>(gen_id)];
  if (lane < 0) throw std::domain_error("graded: generator outside the sector: " + gen_name(gen_id));
  FlatPoly r;
  r.grade = -1;
  r.terms.push_back({uint64_t{1} << (4 * lane), 1, DyadicGaussian::one()});
  return r;
}

// ---------------------------------------------------------------------------
// Matrices of flat polynomials, mirroring the MatrixExpr operations used by
// the relation machinery (2x2 symbols, 4x4 two-slot space).
// ---------------------------------------------------------------------------
struct FlatMat {
  int n = 0;
  std::vector<FlatPoly> e;

  FlatMat() = default;
  explicit FlatMat(int dim) : n(dim), e(static_cast<std::size_t>(dim) * dim) {}

  static FlatMat identity(int dim) {
    FlatMat m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = FlatPoly::one();
    return m;
  }

  FlatPoly& at(int i, int j) { return e[static_cast<std::size_t>(i) * n + j]; }
  const FlatPoly& at(int i, int j) const { return e[static_cast<std::size_t>(i) * n + j]; }

  bool is_zero() const {
    for (const auto& v : e)
      if (!v.is_zero()) return false;
    return true;
  }

  int32_t min_ord() const {
    int32_t o = kExactOrder;
    for (const auto& v : e) o = std::min(o, v.ord);
    return o;
  }

  FlatMat truncated(int32_t ord) const {
    FlatMat r = *this;
    for (auto& v : r.e) v = v.truncated(ord);
    return r;
  }
};

inline FlatMat flat_from_matrix(const MatrixExpr& m, const GradedLanes& L) {
  FlatMat r(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r.at(i, j) = flat_from_series(m.at(i, j), L);
  return r;
}

inline MatrixExpr flat_to_matrix(const FlatMat& m, const GradedLanes& L) {
  MatrixExpr r(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r.at(i, j) = flat_to_series(m.at(i, j), L);
  return r;
}

inline FlatMat flat_madd(const FlatMat& a, const FlatMat& b, int sign = +1) {
  if (a.n != b.n) throw std::invalid_argument("FlatMat: dimension mismatch");
  FlatMat r(a.n);
  for (std::size_t k = 0; k < a.e.size(); ++k) r.e[k] = flat_add(a.e[k], b.e[k], sign);
  return r;
}
inline FlatMat operator+(const FlatMat& a, const FlatMat& b) { return flat_madd(a, b, +1); }
inline FlatMat operator-(const FlatMat& a, const FlatMat& b) { return flat_madd(a, b, -1); }
inline FlatMat operator-(const FlatMat& a) {
  FlatMat r = a;
  for (auto& v : r.e) v = flat_neg(v);
  return r;
}

inline FlatMat operator*(const FlatMat& a, const FlatMat& b) {
  if (a.n != b.n) throw std::invalid_argument("FlatMat: dimension mismatch");
  FlatMat r(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      FlatPoly s;  // zero, exact: the neutral start of the Series accumulation
      for (int k = 0; k < a.n; ++k) s = flat_add(s, flat_mul(a.at(i, k), b.at(k, j)));
      r.at(i, j) = s;
    }
  return r;
}

inline FlatMat flat_scaled(const FlatMat& a, const DyadicGaussian& c, int lambda_shift = 0) {
  FlatMat r = a;
  for (auto& v : r.e) v = flat_scale(v, c, lambda_shift);
  return r;
}

inline FlatMat flat_scaled(const FlatMat& a, const FlatPoly& s) {
  FlatMat r = a;
  for (auto& v : r.e) v = flat_mul(v, s);
  return r;
}

inline FlatMat flat_transpose(const FlatMat& a) {
  FlatMat r(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r.at(j, i) = a.at(i, j);
  return r;
}

inline FlatMat flat_dagger(const FlatMat& a, const GradedLanes& L) {
  FlatMat r(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r.at(j, i) = flat_star(a.at(i, j), L);
  return r;
}

inline FlatPoly flat_trace(const FlatMat& a) {
  FlatPoly s;
  for (int i = 0; i < a.n; ++i) s = flat_add(s, a.at(i, i));
  return s;
}

inline FlatPoly flat_det2(const FlatMat& m) {
  if (m.n != 2) throw std::invalid_argument("flat_det2: 2x2 only");
  return flat_sub(flat_mul(m.at(0, 0), m.at(1, 1)), flat_mul(m.at(0, 1), m.at(1, 0)));
}

inline FlatMat flat_adjugate2(const FlatMat& m) {
  if (m.n != 2) throw std::invalid_argument("flat_adjugate2: 2x2 only");
  FlatMat r(2);
  r.at(0, 0) = m.at(1, 1);
  r.at(0, 1) = flat_neg(m.at(0, 1));
  r.at(1, 0) = flat_neg(m.at(1, 0));
  r.at(1, 1) = m.at(0, 0);
  return r;
}

inline FlatMat flat_kron(const FlatMat& a, const FlatMat& b) {
  FlatMat r(a.n * b.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j)
      for (int k = 0; k < b.n; ++k)
        for (int l = 0; l < b.n; ++l)
          r.at(i * b.n + k, j * b.n + l) = flat_mul(a.at(i, j), b.at(k, l));
  return r;
}

inline FlatMat flat_slot1(const FlatMat& a) { return flat_kron(a, FlatMat::identity(2)); }
inline FlatMat flat_slot2(const FlatMat& a) { return flat_kron(FlatMat::identity(2), a); }

inline const FlatMat& flat_flip_pi() {
  static const FlatMat p = [] {
    FlatMat m(4);
    m.at(0, 0) = FlatPoly::one();
    m.at(1, 2) = FlatPoly::one();
    m.at(2, 1) = FlatPoly::one();
    m.at(3, 3) = FlatPoly::one();
    return m;
  }();
  return p;
}

inline const FlatMat& flat_r_matrix() {
  static const FlatMat r = [] {
    DyadicGaussian il2(0, 1, 1);  // i/2, carried at lambda^1
    FlatMat m(4);
    m.at(0, 0) = FlatPoly::constant(il2, 1);
    m.at(1, 1) = FlatPoly::constant(-il2, 1);
    m.at(2, 2) = FlatPoly::constant(-il2, 1);
    m.at(3, 3) = FlatPoly::constant(il2, 1);
    m.at(2, 1) = FlatPoly::constant(DyadicGaussian(0, 2, 0), 1);
    return m;
  }();
  return r;
}

inline const FlatMat& flat_r_dagger() {
  static const FlatMat rd = [] {
    FlatMat m = flat_transpose(flat_r_matrix());
    for (auto& v : m.e)
      for (auto& t : v.terms) t.c = t.c.conj();
    return m;
  }();
  return rd;
}

inline const FlatMat& flat_r_select(RSel s) {
  return s == RSel::R ? flat_r_matrix() : flat_r_dagger();
}

// ---------------------------------------------------------------------------
// The bracket table in packed form, plus the Leibniz-rule bracket with the
// identical trusted-window accounting as PoissonStructure::bracket.
// ---------------------------------------------------------------------------
struct GradedStructure {
  GradedLanes L;
  // t[a][b] for ordered lane pairs; absent brackets stay empty (exact zero)
  std::vector<std::vector<FlatPoly>> t;
  std::vector<std::vector<bool>> present;

  GradedStructure(const PoissonStructure& ps, GradedLanes lanes) : L(std::move(lanes)) {
    int n = L.lanes();
    t.assign(static_cast<std::size_t>(n), std::vector<FlatPoly>(static_cast<std::size_t>(n)));
    present.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    for (const auto& [key, v] : ps.raw()) {
      int ga = static_cast<int>(key / kMaxGenerators);
      int gb = static_cast<int>(key % kMaxGenerators);
      if (ga == gb) throw std::logic_error("graded table: diagonal bracket entry");
      int8_t a = L.lane_of[static_cast<std::size_t>(ga)];
      int8_t b = L.lane_of[static_cast<std::size_t>(gb)];
      // pairs not fully inside the sector cannot touch sector-supported
      // operands: their derivative factors vanish identically
      if (a < 0 || b < 0) continue;
      FlatPoly f = flat_from_series(v, L);
      if (!f.is_zero() && f.grade != 0)
        throw std::logic_error("graded table: bracket entry with a nonzero grade");
      f.grade = 0;
      auto ai = static_cast<std::size_t>(a), bi = static_cast<std::size_t>(b);
      t[ai][bi] = f;
      t[bi][ai] = flat_neg(f);
      present[ai][bi] = present[bi][ai] = true;
    }
  }
};

namespace graded_detail {

inline int32_t sat3(int32_t ord, int v1, int v2) {
  constexpr int inf = std::numeric_limits<int>::max();
  if (v1 == inf || v2 == inf) return kExactOrder;
  return detail::sat_add_ord(ord, v1 + v2);
}

// Derivative bundle of one polynomial: the per-lane derivatives plus their
// valuations, computed once and shared across entry pairs.
struct DerivSet {
  const FlatPoly* src = nullptr;
  std::vector<FlatPoly> d;
  std::vector<int> val;

  void build(const FlatPoly& p, int lanes) {
    src = &p;
    d.resize(static_cast<std::size_t>(lanes));
    val.assign(static_cast<std::size_t>(lanes), std::numeric_limits<int>::max());
    for (int a = 0; a < lanes; ++a) {
      d[static_cast<std::size_t>(a)] = flat_derivative(p, a);
      val[static_cast<std::size_t>(a)] = d[static_cast<std::size_t>(a)].valuation();
    }
  }
};

// Trusted window of {A, B} exactly as the generic engine computes it: the
// up-front operand bound joined with the per-pair product bounds.
inline int32_t bracket_ord(const DerivSet& A, const DerivSet& B, const GradedStructure& S) {
  int32_t ord = std::min(detail::sat_add_ord(A.src->ord, B.src->valuation()),
                         detail::sat_add_ord(B.src->ord, A.src->valuation()));
  int n = S.L.lanes();
  for (int a = 0; a < n; ++a) {
    if (A.d[static_cast<std::size_t>(a)].is_zero()) continue;
    for (int b = 0; b < n; ++b) {
      if (!S.present[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) continue;
      if (B.d[static_cast<std::size_t>(b)].is_zero()) continue;
      // a zero-content table entry with a finite window still clamps the
      // result window, exactly as in the generic accumulation
      const FlatPoly& tab = S.t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      int va = A.val[static_cast<std::size_t>(a)];
      int vb = B.val[static_cast<std::size_t>(b)];
      int vt = tab.valuation();
      ord = std::min(ord, sat3(A.src->ord, vb, vt));
      ord = std::min(ord, sat3(B.src->ord, va, vt));
      ord = std::min(ord, sat3(tab.ord, va, vb));
    }
  }
  return ord;
}

// Accumulate a * b into acc, keeping only layers strictly below the window.
// The window is a lambda bound; grades translate it to a degree bound.
inline void mul_into(FlatAccum& acc, const FlatPoly& a, const FlatPoly& b, int32_t window,
                     int32_t grade) {
  if (a.is_zero() || b.is_zero()) return;
  // the pair's own trusted window also prunes, mirroring Series truncation
  int32_t w = std::min(window, std::min(detail::sat_add_ord(a.ord, b.valuation()),
                                        detail::sat_add_ord(b.ord, a.valuation())));
  int32_t cut = degree_cut(w, grade);
  for (const auto& ta : a.terms) {
    int32_t room =
        cut == std::numeric_limits<int32_t>::max() ? cut : cut - ta.deg;
    for (const auto& tb : b.terms) {
      if (tb.deg >= room) break;
      acc.add(key_add(ta.key, tb.key), ta.deg + tb.deg, mul(ta.c, tb.c));
    }
  }
}

}  // namespace graded_detail

// {A, B} through the packed table; windows match PoissonStructure::bracket.
inline FlatPoly flat_bracket(const GradedStructure& S, const FlatPoly& A, const FlatPoly& B) {
  using graded_detail::DerivSet;
  int n = S.L.lanes();
  DerivSet dA, dB;
  dA.build(A, n);
  dB.build(B, n);
  FlatPoly r;
  r.grade = A.grade + B.grade + 2;
  r.ord = graded_detail::bracket_ord(dA, dB, S);
  int32_t cut = graded_detail::degree_cut(r.ord, r.grade);
  graded_detail::FlatAccum acc;
  for (int a = 0; a < n; ++a) {
    if (dA.d[static_cast<std::size_t>(a)].is_zero()) continue;
    // U_a = sum_b dB/db * t[a][b], then dA/da * U_a
    FlatPoly U;
    U.grade = B.grade + 1;
    U.ord = kExactOrder;
    {
      graded_detail::FlatAccum uacc;
      int32_t uwin = (r.ord == kExactOrder || dA.val[static_cast<std::size_t>(a)] ==
                                                  std::numeric_limits<int>::max())
                         ? kExactOrder
                         : detail::sat_add_ord(r.ord, -dA.val[static_cast<std::size_t>(a)]);
      for (int b = 0; b < n; ++b) {
        if (!S.present[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) continue;
        const FlatPoly& tab = S.t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (dB.d[static_cast<std::size_t>(b)].is_zero() || tab.is_zero()) continue;
        graded_detail::mul_into(uacc, dB.d[static_cast<std::size_t>(b)], tab, uwin, U.grade);
      }
      U.terms = uacc.finish(graded_detail::degree_cut(uwin, U.grade));
      U.ord = uwin;
    }
    graded_detail::mul_into(acc, dA.d[static_cast<std::size_t>(a)], U, r.ord, r.grade);
  }
  r.terms = acc.finish(cut);
  return r;
}

// Entry-wise matrix bracket on the two-slot space with result (2i+k, 2j+l),
// sharing the per-entry derivative work across the 16 entry pairs.
inline FlatMat flat_bracket_matrix(const GradedStructure& S, const FlatMat& A, const FlatMat& B) {
  using graded_detail::DerivSet;
  int n = S.L.lanes();
  std::array<DerivSet, 4> dA, dB;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      dA[static_cast<std::size_t>(2 * i + j)].build(A.at(i, j), n);
      dB[static_cast<std::size_t>(2 * i + j)].build(B.at(i, j), n);
    }

  // windows first: each result entry gets exactly the generic engine's bound
  std::array<std::array<int32_t, 4>, 4> ord{};
  for (int ij = 0; ij < 4; ++ij)
    for (int kl = 0; kl < 4; ++kl)
      ord[static_cast<std::size_t>(ij)][static_cast<std::size_t>(kl)] =
          graded_detail::bracket_ord(dA[static_cast<std::size_t>(ij)],
                                     dB[static_cast<std::size_t>(kl)], S);

  FlatMat r(4);
  int32_t grade_r = 0;
  {
    // grades: join over nonzero operand entries (zero entries are agnostic)
    bool set = false;
    for (int ij = 0; ij < 4 && !set; ++ij)
      for (int kl = 0; kl < 4 && !set; ++kl)
        if (!dA[static_cast<std::size_t>(ij)].src->is_zero() &&
            !dB[static_cast<std::size_t>(kl)].src->is_zero()) {
          grade_r = dA[static_cast<std::size_t>(ij)].src->grade +
                    dB[static_cast<std::size_t>(kl)].src->grade + 2;
          set = true;
        }
  }

  for (int kl = 0; kl < 4; ++kl) {
    const DerivSet& db = dB[static_cast<std::size_t>(kl)];
    if (db.src->is_zero()) {
      for (int ij = 0; ij < 4; ++ij) {
        FlatPoly z;
        z.grade = grade_r;
        z.ord = ord[static_cast<std::size_t>(ij)][static_cast<std::size_t>(kl)];
        r.at(ij / 2 * 2 + kl / 2, (ij % 2) * 2 + kl % 2) = z;
      }
      continue;
    }
    // U_a for this B entry, wide enough for every A entry that will use it
    std::vector<FlatPoly> U(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      int32_t need = 0;
      bool used = false;
      for (int ij = 0; ij < 4; ++ij) {
        const DerivSet& da = dA[static_cast<std::size_t>(ij)];
        if (da.d[static_cast<std::size_t>(a)].is_zero()) continue;
        int32_t o = ord[static_cast<std::size_t>(ij)][static_cast<std::size_t>(kl)];
        int32_t w = (o == kExactOrder ||
                     da.val[static_cast<std::size_t>(a)] == std::numeric_limits<int>::max())
                        ? kExactOrder
                        : detail::sat_add_ord(o, -da.val[static_cast<std::size_t>(a)]);
        need = used ? std::max(need, w) : w;
        used = true;
      }
      if (!used) continue;
      FlatPoly& Ua = U[static_cast<std::size_t>(a)];
      Ua.grade = db.src->grade + 1;
      Ua.ord = need;
      graded_detail::FlatAccum uacc;
      for (int b = 0; b < n; ++b) {
        if (!S.present[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) continue;
        const FlatPoly& tab = S.t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (db.d[static_cast<std::size_t>(b)].is_zero() || tab.is_zero()) continue;
        graded_detail::mul_into(uacc, db.d[static_cast<std::size_t>(b)], tab, need, Ua.grade);
      }
      Ua.terms = uacc.finish(graded_detail::degree_cut(need, Ua.grade));
    }
    for (int ij = 0; ij < 4; ++ij) {
      const DerivSet& da = dA[static_cast<std::size_t>(ij)];
      int32_t o = ord[static_cast<std::size_t>(ij)][static_cast<std::size_t>(kl)];
      FlatPoly res;
      res.grade = grade_r;
      res.ord = o;
      if (!da.src->is_zero()) {
        graded_detail::FlatAccum acc;
        for (int a = 0; a < n; ++a) {
          if (da.d[static_cast<std::size_t>(a)].is_zero() ||
              U[static_cast<std::size_t>(a)].is_zero())
            continue;
          graded_detail::mul_into(acc, da.d[static_cast<std::size_t>(a)],
                                  U[static_cast<std::size_t>(a)], o, grade_r);
        }
        res.terms = acc.finish(graded_detail::degree_cut(o, grade_r));
      }
      r.at((ij / 2) * 2 + kl / 2, (ij % 2) * 2 + kl % 2) = res;
    }
  }
  return r;
}

// Jacobi cycle through the packed table.
inline FlatPoly flat_jacobi(const GradedStructure& S, const FlatPoly& a, const FlatPoly& b,
                            const FlatPoly& c) {
  FlatPoly r = flat_bracket(S, flat_bracket(S, a, b), c);
  r = flat_add(r, flat_bracket(S, flat_bracket(S, b, c), a));
  r = flat_add(r, flat_bracket(S, flat_bracket(S, c, a), b));
  return r;
}

// Right-hand side of the quadratic relation pattern on the two-slot space.
inline FlatMat flat_relation_rhs(const RelationSpec& s, const FlatMat& A, const FlatMat& B,
                                 const FlatMat* extra = nullptr) {
  FlatMat A1 = flat_slot1(A), B2 = flat_slot2(B);
  FlatMat prod = A1 * B2;
  FlatMat rhs = flat_r_select(s.alpha) * prod + prod * flat_r_select(s.beta) -
                B2 * flat_r_select(s.gamma) * A1 - A1 * flat_r_select(s.delta) * B2;
  if (extra) rhs = rhs + *extra;
  return rhs;
}

inline FlatMat flat_relation_residual(const GradedStructure& S, const RelationSpec& s,
                                      const FlatMat& A, const FlatMat& B,
                                      const FlatMat* extra = nullptr) {
  return flat_bracket_matrix(S, A, B) - flat_relation_rhs(s, A, B, extra);
}

// ---------------------------------------------------------------------------
// Series construction helpers in packed form (the heavy part of building the
// realization: powers, the inverse square root, the unimodular division).
// ---------------------------------------------------------------------------

// Catalan numbers: the cosine series sqrt(1 - u^2) = 1 - sum c_n u^(2n) has
// c_n = Catalan(n-1) / 2^(2n-1), always dyadic.
inline long long catalan_number(int k) {
  static const long long cat[] = {1,      1,      2,       5,       14,      42,
                                  132,    429,    1430,    4862,    16796,   58786,
                                  208012, 742900, 2674440, 9694845, 35357670};
  if (k < 0 || k >= static_cast<int>(sizeof(cat) / sizeof(cat[0])))
    throw std::out_of_range("catalan_number: index out of the tabulated range");
  return cat[k];
}

inline FlatMat flat_cosine_from_sine(const FlatMat& u, int32_t order) {
  FlatMat u2 = u * u;
  FlatMat acc = FlatMat::identity(u.n);
  FlatMat pw = FlatMat::identity(u.n);
  for (int n = 1; 2 * n < order; ++n) {
    pw = pw * u2;
    DyadicGaussian c = DyadicGaussian::dyadic(catalan_number(n - 1), 2 * n - 1);
    acc = acc - flat_scaled(pw, c);
  }
  return acc.truncated(order);
}

// Inverse square root of s = 1 + O(lambda), mirroring series_sqrt_inv: Newton
// iteration t <- t (3 - s t^2) / 2 with doubling precision.
inline FlatPoly flat_sqrt_inv(const FlatPoly& s, int32_t order) {
  bool head_ok = !s.is_zero() && s.grade == 0 && s.terms.front().deg == 0 &&
                 s.terms.front().c.is_one();
  for (std::size_t k = 1; head_ok && k < s.terms.size(); ++k)
    head_ok = s.terms[k].deg > 0;
  if (!head_ok) throw std::domain_error("graded sqrt_inv: constant term must be 1");
  int32_t target = std::min(order, s.ord);
  FlatPoly t = FlatPoly::one().truncated(1);
  const DyadicGaussian half(1, 0, 1);
  int32_t prec = 1;
  while (prec < target) {
    prec = (target - prec < prec) ? target : 2 * prec;
    FlatPoly tw = t.widened(prec);  // error enters only through the update
    FlatPoly st2 = flat_mul(flat_mul(s.truncated(prec), tw), tw);
    FlatPoly upd = flat_mul(flat_sub(FlatPoly::constant(DyadicGaussian::integer(3)), st2), tw);
    t = flat_scale(upd, half).truncated(prec);
  }
  t.ord = target;
  return t;
}

}  // namespace poincare_deform
