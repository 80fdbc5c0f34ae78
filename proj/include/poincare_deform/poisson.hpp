#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "poincare_deform/matrix.hpp"

namespace poincare_deform {

// Poisson structure on the generator algebra: a table of fundamental brackets
// {gen_a, gen_b} stored once per unordered pair (a < b), with antisymmetry
// applied on lookup.  The bracket of arbitrary polynomials follows by the
// Leibniz rule through partial derivatives.
class PoissonStructure {
 public:
  static uint32_t pair_key(int a, int b) {
    return static_cast<uint32_t>(a) * kMaxGenerators + static_cast<uint32_t>(b);
  }

  bool has(int a, int b) const {
    if (a > b) std::swap(a, b);
    return table_.count(pair_key(a, b)) != 0;
  }

  // Fundamental bracket with antisymmetry; zero when undeclared.
  Series table(int a, int b) const {
    if (a == b) return Series::zero();
    bool flip = a > b;
    if (flip) std::swap(a, b);
    auto it = table_.find(pair_key(a, b));
    if (it == table_.end()) return Series::zero();
    return flip ? -it->second : it->second;
  }

  // Install {gen_a, gen_b} = v.  A repeated insert must agree with the stored
  // value (possibly reached through antisymmetry); a nonzero diagonal or a
  // disagreement indicates an inconsistent relation set and throws.
  void insert(int a, int b, const Series& v) {
    if (a == b) {
      if (!v.is_zero())
        throw std::logic_error("PoissonStructure: nonzero diagonal bracket for " + gen_name(a));
      return;
    }
    if (!v.is_zero() && v.valuation() < 0)
      throw std::logic_error("PoissonStructure: table entry with a pole in the parameter");
    Series w = (a > b) ? -v : v;
    int lo = std::min(a, b), hi = std::max(a, b);
    auto [it, fresh] = table_.try_emplace(pair_key(lo, hi), w);
    if (!fresh && !(it->second == w))
      throw std::logic_error("PoissonStructure: inconsistent reinsert for {" + gen_name(a) +
                             ", " + gen_name(b) + "}");
    if (fresh && !w.is_zero()) {
      mask_ |= uint64_t{1} << lo;
      mask_ |= uint64_t{1} << hi;
    }
  }

  // Difference between a candidate value and the stored bracket.
  Series residual_against(int a, int b, const Series& v) const { return v - table(a, b); }

  // {f, g} by the Leibniz rule over all declared pairs.
  Series bracket(const Series& f, const Series& g) const {
    Series acc = Series::zero();
    acc.ord = std::min(detail::sat_add_ord(f.ord, g.valuation()),
                       detail::sat_add_ord(g.ord, f.valuation()));
    uint64_t fm = f.p.gen_mask(), gm = g.p.gen_mask();
    if ((fm | gm) == 0) return acc;
    for (const auto& [key, t] : table_) {
      int a = static_cast<int>(key / kMaxGenerators);
      int b = static_cast<int>(key % kMaxGenerators);
      uint64_t ma = uint64_t{1} << a, mb = uint64_t{1} << b;
      // {f,g} += (df/da dg/db - df/db dg/da) * {a,b}; derivatives inherit the
      // trusted order of their argument so truncated products stay small
      if ((fm & ma) && (gm & mb))
        acc += Series(f.p.derivative(a), f.ord) * Series(g.p.derivative(b), g.ord) * t;
      if ((fm & mb) && (gm & ma))
        acc -= Series(f.p.derivative(b), f.ord) * Series(g.p.derivative(a), g.ord) * t;
    }
    if (acc.ord != kExactOrder) acc.p = acc.p.truncate_lambda(acc.ord);
    return acc;
  }

  // Entry-wise bracket of two 2x2 matrices on the two-slot space:
  // result[(2i+k), (2j+l)] = {A(i,j), B(k,l)}.
  Mat bracket_matrix(const Mat& A, const Mat& B) const {
    Mat r(4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) r.at(2 * i + k, 2 * j + l) = bracket(A.at(i, j), B.at(k, l));
    return r;
  }

  // Jacobi cycle {{a,b},c} + {{b,c},a} + {{c,a},b}; identically zero for a
  // genuine Poisson structure.
  Series jacobi(const Series& a, const Series& b, const Series& c) const {
    return bracket(bracket(a, b), c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b);
  }

  // Brackets of a candidate Casimir against a list of generators.
  std::vector<Series> casimir_residuals(const Series& cas, const std::vector<int>& gens) const {
    std::vector<Series> out;
    out.reserve(gens.size());
    for (int g : gens) out.push_back(bracket(cas, Series::generator(g)));
    return out;
  }

  // Generators that appear in some declared nonzero bracket.
  uint64_t support_mask() const { return mask_; }
  std::size_t size() const { return table_.size(); }

  const std::unordered_map<uint32_t, Series>& raw() const { return table_; }

 private:
  std::unordered_map<uint32_t, Series> table_;
  uint64_t mask_ = 0;
};

}  // namespace poincare_deform
