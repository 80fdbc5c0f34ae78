#pragma once

// Quantum semiclassics: the algebra of operator-valued matrices T, T-bar, P,
// Gamma, Gamma-bar is represented to first order in hbar.  The quantum
// exchange relations (RTT and reflection-type equations) are expanded with
// R12 = 1l - i hbar r, every operator commutator that survives at O(hbar) is
// replaced by i hbar times the classical bracket of the corresponding
// entries, and the residual must cancel exactly at orders hbar^0 and hbar^1.
// Nothing beyond first order is represented: hbar^2 layers are dropped by
// construction.
//
// The engine is a tiny normal-ordering calculus: words over the classical
// generator alphabet with Scalar coefficients (which carry both lambda and
// hbar powers).  Sorting a word into canonical order emits i hbar {a, b} for
// every adjacent transposition, looked up in the installed classical table;
// emitted terms already carry hbar, so their own reordering is free.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "poincare_deform/symmetry.hpp"

namespace poincare_deform {
namespace nc {

using Word = std::vector<uint8_t>;

// Split a coefficient into its hbar^0 and hbar^1 layers; hbar^2 and higher
// are discarded.  Denominators never carry hbar here.
inline std::pair<Scalar, Scalar> split_hbar(const Scalar& s) {
  for (const auto& t : s.den().terms())
    if (ParamPoly::hdeg_of(t.key) != 0)
      throw std::logic_error("nc: hbar appeared in a denominator");
  ParamPoly n0, n1;
  for (const auto& t : s.num().terms()) {
    int h = ParamPoly::hdeg_of(t.key);
    if (h == 0)
      n0 = n0 + ParamPoly::monomial(ParamPoly::ldeg_of(t.key), 0, t.c);
    else if (h == 1)
      n1 = n1 + ParamPoly::monomial(ParamPoly::ldeg_of(t.key), 1, t.c);
  }
  return {Scalar(n0, s.den()), Scalar(n1, s.den())};
}

inline Scalar drop_hbar2(const Scalar& s) {
  auto [c0, c1] = split_hbar(s);
  return c0 + c1;
}

// Polynomial in noncommuting generator symbols, hbar-truncated.
struct NCPoly {
  std::map<Word, Scalar> t;

  void add(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t.try_emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t.erase(it);
    }
  }
  bool is_zero() const { return t.empty(); }
};

inline NCPoly operator+(const NCPoly& a, const NCPoly& b) {
  NCPoly r = a;
  for (const auto& [w, c] : b.t) r.add(w, c);
  return r;
}

inline NCPoly operator-(const NCPoly& a, const NCPoly& b) {
  NCPoly r = a;
  for (const auto& [w, c] : b.t) r.add(w, -c);
  return r;
}

inline NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  NCPoly r;
  for (const auto& [wa, ca] : a.t)
    for (const auto& [wb, cb] : b.t) {
      Scalar c = drop_hbar2(ca * cb);
      if (c.is_zero()) continue;
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add(w, c);
    }
  return r;
}

inline Word word_of_mono(const Mono& m) {
  Word w;
  for (int g = 0; g < kMaxGenerators; ++g)
    for (uint8_t e = m.e[static_cast<std::size_t>(g)]; e > 0; --e)
      w.push_back(static_cast<uint8_t>(g));
  return w;
}

inline NCPoly from_series(const Series& s) {
  NCPoly r;
  for (const auto& [m, c] : s.p.terms()) r.add(word_of_mono(m), drop_hbar2(c));
  return r;
}

// Normal ordering: sort every hbar^0 word ascending, emitting
// i hbar {a, b} from the classical table for each adjacent descent; hbar^1
// words sort freely since their commutators land at hbar^2.
inline NCPoly normal_form(const NCPoly& in, const PoissonStructure& ps) {
  NCPoly out;
  std::vector<std::pair<Word, Scalar>> work(in.t.begin(), in.t.end());
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    auto [c0, c1] = split_hbar(c);
    if (!c1.is_zero()) {
      Word sw = w;
      std::sort(sw.begin(), sw.end());
      out.add(sw, c1);
    }
    if (c0.is_zero()) continue;
    std::size_t k = 0;
    bool sorted = true;
    for (; k + 1 < w.size(); ++k)
      if (w[k] > w[k + 1]) {
        sorted = false;
        break;
      }
    if (sorted) {
      out.add(w, c0);
      continue;
    }
    Word sw = w;
    std::swap(sw[k], sw[k + 1]);
    Series br = ps.table(w[k], w[k + 1]);
    work.emplace_back(std::move(sw), c0);
    if (br.is_zero()) continue;
    Scalar ih = c0 * Scalar::i() * Scalar::hbar();
    for (const auto& [m, mc] : br.p.terms()) {
      Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
      Word mid = word_of_mono(m);
      nw.insert(nw.end(), mid.begin(), mid.end());
      nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(k) + 2, w.end());
      Scalar nc_c = drop_hbar2(ih * mc);
      if (!nc_c.is_zero()) work.emplace_back(std::move(nw), nc_c);
    }
  }
  return out;
}

// Square matrix over NCPoly entries; products preserve the operator order.
struct NCMat {
  int n = 0;
  std::vector<NCPoly> e;

  NCMat() = default;
  explicit NCMat(int dim) : n(dim), e(static_cast<std::size_t>(dim) * dim) {}

  NCPoly& at(int i, int j) { return e[static_cast<std::size_t>(i) * n + j]; }
  const NCPoly& at(int i, int j) const { return e[static_cast<std::size_t>(i) * n + j]; }

  static NCMat identity(int dim) {
    NCMat m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i).add({}, Scalar::one());
    return m;
  }
  bool is_zero() const {
    for (const auto& v : e)
      if (!v.is_zero()) return false;
    return true;
  }
};

inline NCMat from_matrix(const Mat& m) {
  NCMat r(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r.at(i, j) = from_series(m.at(i, j));
  return r;
}

inline NCMat operator*(const NCMat& a, const NCMat& b) {
  NCMat r(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      NCPoly acc;
      for (int k = 0; k < a.n; ++k) acc = acc + a.at(i, k) * b.at(k, j);
      r.at(i, j) = acc;
    }
  return r;
}

inline NCMat operator-(const NCMat& a, const NCMat& b) {
  NCMat r(a.n);
  for (std::size_t k = 0; k < a.e.size(); ++k) r.e[k] = a.e[k] - b.e[k];
  return r;
}

inline NCMat kron(const NCMat& a, const NCMat& b) {
  NCMat r(a.n * b.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j)
      for (int k = 0; k < b.n; ++k)
        for (int l = 0; l < b.n; ++l) r.at(i * b.n + k, j * b.n + l) = a.at(i, j) * b.at(k, l);
  return r;
}

inline NCMat slot1(const NCMat& m) { return kron(m, NCMat::identity(2)); }
inline NCMat slot2(const NCMat& m) { return kron(NCMat::identity(2), m); }

inline NCMat normal_form(const NCMat& m, const PoissonStructure& ps) {
  NCMat r(m.n);
  for (std::size_t k = 0; k < m.e.size(); ++k) r.e[k] = normal_form(m.e[k], ps);
  return r;
}

}  // namespace nc

// ---------------------------------------------------------------------------
// The quantum R-matrix to first order and the exchange relations built on it.
// ---------------------------------------------------------------------------
struct QuantumR {
  Mat r, rdag;          // classical r and its hermitean conjugate
  Mat R12m, R21m;       // 1l - i hbar r and Pi R12 Pi, as plain matrices
  nc::NCMat R12, R12i;  // and their O(hbar) inverses in the word algebra
  nc::NCMat R21, R21i;

  QuantumR() : r(r_select(RSel::R)), rdag(r_select(RSel::RDag)) {
    Scalar ih = Scalar::i() * Scalar::hbar();
    R12m = Mat::identity(4) - r.scaled(ih);
    R21m = flip_pi() * R12m * flip_pi();
    R12 = nc::from_matrix(R12m);
    R12i = nc::from_matrix(Mat::identity(4) + r.scaled(ih));
    R21 = nc::from_matrix(R21m);
    R21i = nc::from_matrix(Mat::identity(4) - rdag.scaled(ih));
  }
};

// Which quantum exchange relation to reduce, named by its operator content.
enum class QuantumRelation { RTT, RTTbar, RTbarTbar, RPRP, RGRG, RGRGbar, RPRG, RPRGbar };

// LHS - RHS of the chosen relation in the word algebra, before normal
// ordering.  Matrix symbols: T/Tbar act on the symmetry pair, P on the
// momenta, Gamma/Gammabar on the group-element pair.
inline nc::NCMat quantum_relation_difference(const QuantumR& q, QuantumRelation which) {
  using nc::NCMat;
  auto sym1 = [](const char* pfx) { return nc::slot1(nc::from_matrix(group_matrix(pfx))); };
  auto sym2 = [](const char* pfx) { return nc::slot2(nc::from_matrix(group_matrix(pfx))); };
  NCMat P1 = nc::slot1(nc::from_matrix(p_tilde_matrix()));
  NCMat P2 = nc::slot2(nc::from_matrix(p_tilde_matrix()));
  switch (which) {
    case QuantumRelation::RTT: {
      NCMat T1 = sym1("g"), T2 = sym2("g");
      return q.R12 * T1 * T2 - T2 * T1 * q.R12;
    }
    case QuantumRelation::RTTbar: {
      NCMat T1 = sym1("g"), Tb2 = sym2("gb");
      return q.R12 * T1 * Tb2 - Tb2 * T1 * q.R12;
    }
    case QuantumRelation::RTbarTbar: {
      NCMat Tb1 = sym1("gb"), Tb2 = sym2("gb");
      return q.R12 * Tb1 * Tb2 - Tb2 * Tb1 * q.R12;
    }
    case QuantumRelation::RPRP:
      return q.R12 * P1 * q.R12i * P2 - P2 * q.R21i * P1 * q.R21;
    case QuantumRelation::RGRG: {
      NCMat G1 = sym1("gam"), G2 = sym2("gam");
      return q.R21i * G1 * q.R21 * G2 - G2 * q.R12 * G1 * q.R12i;
    }
    case QuantumRelation::RGRGbar: {
      NCMat G1 = sym1("gam"), Gb2 = sym2("gamb");
      return q.R12 * G1 * q.R12i * Gb2 - Gb2 * q.R12 * G1 * q.R12i;
    }
    case QuantumRelation::RPRG: {
      NCMat G2 = sym2("gam");
      return q.R21i * P1 * q.R21 * G2 - G2 * q.R21i * P1 * q.R12i;
    }
    case QuantumRelation::RPRGbar: {
      NCMat Gb2 = sym2("gamb");
      return q.R12 * P1 * q.R12i * Gb2 - Gb2 * q.R21i * P1 * q.R12i;
    }
  }
  throw std::logic_error("unknown quantum relation");
}

// Classical tables backing the reductions: observables and symmetries with
// zero cross brackets.
inline const PoissonStructure& quantum_classical_table() {
  static const PoissonStructure ps = observable_symmetry_product();
  return ps;
}

inline void add_quantum_checks(CheckRunner& run) {
  const QuantumR q;
  const PoissonStructure& ps = quantum_classical_table();

  auto exact = [](CheckResult& c, bool zero) {
    c.status = zero ? CheckStatus::Pass : CheckStatus::Fail;
    c.order = "exact";
    c.residual_summary = zero ? "0" : "nonzero";
  };

  // --- the R-matrix itself ---
  run.run("quantum.rmatrix.limit", "R12 and R21 collapse to the identity at hbar = 0",
          [&](CheckResult& c) {
            Mat r0(4), r1(4);
            for (int i = 0; i < 4; ++i)
              for (int j = 0; j < 4; ++j) {
                auto s12 = nc::split_hbar(q.R12m.at(i, j).p.constant_coeff());
                auto s21 = nc::split_hbar(q.R21m.at(i, j).p.constant_coeff());
                r0.at(i, j) = Series::constant(s12.first);
                r1.at(i, j) = Series::constant(s21.first);
              }
            exact(c, (r0 - Mat::identity(4)).is_zero() && (r1 - Mat::identity(4)).is_zero());
          });
  run.run("quantum.rmatrix.hermitian",
          "R12^dag = R21 at first order, equivalently r^dag = -Pi r Pi exactly",
          [&](CheckResult& c) {
            bool ok = (q.R12m.dagger() - q.R21m).is_zero() &&
                      (q.rdag + flip_pi() * q.r * flip_pi()).is_zero();
            exact(c, ok);
          });
  run.run("quantum.rmatrix.skew",
          "r - r^dag equals i l (2 Pi - 1l): the anti-hermitean part is the adjoint invariant",
          [&](CheckResult& c) {
            Mat proj = flip_pi().scaled(Scalar::integer(2)) - Mat::identity(4);
            exact(c, (q.r - q.rdag - proj.scaled(Scalar::i() * Scalar::lambda())).is_zero());
          });

  // --- classical Yang-Baxter structure ---
  // The full r-matrix is quasi-triangular: its symmetric part (under slot
  // exchange) is the adjoint-invariant i l (Pi - 1l/2), so the full r solves
  // the ordinary Yang-Baxter equation while the skew part - the only piece
  // the quadratic brackets actually see - solves the modified one, its
  // Yang-Baxter combination being a nonzero invariant.  Both faces are
  // checked; either one underwrites the Jacobi identity.
  {
    Mat I2 = Mat::identity(2), I4 = Mat::identity(4);
    Mat p23 = kron(I2, flip_pi());
    auto yb = [&](const Mat& r4) {
      Mat r12 = kron(r4, I2);
      Mat r23 = kron(I2, r4);
      Mat r13 = p23 * r12 * p23;
      return commutator(r12, r13) + commutator(r12, r23) + commutator(r13, r23);
    };
    Mat Yfull = yb(q.r);
    Mat skew = (q.r - flip_pi() * q.r * flip_pi()).scaled(Scalar::frac(1, 2));
    Mat Yskew = yb(skew);
    run.run("quantum.cybe.ordinary",
            "the full quasi-triangular r-matrix satisfies the ordinary Yang-Baxter equation",
            [&](CheckResult& c) { exact(c, Yfull.is_zero()); });
    run.run("quantum.cybe.modified",
            "the skew part of r satisfies the modified, not ordinary, Yang-Baxter equation: "
            "its Yang-Baxter combination is nonzero",
            [&](CheckResult& c) {
              c.status = !Yskew.is_zero() ? CheckStatus::ExpectedNonzero : CheckStatus::Fail;
              c.order = "exact";
              c.residual_summary = !Yskew.is_zero() ? "nonzero (as required)" : "0 (ordinary CYBE)";
            });
    run.run("quantum.cybe.adinvariant",
            "that combination commutes with a x 1 x 1 + 1 x a x 1 + 1 x 1 x a for every "
            "traceless a",
            [&](CheckResult& c) {
              bool ok = true;
              Mat basis[3] = {Mat(2), Mat(2), Mat(2)};
              basis[0].at(0, 1) = Series::one();                       // raising
              basis[1].at(1, 0) = Series::one();                       // lowering
              basis[2].at(0, 0) = Series::one();                       // diagonal
              basis[2].at(1, 1) = -Series::one();
              for (const Mat& a : basis) {
                Mat delta = kron(kron(a, I2), I2) + kron(kron(I2, a), I2) + kron(I4, a);
                ok = ok && commutator(Yskew, delta).is_zero();
              }
              exact(c, ok);
            });
    run.run("quantum.cybe.limit", "the Yang-Baxter combination vanishes at l = 0",
            [&](CheckResult& c) {
              bool ok = true;
              for (int i = 0; i < 8 && ok; ++i)
                for (int j = 0; j < 8 && ok; ++j) ok = Yskew.at(i, j).set_lambda_zero().is_zero();
              exact(c, ok);
            });
  }

  // --- order-by-order reduction of the exchange relations ---
  auto reduce = [&](const char* id, const char* claim, QuantumRelation which) {
    run.run(id, claim, [&](CheckResult& c) {
      nc::NCMat res = nc::normal_form(quantum_relation_difference(q, which), ps);
      exact(c, res.is_zero());
    });
  };
  reduce("quantum.reduce.rtt",
         "R T1 T2 = T2 T1 R reduces to the left-symmetry commutator bracket at first order",
         QuantumRelation::RTT);
  reduce("quantum.reduce.rttbar",
         "R T1 Tbar2 = Tbar2 T1 R reduces to the mixed symmetry bracket at first order",
         QuantumRelation::RTTbar);
  reduce("quantum.reduce.rtbartbar",
         "R Tbar1 Tbar2 = Tbar2 Tbar1 R reduces to the conjugate symmetry bracket at first order",
         QuantumRelation::RTbarTbar);
  reduce("quantum.reduce.rprp",
         "the reflection equation on P reduces to the momentum-momentum relation at first order",
         QuantumRelation::RPRP);
  reduce("quantum.reduce.rgrg",
         "the exchange relation on Gamma reduces to the group-group relation at first order",
         QuantumRelation::RGRG);
  reduce("quantum.reduce.rgrgbar",
         "the Gamma-Gammabar exchange relation reduces to its classical relation at first order",
         QuantumRelation::RGRGbar);
  reduce("quantum.reduce.rprg",
         "the P-Gamma exchange relation reduces to the momentum-group relation at first order",
         QuantumRelation::RPRG);
  reduce("quantum.reduce.rprgbar",
         "the P-Gammabar exchange relation reduces to its classical relation at first order",
         QuantumRelation::RPRGbar);

  // --- R12 R21 commutes with the doubled symmetries at first order ---
  run.run("quantum.adjoint.rr",
          "R12 R21 commutes with T2 T1 and Tbar2 Tbar1 at first order "
          "(the quantum face of the adjoint invariance of r - r^dag)",
          [&](CheckResult& c) {
            nc::NCMat RR = q.R12 * q.R21;
            nc::NCMat T1 = nc::slot1(nc::from_matrix(group_matrix("g")));
            nc::NCMat T2 = nc::slot2(nc::from_matrix(group_matrix("g")));
            nc::NCMat Tb1 = nc::slot1(nc::from_matrix(group_matrix("gb")));
            nc::NCMat Tb2 = nc::slot2(nc::from_matrix(group_matrix("gb")));
            bool ok = nc::normal_form(RR * (T2 * T1) - (T2 * T1) * RR, ps).is_zero() &&
                      nc::normal_form(RR * (Tb2 * Tb1) - (Tb2 * Tb1) * RR, ps).is_zero();
            exact(c, ok);
          });

  // --- mutation controls: wrong pairings must not reduce ---
  run.run("quantum.control.mispair",
          "imposing the reflection-equation shape on Gamma contradicts its classical brackets",
          [&](CheckResult& c) {
            nc::NCMat G1 = nc::slot1(nc::from_matrix(group_matrix("gam")));
            nc::NCMat G2 = nc::slot2(nc::from_matrix(group_matrix("gam")));
            nc::NCMat diff = q.R12 * G1 * q.R12i * G2 - G2 * q.R21i * G1 * q.R21;
            nc::NCMat res = nc::normal_form(diff, ps);
            c.status = !res.is_zero() ? CheckStatus::ExpectedNonzero : CheckStatus::Fail;
            c.order = "exact";
            c.residual_summary = !res.is_zero() ? "nonzero (as required)" : "0 (control collapsed)";
          });
  run.run("quantum.control.swapped",
          "replacing R12 by R21 in the mixed symmetry relation breaks the reduction",
          [&](CheckResult& c) {
            nc::NCMat T1 = nc::slot1(nc::from_matrix(group_matrix("g")));
            nc::NCMat Tb2 = nc::slot2(nc::from_matrix(group_matrix("gb")));
            nc::NCMat diff = q.R21 * T1 * Tb2 - Tb2 * T1 * q.R21;
            nc::NCMat res = nc::normal_form(diff, ps);
            c.status = !res.is_zero() ? CheckStatus::ExpectedNonzero : CheckStatus::Fail;
            c.order = "exact";
            c.residual_summary = !res.is_zero() ? "nonzero (as required)" : "0 (control collapsed)";
          });

  // --- covariance of the reflection equation under the quantum symmetries ---
  run.run("quantum.covariance.rprp",
          "P' = Tbar P adj(T) satisfies the reflection equation at first order, replaying the "
          "preservation argument with adjugate inverses",
          [&](CheckResult& c) {
            nc::NCMat P = nc::from_matrix(p_tilde_matrix());
            nc::NCMat Tb = nc::from_matrix(group_matrix("gb"));
            nc::NCMat adjT = nc::from_matrix(adjugate2(group_matrix("g")));
            nc::NCMat Pp = Tb * P * adjT;
            nc::NCMat Pp1 = nc::slot1(Pp), Pp2 = nc::slot2(Pp);
            nc::NCMat diff = q.R12 * Pp1 * q.R12i * Pp2 - Pp2 * q.R21i * Pp1 * q.R21;
            exact(c, nc::normal_form(diff, ps).is_zero());
          });
}

inline VerificationReport run_quantum_suite(int order, uint64_t seed) {
  VerificationReport rep;
  rep.suite = "quantum";
  rep.order = order;
  rep.seed = seed;
  auto t0 = std::chrono::steady_clock::now();
  CheckRunner run(rep);
  add_quantum_checks(run);
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

}  // namespace poincare_deform
