#pragma once

#include <optional>

#include "poincare_deform/layouts.hpp"
#include "poincare_deform/poisson.hpp"
#include "poincare_deform/rmatrix.hpp"

namespace poincare_deform {

// Quadratic bracket pattern on the two-slot space.  With A1 = A (x) 1 and
// B2 = 1 (x) B the right-hand side reads
//   {A1, B2} = alpha A1 B2 + A1 B2 beta - B2 gamma A1 - A1 delta B2 + extra,
// where each Greek slot selects r or its hermitean conjugate.
struct RelationSpec {
  RSel alpha, beta, gamma, delta;
};

inline Mat relation_rhs(const RelationSpec& s, const Mat& A, const Mat& B,
                        const std::optional<Mat>& extra = std::nullopt) {
  Mat A1 = slot1(A), B2 = slot2(B);
  Mat prod = A1 * B2;
  Mat rhs = r_select(s.alpha) * prod + prod * r_select(s.beta) - B2 * r_select(s.gamma) * A1 -
            A1 * r_select(s.delta) * B2;
  if (extra) rhs = rhs + *extra;
  return rhs;
}

// Left-hand side minus right-hand side, entry by entry; identically zero when
// the installed Poisson structure satisfies the matrix relation.
inline Mat relation_residual(const PoissonStructure& ps, const RelationSpec& s, const Mat& A,
                             const Mat& B, const std::optional<Mat>& extra = std::nullopt) {
  return ps.bracket_matrix(A, B) - relation_rhs(s, A, B, extra);
}

// Commutator-form pattern used by the pure symmetry sector:
//   {A1, B2} = [rho, A1 B2].
inline Mat commutator_rhs(RSel rho, const Mat& A, const Mat& B) {
  Mat prod = slot1(A) * slot2(B);
  return commutator(r_select(rho), prod);
}

inline Mat commutator_relation_residual(const PoissonStructure& ps, RSel rho, const Mat& A,
                                        const Mat& B) {
  return ps.bracket_matrix(A, B) - commutator_rhs(rho, A, B);
}

// Read fundamental brackets off a matrix relation: the (mu, nu) table entry
// is the double contraction of the extraction weights with the right-hand
// side.  Inserting through the PoissonStructure enforces consistency with
// anything already installed.
inline void install_relation(PoissonStructure& ps, const ExtractionSpec& a,
                             const ExtractionSpec& b, const RelationSpec& s,
                             const std::optional<Mat>& extra = std::nullopt) {
  Mat rhs = relation_rhs(s, a.matrix, b.matrix, extra);
  for (std::size_t mu = 0; mu < a.gens.size(); ++mu)
    for (std::size_t nu = 0; nu < b.gens.size(); ++nu) {
      Series v;
      for (const auto& [i, j, wa] : a.weights[mu])
        for (const auto& [k, l, wb] : b.weights[nu])
          v += rhs.at(2 * i + k, 2 * j + l).scaled(wa * wb);
      ps.insert(a.gens[mu], b.gens[nu], v);
    }
}

inline void install_commutator_relation(PoissonStructure& ps, const ExtractionSpec& a,
                                        const ExtractionSpec& b, RSel rho) {
  Mat rhs = commutator_rhs(rho, a.matrix, b.matrix);
  for (std::size_t mu = 0; mu < a.gens.size(); ++mu)
    for (std::size_t nu = 0; nu < b.gens.size(); ++nu) {
      Series v;
      for (const auto& [i, j, wa] : a.weights[mu])
        for (const auto& [k, l, wb] : b.weights[nu])
          v += rhs.at(2 * i + k, 2 * j + l).scaled(wa * wb);
      ps.insert(a.gens[mu], b.gens[nu], v);
    }
}

}  // namespace poincare_deform
