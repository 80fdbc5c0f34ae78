#pragma once

#include "poincare_deform/matrix.hpp"

namespace poincare_deform {

// The classical r-matrix on the 4x4 two-slot space,
//   r = (i l / 2) [diag(1, -1, -1, 1) + 4 E_{32}],
// with E_{32} the elementary matrix at row 3, column 2 (1-based).
inline const Mat& r_matrix() {
  static const Mat r = [] {
    Scalar il2 = Scalar::i() * Scalar::lambda() * Scalar::frac(1, 2);
    Mat m(4);
    m.at(0, 0) = Series::constant(il2);
    m.at(1, 1) = Series::constant(-il2);
    m.at(2, 2) = Series::constant(-il2);
    m.at(3, 3) = Series::constant(il2);
    m.at(2, 1) = Series::constant(il2 * Scalar::integer(4));
    return m;
  }();
  return r;
}

inline const Mat& r_matrix_dagger() {
  static const Mat rd = r_matrix().dagger();
  return rd;
}

// Selector so relation patterns can reference r / r-dagger symbolically.
enum class RSel { R, RDag };

inline const Mat& r_select(RSel s) { return s == RSel::R ? r_matrix() : r_matrix_dagger(); }

}  // namespace poincare_deform
