#pragma once

#include <array>
#include <tuple>

#include "poincare_deform/matrix.hpp"

namespace poincare_deform {

// 2x2 hermitean embedding used by the momentum sector (and by the
// Pauli-Lubanski vector, which shares its layout):
//   [[-w0 + w3, w1 - i w2], [w1 + i w2, -w0 - w3]].
inline Mat momentum_layout(const std::array<Series, 4>& w) {
  const Scalar I = Scalar::i();
  Mat m(2);
  m.at(0, 0) = -w[0] + w[3];
  m.at(0, 1) = w[1] - w[2].scaled(I);
  m.at(1, 0) = w[1] + w[2].scaled(I);
  m.at(1, 1) = -w[0] - w[3];
  return m;
}

// 2x2 hermitean embedding used by the position sector:
//   [[-x0 - x3, -x1 + i x2], [-x1 - i x2, -x0 + x3]].
inline Mat position_layout(const std::array<Series, 4>& x) {
  const Scalar I = Scalar::i();
  Mat m(2);
  m.at(0, 0) = -x[0] - x[3];
  m.at(0, 1) = -x[1] + x[2].scaled(I);
  m.at(1, 0) = -x[1] - x[2].scaled(I);
  m.at(1, 1) = -x[0] + x[3];
  return m;
}

inline std::array<Series, 4> generator_components(const char* base) {
  std::array<Series, 4> c;
  for (int m = 0; m < 4; ++m) c[static_cast<std::size_t>(m)] = Series::generator(std::string(base) + std::to_string(m));
  return c;
}

inline Mat p_tilde_matrix() { return momentum_layout(generator_components("p")); }
inline Mat x_matrix() { return position_layout(generator_components("x")); }

// Group-valued 2x2 matrix of symbol entries, e.g. prefix "gam" -> gam11..gam22.
inline Mat group_matrix(const std::string& prefix) {
  Mat m(2);
  m.at(0, 0) = Series::generator(prefix + "11");
  m.at(0, 1) = Series::generator(prefix + "12");
  m.at(1, 0) = Series::generator(prefix + "21");
  m.at(1, 1) = Series::generator(prefix + "22");
  return m;
}

// sl(2,C)-valued matrix built from the six antisymmetric tensor components
// j01..j23; exponentiating i*l times this matrix gives the boost-sector group
// element in the flat limit.
inline Mat rotation_matrix_from_j() {
  const Scalar I = Scalar::i();
  auto g = [](const char* n) { return Series::generator(n); };
  Mat m(2);
  m.at(0, 0) = -g("j12").scaled(I) - g("j03");
  m.at(0, 1) = -g("j23").scaled(I) + g("j02").scaled(I) + g("j13") - g("j01");
  m.at(1, 0) = -g("j23").scaled(I) - g("j02").scaled(I) - g("j13") - g("j01");
  m.at(1, 1) = g("j12").scaled(I) + g("j03");
  return m;
}

// Linear functionals recovering vector components from a layout matrix:
// comp = sum over (i, j, w) of w * M(i, j).
using WeightList = std::vector<std::tuple<int, int, Scalar>>;

struct ExtractionSpec {
  std::vector<int> gens;                 // generator id per component
  std::vector<WeightList> weights;       // matching functional per component
  Mat matrix;                            // the symbol matrix the weights invert
};

inline Series apply_weights(const WeightList& w, const Mat& m) {
  Series s;
  for (const auto& [i, j, c] : w) s += m.at(i, j).scaled(c);
  return s;
}

inline std::vector<WeightList> momentum_weights() {
  const Scalar h = Scalar::frac(1, 2);
  const Scalar ih = Scalar::i() * h;
  return {
      {{0, 0, -h}, {1, 1, -h}},  // w0 = -(M11 + M22)/2
      {{0, 1, h}, {1, 0, h}},    // w1 = (M12 + M21)/2
      {{0, 1, ih}, {1, 0, -ih}}, // w2 = i(M12 - M21)/2
      {{0, 0, h}, {1, 1, -h}},   // w3 = (M11 - M22)/2
  };
}

inline std::vector<WeightList> position_weights() {
  const Scalar h = Scalar::frac(1, 2);
  const Scalar ih = Scalar::i() * h;
  return {
      {{0, 0, -h}, {1, 1, -h}},   // x0 = -(M11 + M22)/2
      {{0, 1, -h}, {1, 0, -h}},   // x1 = -(M12 + M21)/2
      {{0, 1, -ih}, {1, 0, ih}},  // x2 = -i(M12 - M21)/2
      {{0, 0, -h}, {1, 1, h}},    // x3 = (-M11 + M22)/2
  };
}

inline std::vector<WeightList> entry_weights() {
  std::vector<WeightList> w;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) w.push_back({{i, j, Scalar::one()}});
  return w;
}

inline std::vector<int> component_gen_ids(const char* base) {
  std::vector<int> ids;
  for (int m = 0; m < 4; ++m) ids.push_back(gen_id(std::string(base) + std::to_string(m)));
  return ids;
}

inline std::vector<int> entry_gen_ids(const std::string& prefix) {
  return {gen_id(prefix + "11"), gen_id(prefix + "12"), gen_id(prefix + "21"),
          gen_id(prefix + "22")};
}

inline ExtractionSpec extraction_momentum() {
  return {component_gen_ids("p"), momentum_weights(), p_tilde_matrix()};
}
inline ExtractionSpec extraction_position() {
  return {component_gen_ids("x"), position_weights(), x_matrix()};
}
inline ExtractionSpec extraction_group(const std::string& prefix) {
  return {entry_gen_ids(prefix), entry_weights(), group_matrix(prefix)};
}

}  // namespace poincare_deform
