#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "poincare_deform/rational.hpp"

namespace poincare_deform {

inline constexpr int kMaxGenerators = 64;

enum class GenFamily {
  Momentum,    // p0..p3
  Position,    // x0..x3
  Gamma,       // entries of the boost-sector group element
  GammaBar,    // entries of its conjugate partner
  SymLeft,     // entries of the symmetry group element g
  SymLeftBar,  // entries of its conjugate partner
  SymExtra,    // an independent second symmetry element (multiplicativity checks)
  GammaSpin,   // entries of the internal (spin) group element
  Rotation,    // antisymmetric tensor components j01..j23
  SpinSmall,   // traceless first-order spin matrix entries
  RotSmall,    // traceless first-order orbital matrix entries
};

struct GenInfo {
  std::string name;
  GenFamily family;
  int conj_partner = -1;  // generator id of the complex conjugate, -1 if undeclared
  int conj_sign = 0;      // +1 / -1 when paired
};

// Fixed global registry.  All generators are registered up front in one
// canonical order so ids are deterministic across runs and threads.
class GenTable {
 public:
  static const GenTable& instance() {
    static const GenTable table;
    return table;
  }

  int id(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw std::out_of_range("unknown generator: " + name);
    return it->second;
  }
  bool has(const std::string& name) const { return by_name_.count(name) != 0; }
  const GenInfo& info(int id) const { return gens_.at(static_cast<std::size_t>(id)); }
  const std::string& name(int id) const { return info(id).name; }
  int size() const { return static_cast<int>(gens_.size()); }

  std::vector<int> family_ids(GenFamily f) const {
    std::vector<int> out;
    for (int g = 0; g < size(); ++g)
      if (gens_[static_cast<std::size_t>(g)].family == f) out.push_back(g);
    return out;
  }

 private:
  GenTable() {
    auto add = [this](const std::string& n, GenFamily f) {
      gens_.push_back({n, f, -1, 0});
      by_name_[n] = static_cast<int>(gens_.size()) - 1;
    };
    for (int m = 0; m < 4; ++m) add("p" + std::to_string(m), GenFamily::Momentum);
    for (int m = 0; m < 4; ++m) add("x" + std::to_string(m), GenFamily::Position);
    const char* cells[4] = {"11", "12", "21", "22"};
    for (auto c : cells) add(std::string("gam") + c, GenFamily::Gamma);
    for (auto c : cells) add(std::string("gamb") + c, GenFamily::GammaBar);
    for (auto c : cells) add(std::string("g") + c, GenFamily::SymLeft);
    for (auto c : cells) add(std::string("gb") + c, GenFamily::SymLeftBar);
    for (auto c : cells) add(std::string("gp") + c, GenFamily::SymExtra);
    for (auto c : cells) add(std::string("gs") + c, GenFamily::GammaSpin);
    add("j01", GenFamily::Rotation);
    add("j02", GenFamily::Rotation);
    add("j03", GenFamily::Rotation);
    add("j12", GenFamily::Rotation);
    add("j13", GenFamily::Rotation);
    add("j23", GenFamily::Rotation);
    add("s11", GenFamily::SpinSmall);
    add("s12", GenFamily::SpinSmall);
    add("s21", GenFamily::SpinSmall);
    add("y11", GenFamily::RotSmall);
    add("y12", GenFamily::RotSmall);
    add("y21", GenFamily::RotSmall);

    auto self = [this](const std::string& n) {
      int g = by_name_.at(n);
      gens_[static_cast<std::size_t>(g)].conj_partner = g;
      gens_[static_cast<std::size_t>(g)].conj_sign = 1;
    };
    for (int m = 0; m < 4; ++m) self("p" + std::to_string(m));
    for (int m = 0; m < 4; ++m) self("x" + std::to_string(m));
    for (auto n : {"j01", "j02", "j03", "j12", "j13", "j23"}) self(n);

    // An SL(2,C) element u and its partner ub satisfy conj(u) = adj(ub)^T
    // entry-wise: conj(u11) = ub22, conj(u12) = -ub21, conj(u21) = -ub12,
    // conj(u22) = ub11 (and symmetrically back).
    auto pair_group = [this](const std::string& a, const std::string& b) {
      auto link = [this](const std::string& na, const std::string& nb, int sign) {
        int ga = by_name_.at(na), gb = by_name_.at(nb);
        gens_[static_cast<std::size_t>(ga)].conj_partner = gb;
        gens_[static_cast<std::size_t>(ga)].conj_sign = sign;
        gens_[static_cast<std::size_t>(gb)].conj_partner = ga;
        gens_[static_cast<std::size_t>(gb)].conj_sign = sign;
      };
      link(a + "11", b + "22", +1);
      link(a + "12", b + "21", -1);
      link(a + "21", b + "12", -1);
      link(a + "22", b + "11", +1);
    };
    pair_group("gam", "gamb");
    pair_group("g", "gb");
  }

  std::vector<GenInfo> gens_;
  std::unordered_map<std::string, int> by_name_;
};

inline int gen_id(const std::string& name) { return GenTable::instance().id(name); }
inline const std::string& gen_name(int id) { return GenTable::instance().name(id); }

}  // namespace poincare_deform
