#include "dsp6/heisenberg.hpp"

#include <map>
#include <tuple>

#include "dsp6/linalg.hpp"

namespace dsp6 {
namespace {

// Coordinate index over loop cells plus the K and d lines.
class CoordinateMap {
 public:
  static constexpr int kCentral = 1000;
  static constexpr int kDerivation = 1001;

  void add(const AlgebraElement& x, bool with_k = true) {
    for (const auto& [deg, m] : x.laurent())
      for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
          if (sgn(m(r, c)) != 0) index(deg, r, c);
    if (with_k && sgn(x.k()) != 0) index(kCentral, 0, 0);
    if (sgn(x.d()) != 0) index(kDerivation, 0, 0);
  }

  int index(int deg, int r, int c) {
    auto key = std::make_tuple(deg, r, c);
    auto [it, inserted] = idx_.try_emplace(key, static_cast<int>(idx_.size()));
    return it->second;
  }

  int size() const { return static_cast<int>(idx_.size()); }

  std::vector<std::pair<int, Rational>> coords(const AlgebraElement& x, bool with_k = true) const {
    std::vector<std::pair<int, Rational>> out;
    for (const auto& [deg, m] : x.laurent())
      for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
          if (sgn(m(r, c)) != 0) out.emplace_back(idx_.at({deg, r, c}), m(r, c));
    if (with_k && sgn(x.k()) != 0) out.emplace_back(idx_.at({kCentral, 0, 0}), x.k());
    if (sgn(x.d()) != 0) out.emplace_back(idx_.at({kDerivation, 0, 0}), x.d());
    return out;
  }

 private:
  std::map<std::tuple<int, int, int>, int> idx_;
};

AlgebraElement combine(const std::vector<AlgebraElement>& basis, const std::vector<Rational>& v) {
  AlgebraElement x;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (sgn(v[i]) != 0) x += basis[i] * v[i];
  return x;
}

}  // namespace

HeisenbergLevel lambda_plus_one(const ChevalleyBasis& cb) {
  HeisenbergLevel lv;
  lv.k = 1;
  lv.basis[0] = -cb.e[0] + cb.e[1] + cb.e[3] - cb.e2(1) + cb.e2(3) + cb.e2(4);
  lv.basis[1] = cb.e[1] - cb.e[3] + cb.e[4] + cb.e2(0) + cb.e2(1) + cb.e2(3);
  return lv;
}

HeisenbergLevel lambda_minus_one(const ChevalleyBasis& cb) {
  const Rational half(1, 2);
  HeisenbergLevel lv;
  lv.k = -1;
  lv.basis[0] = (cb.f[0] * Rational(-2) + cb.f[1] + cb.f[3] + cb.f2(1) - cb.f2(3) -
                 cb.f2(4) * Rational(2)) *
                half;
  lv.basis[1] = (cb.f[1] - cb.f[3] + cb.f[4] * Rational(2) - cb.f2(0) * Rational(2) - cb.f2(1) -
                 cb.f2(3)) *
                half;
  return lv;
}

std::vector<AlgebraElement> centralizer_component(int k, int cap) {
  if (k > cap || k < -cap) {
    throw Error(ErrorCode::kDegreeCap, "graded component " + std::to_string(k) + " beyond cap");
  }
  const AlgebraElement lambda11 = lambda_plus_one().basis[0];
  const std::vector<AlgebraElement> basis = graded_basis(gradation(), k, cap);
  std::vector<AlgebraElement> images;
  images.reserve(basis.size());
  CoordinateMap cm;
  for (const auto& b : basis) {
    images.push_back(bracket(lambda11, b, cap + 1));
    cm.add(images.back(), false);
  }
  DenseMatrix<Rational> a(std::max(cm.size(), 1), static_cast<int>(basis.size()));
  for (std::size_t col = 0; col < images.size(); ++col)
    for (const auto& [row, v] : cm.coords(images[col], false)) a(row, static_cast<int>(col)) = v;

  std::vector<AlgebraElement> out;
  for (const auto& v : nullspace(a)) out.push_back(combine(basis, v));
  return out;
}

Rational central_pairing(const AlgebraElement& a, const AlgebraElement& b) {
  const AlgebraElement c = bracket(a, b);
  if (!c.laurent().empty() || sgn(c.d()) != 0) {
    throw Error(ErrorCode::kStructuralDefect, "bracket is not central");
  }
  return c.k();
}

bool in_span(const std::vector<AlgebraElement>& basis, const AlgebraElement& x) {
  CoordinateMap cm;
  for (const auto& b : basis) cm.add(b);
  cm.add(x);
  DenseMatrix<Rational> a(cm.size(), static_cast<int>(basis.size()));
  std::vector<Rational> rhs(static_cast<std::size_t>(cm.size()), Rational(0));
  for (std::size_t col = 0; col < basis.size(); ++col)
    for (const auto& [row, v] : cm.coords(basis[col])) a(row, static_cast<int>(col)) = v;
  for (const auto& [row, v] : cm.coords(x)) rhs[static_cast<std::size_t>(row)] = v;
  if (basis.empty()) return x.is_zero();
  return solve_affine(a, rhs).consistent;
}

std::pair<HeisenbergLevel, HeisenbergLevel> normalize_level(int k, int cap) {
  if (k <= 0 || k % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument, "normalize_level needs odd positive k");
  }
  HeisenbergLevel plus;
  HeisenbergLevel minus;
  plus.k = k;
  minus.k = -k;
  if (k == 1) {
    plus = lambda_plus_one();
    minus = lambda_minus_one();
  } else {
    const auto cp = centralizer_component(k, cap);
    const auto cm = centralizer_component(-k, cap);
    if (cp.size() != 2 || cm.size() != 2) {
      throw Error(ErrorCode::kStructuralDefect,
                  "centralizer at level " + std::to_string(k) + " is not two-dimensional");
    }
    plus.basis = {cp[0], cp[1]};
    minus.basis = {cm[0], cm[1]};
  }

  // Gram matrix G_ij = K-part of [plus_i, minus_j]; replace minus by minus * k G^{-1}.
  Rational g[2][2];
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) g[i][j] = central_pairing(plus.basis[i], minus.basis[j]);
  const Rational det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  if (sgn(det) == 0) {
    throw Error(ErrorCode::kStructuralDefect,
                "degenerate Heisenberg pairing at level " + std::to_string(k));
  }
  const Rational kk(k);
  const Rational c00 = kk * g[1][1] / det;
  const Rational c01 = -kk * g[0][1] / det;
  const Rational c10 = -kk * g[1][0] / det;
  const Rational c11 = kk * g[0][0] / det;
  const std::array<AlgebraElement, 2> old = minus.basis;
  minus.basis[0] = old[0] * c00 + old[1] * c10;
  minus.basis[1] = old[0] * c01 + old[1] * c11;
  return {plus, minus};
}

std::vector<CheckResult> verify_heisenberg(const HeisenbergLevel& plus, const HeisenbergLevel& minus,
                                           int max_level) {
  std::vector<CheckResult> out;
  const ChevalleyBasis& cb = chevalley();
  auto name = [](int k, std::size_t i) {
    return "Lambda_{" + std::to_string(k) + "," + std::to_string(i + 1) + "}";
  };
  auto add = [&](std::string n, bool pass, std::string detail = {}) {
    out.push_back({std::move(n), pass, std::move(detail)});
  };

  std::vector<HeisenbergLevel> levels_plus{plus};
  std::vector<HeisenbergLevel> levels_minus{minus};
  for (int k = 3; k <= max_level; k += 2) {
    try {
      auto [p, m] = normalize_level(k);
      levels_plus.push_back(p);
      levels_minus.push_back(m);
    } catch (const Error& e) {
      add("normalize level " + std::to_string(k), false, e.what());
    }
  }

  // Pairings [L_{k,i}, L_{-l,j}] = k delta_kl delta_ij K and commutation within each sign.
  for (const auto& p : levels_plus) {
    for (const auto& m : levels_minus) {
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          const AlgebraElement want =
              (p.k == -m.k && i == j) ? cb.K * Rational(p.k) : AlgebraElement{};
          const AlgebraElement got = bracket(p.basis[i], m.basis[j]);
          const std::string rhs = want.is_zero() ? "0" : (p.k == 1 ? "K" : std::to_string(p.k) + "K");
          add("[" + name(p.k, i) + ", " + name(m.k, j) + "] = " + rhs, got == want);
        }
    }
  }
  for (const auto* side : {&levels_plus, &levels_minus}) {
    for (std::size_t a = 0; a < side->size(); ++a)
      for (std::size_t b = a; b < side->size(); ++b)
        for (std::size_t i = 0; i < 2; ++i)
          for (std::size_t j = 0; j < 2; ++j) {
            if (a == b && j <= i) continue;
            const auto& x = (*side)[a];
            const auto& y = (*side)[b];
            add("[" + name(x.k, i) + ", " + name(y.k, j) + "] = 0",
                bracket(x.basis[i], y.basis[j]).is_zero());
          }
  }
  // Homogeneity of each basis element.
  for (const auto* side : {&levels_plus, &levels_minus})
    for (const auto& lv : *side)
      for (std::size_t i = 0; i < 2; ++i) {
        const auto parts = degree_s(gradation(), lv.basis[i]);
        add(name(lv.k, i) + " has d_s-degree " + std::to_string(lv.k),
            parts.size() == 1 && parts.begin()->first == lv.k);
      }
  // Centralizer dimensions.
  for (int k = -max_level - 1; k <= max_level + 1; ++k) {
    const std::size_t want = k == 0 ? 1 : (k % 2 != 0 ? 2 : 0);
    const std::size_t got = centralizer_component(k).size();
    add("dim s_" + std::to_string(k) + " = " + std::to_string(want), got == want,
        "got " + std::to_string(got));
  }
  return out;
}

}  // namespace dsp6
