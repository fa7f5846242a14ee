#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "dsp6/loop_algebra.hpp"

namespace dsp6 {

/// Generalized Cartan matrix of type D4^(1); node 2 is the trivalent node.
inline constexpr std::array<std::array<int, 5>, 5> kCartanMatrix{{
    {2, 0, -1, 0, 0},
    {0, 2, -1, 0, 0},
    {-1, -1, 2, -1, -1},
    {0, 0, -1, 2, 0},
    {0, 0, -1, 0, 2},
}};

/// Coefficients of K in the coroot basis (dual Kac labels).
inline constexpr std::array<int, 5> kNullCoroot{1, 1, 2, 1, 1};

/// Outer nodes, i.e. those of s-degree one.
inline constexpr std::array<int, 4> kOuterNodes{0, 1, 3, 4};

/// Chevalley generators realized in the loop algebra.
///
/// Finite part: simple roots e1-e2, e2-e3, e3-e4, e3+e4 for nodes 1, 2, 3, 4;
/// e_0 = z E_{-theta}, f_0 = z^{-1} E_theta with theta = e1 + e2.
struct ChevalleyBasis {
  std::array<AlgebraElement, 5> e;
  std::array<AlgebraElement, 5> f;
  std::array<AlgebraElement, 5> coroot;
  AlgebraElement d;
  AlgebraElement K;

  /// e_{2j} = [e_2, e_j].
  AlgebraElement e2(int j) const { return bracket(e[2], e[static_cast<std::size_t>(j)]); }
  /// f_{2j} = [f_2, f_j].
  AlgebraElement f2(int j) const { return bracket(f[2], f[static_cast<std::size_t>(j)]); }
};

/// Builds the generators and checks every defining relation; throws
/// kStructuralDefect if any fails.
ChevalleyBasis build_chevalley();

/// Process-wide immutable instance (constructed on first use).
const ChevalleyBasis& chevalley();

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Exhaustive check of the defining relations, Serre relations, form table
/// and K decomposition.
std::vector<CheckResult> verify_chevalley(const ChevalleyBasis& cb);

/// Z-gradation of type s = (1,1,0,1,1) given by d_s = 4d + 2a1 + 3a2 + 2a3 + 2a4.
struct Gradation {
  AlgebraElement d_s;
  std::array<int, 5> node_degree{1, 1, 0, 1, 1};
  int d_weight = 4;           // coefficient of d in d_s
  std::array<int, 8> h_diag{};  // diagonal of the finite part of d_s

  /// d_s-eigenvalue of the loop cell (z-degree, row, col).
  int cell_degree(int z_degree, int row, int col) const {
    return d_weight * z_degree + h_diag[static_cast<std::size_t>(row)] -
           h_diag[static_cast<std::size_t>(col)];
  }
};

Gradation build_gradation(const ChevalleyBasis& cb);
const Gradation& gradation();

std::vector<CheckResult> verify_gradation(const ChevalleyBasis& cb, const Gradation& g);

/// Splits `a` into d_s-eigencomponents; K and d are of degree 0.
template <class T>
std::map<int, LoopElement<T>> degree_s(const Gradation& g, const LoopElement<T>& a) {
  std::map<int, LoopElement<T>> out;
  for (const auto& [deg, m] : a.laurent()) {
    std::map<int, Mat8<T>> split;
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) {
        if (ScalarTraits<T>::is_zero(m(r, c))) continue;
        split[g.cell_degree(deg, r, c)](r, c) = m(r, c);
      }
    for (const auto& [k, part] : split) out[k].add_loop(deg, part);
  }
  if (!ScalarTraits<T>::is_zero(a.k())) out[0].add_k(a.k());
  if (!ScalarTraits<T>::is_zero(a.d())) out[0].add_d(a.d());
  return out;
}

/// Basis of the graded component g_k(s) restricted to |z-degree| <= cap.
/// Loop cells come as antitranspose pairs E_{rc} - E_{7-c,7-r}; at degree 0
/// K and d are appended.
std::vector<AlgebraElement> graded_basis(const Gradation& g, int k,
                                         int cap = kDefaultDegreeCap);

}  // namespace dsp6
