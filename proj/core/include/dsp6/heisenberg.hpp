#pragma once

#include <array>
#include <utility>
#include <vector>

#include "dsp6/chevalley.hpp"

namespace dsp6 {

/// Pair (Lambda_{k,1}, Lambda_{k,2}) spanning s_k(s).
struct HeisenbergLevel {
  int k = 0;
  std::array<AlgebraElement, 2> basis;
};

/// Lambda_{1,1} = -e0 + e1 + e3 - e21 + e23 + e24,
/// Lambda_{1,2} = e1 - e3 + e4 + e20 + e21 + e23.
HeisenbergLevel lambda_plus_one(const ChevalleyBasis& cb = chevalley());

/// Lambda_{-1,1} = (-2f0 + f1 + f3 + f21 - f23 - 2f24) / 2,
/// Lambda_{-1,2} = (f1 - f3 + 2f4 - 2f20 - f21 - f23) / 2.
HeisenbergLevel lambda_minus_one(const ChevalleyBasis& cb = chevalley());

/// Exact basis (reduced row echelon in graded_basis coordinates) of
/// {x in g_k(s) : [Lambda_{1,1}, x] in CK}.
std::vector<AlgebraElement> centralizer_component(int k, int cap = kDefaultDegreeCap);

/// Bases of s_k and s_{-k} (k odd, positive) with [Lambda_{k,i}, Lambda_{-k,j}] = k delta_ij K.
/// For k = 1 the explicit elements are returned after checking their pairing.
std::pair<HeisenbergLevel, HeisenbergLevel> normalize_level(int k, int cap = kDefaultDegreeCap);

/// K-coefficient of [a, b]; throws kStructuralDefect if the loop part is nonzero.
Rational central_pairing(const AlgebraElement& a, const AlgebraElement& b);

/// Exact test whether x lies in the span of `basis`.
bool in_span(const std::vector<AlgebraElement>& basis, const AlgebraElement& x);

/// Heisenberg relations for the given level-one pair, the centralizer dimensions for
/// |k| <= max_level and the pairing of the normalized levels 3, 5, ... up to max_level.
std::vector<CheckResult> verify_heisenberg(const HeisenbergLevel& plus, const HeisenbergLevel& minus,
                                           int max_level = 3);

}  // namespace dsp6

namespace dsp6 {

/// Generators, e_{2j}, f_{2j}, d_s and Lambda_{+-1,i} converted to scalar T.
template <class T>
struct AlgebraTables {
  std::array<LoopElement<T>, 5> e, f, coroot, e2, f2;  // e2[j] = [e_2, e_j]; e2[2] unused
  LoopElement<T> K, d, d_s;
  std::array<LoopElement<T>, 2> lambda_plus, lambda_minus;
};

template <class T>
AlgebraTables<T> make_tables() {
  const ChevalleyBasis& cb = chevalley();
  AlgebraTables<T> t;
  for (std::size_t i = 0; i < 5; ++i) {
    t.e[i] = cb.e[i].template cast<T>();
    t.f[i] = cb.f[i].template cast<T>();
    t.coroot[i] = cb.coroot[i].template cast<T>();
    if (i != 2) {
      t.e2[i] = cb.e2(static_cast<int>(i)).template cast<T>();
      t.f2[i] = cb.f2(static_cast<int>(i)).template cast<T>();
    }
  }
  t.K = cb.K.template cast<T>();
  t.d = cb.d.template cast<T>();
  t.d_s = gradation().d_s.template cast<T>();
  const auto lp = lambda_plus_one(cb);
  const auto lm = lambda_minus_one(cb);
  for (std::size_t i = 0; i < 2; ++i) {
    t.lambda_plus[i] = lp.basis[i].template cast<T>();
    t.lambda_minus[i] = lm.basis[i].template cast<T>();
  }
  return t;
}

/// Cached instance; immutable after first use.
template <class T>
const AlgebraTables<T>& tables() {
  static const AlgebraTables<T> t = make_tables<T>();
  return t;
}

}  // namespace dsp6
