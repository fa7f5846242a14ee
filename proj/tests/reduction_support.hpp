#pragma once

#include <algorithm>
#include <random>
#include <tuple>
#include <vector>

#include "dsp6/linalg.hpp"
#include "dsp6/reduction.hpp"
#include "support.hpp"

namespace dsp6::test {

using RcQ = ReductionCoefficients<Rational>;

inline constexpr int kUnknowns = 14;

inline RcQ from_vector(const std::vector<Rational>& v) {
  RcQ rc;
  for (std::size_t j = 0; j < 5; ++j)
    for (std::size_t i = 0; i < 2; ++i) rc.u[j][i] = v[2 * j + i];
  for (std::size_t i = 0; i < 2; ++i) {
    rc.x[i] = v[10 + i];
    rc.y[i] = v[12 + i];
  }
  return rc;
}

inline RcQ unit(int k) {
  std::vector<Rational> v(kUnknowns, Rational(0));
  v[static_cast<std::size_t>(k)] = 1;
  return from_vector(v);
}

/// Matrix of the six linear equations.
inline DenseMatrix<Rational> linear_matrix() {
  DenseMatrix<Rational> a(6, kUnknowns);
  for (int c = 0; c < kUnknowns; ++c) {
    const auto r = residual_linear(unit(c));
    for (int row = 0; row < 6; ++row) a(row, c) = r[static_cast<std::size_t>(row)];
  }
  return a;
}

/// Matrix of the bracket constraint, flattened over (degree, row, col) cells, K and d.
inline DenseMatrix<Rational> bracket_matrix() {
  std::vector<std::vector<Rational>> cols;
  std::vector<std::tuple<int, int, int>> cells;
  std::vector<AlgebraElement> images;
  for (int c = 0; c < kUnknowns; ++c) images.push_back(residual_bracket(unit(c)));
  for (const auto& img : images)
    for (const auto& [deg, m] : img.laurent())
      for (int r = 0; r < 8; ++r)
        for (int cc = 0; cc < 8; ++cc)
          if (sgn(m(r, cc)) != 0) {
            auto key = std::make_tuple(deg, r, cc);
            if (std::find(cells.begin(), cells.end(), key) == cells.end()) cells.push_back(key);
          }
  DenseMatrix<Rational> a(static_cast<int>(cells.size()) + 2, kUnknowns);
  for (int c = 0; c < kUnknowns; ++c) {
    const auto& img = images[static_cast<std::size_t>(c)];
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const auto [deg, r, cc] = cells[k];
      a(static_cast<int>(k), c) = img.cell(deg)(r, cc);
    }
    a(static_cast<int>(cells.size()), c) = img.k();
    a(static_cast<int>(cells.size()) + 1, c) = img.d();
  }
  return a;
}

inline std::vector<Rational> combine(const std::vector<std::vector<Rational>>& basis, std::mt19937_64& rng) {
  std::vector<Rational> v(kUnknowns, Rational(0));
  for (const auto& b : basis) {
    const Rational c = small_rational(rng);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += c * b[k];
  }
  return v;
}

inline MCoefficients<Rational> random_manifold_point(std::mt19937_64& rng) {
  MCoefficients<Rational> m;
  for (auto& k : m.kappa) k = small_rational(rng);
  m.eta = small_rational(rng);
  do {
    m.phi = small_rational(rng);
  } while (sgn(m.phi) == 0);
  do {
    m.t1 = small_rational(rng);
  } while (sgn(m.t1) == 0);
  do {
    m.t2 = small_rational(rng);
  } while (sgn(m.t2) == 0);
  m.psi = 0;
  m.psi = -eta_quadratic_residual(m) / m.phi;
  return m;
}

}  // namespace dsp6::test
