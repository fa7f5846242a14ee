#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dsp6/painleve.hpp"
#include "dsp6/scalar.hpp"

namespace dsp6 {

/// Generalized Cartan matrix A and the orientation matrix U of the D4 affine diagram.
struct CartanData {
  std::array<std::array<int, 5>, 5> A{};
  std::array<std::array<int, 5>, 5> U{};
};

const CartanData& cartan_data();

/// Checks A symmetric with diagonal 2, U antisymmetric and |u_ij| = 1 exactly where a_ij = -1.
bool cartan_data_consistent(const CartanData& cd);

/// r_i(a_j) = a_j - a_i a_ij.
template <class T>
std::array<T, 5> reflect_alpha(int i, const std::array<T, 5>& alpha) {
  const auto& A = cartan_data().A;
  const auto ii = static_cast<std::size_t>(i);
  std::array<T, 5> out = alpha;
  for (std::size_t j = 0; j < 5; ++j) out[j] = alpha[j] - alpha[ii] * T(A[ii][j]);
  return out;
}

PviParams reflect_params(int i, const PviParams& pr);

constexpr double kMirrorTol = 1e-6;

/// r_i(F_j) = F_j - (a_i / F_i) u_ij on all five coordinates (F_i != 0 unless a_i = 0).
template <class T>
std::array<T, 5> reflect_f(int i, const std::array<T, 5>& F, const std::array<T, 5>& alpha) {
  const auto& U = cartan_data().U;
  const auto ii = static_cast<std::size_t>(i);
  if (value_is_zero(alpha[ii])) return F;
  if (value_is_zero(F[ii])) throw Error(ErrorCode::kOnMirror, "F_" + std::to_string(i) + " = 0");
  const T shift = alpha[ii] / F[ii];
  std::array<T, 5> out = F;
  for (std::size_t j = 0; j < 5; ++j)
    if (U[ii][j] != 0) out[j] = F[j] - shift * T(U[ii][j]);
  return out;
}

/// r_i(F_j) = F_j - (a_i / F_i) u_ij applied to (lambda, mu).
PviState reflect_state(int i, const PviState& st, const PviParams& pr, double mirror_tol = kMirrorTol);

/// Both parts of the action at once.
std::pair<PviState, PviParams> reflect(int i, const PviState& st, const PviParams& pr,
                                       double mirror_tol = kMirrorTol);

using WeylWord = std::vector<int>;

/// Parses "0,2,1,2"; whitespace is ignored, an empty string is the identity word.
WeylWord parse_word(const std::string& text);
std::string to_string(const WeylWord& w);

/// Applies the generators left to right. An OnMirror error names the prefix length reached.
std::pair<PviState, PviParams> apply_word(const WeylWord& w, const PviState& st, const PviParams& pr,
                                          double mirror_tol = kMirrorTol);

/// Parameter-only word action, usable with exact scalars.
template <class T>
std::array<T, 5> apply_word_alpha(const WeylWord& w, std::array<T, 5> alpha) {
  for (int i : w) alpha = reflect_alpha(i, alpha);
  return alpha;
}

/// Relation words r_i^2, (r_i r_j)^2 for a_ij = 0 and (r_i r_j)^3 for a_ij = -1.
std::vector<WeylWord> coxeter_relations();

struct CoxeterReport {
  std::size_t relations = 0;
  std::size_t trials = 0;
  bool params_exact = true;          // every relation returned the exact same rationals
  double max_state_residual = 0.0;   // relative to 1 + |value|
  std::vector<std::string> failures;
  bool pass(double tol = 1e-10) const { return params_exact && max_state_residual < tol && failures.empty(); }
};

/// Runs every relation at `trials` random regular points drawn from `seed`.
CoxeterReport verify_coxeter(std::size_t trials, std::uint64_t seed, double tol = 1e-10);

}  // namespace dsp6
