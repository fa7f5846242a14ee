#include "dsp6/weyl.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "dsp6/chevalley.hpp"

namespace dsp6 {

const CartanData& cartan_data() {
  static const CartanData cd = [] {
    CartanData d;
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) d.A[i][j] = kCartanMatrix[i][j];
    d.U = {{{0, 0, 1, 0, 0},
            {0, 0, 1, 0, 0},
            {-1, -1, 0, -1, -1},
            {0, 0, 1, 0, 0},
            {0, 0, 1, 0, 0}}};
    return d;
  }();
  return cd;
}

bool cartan_data_consistent(const CartanData& cd) {
  for (std::size_t i = 0; i < 5; ++i) {
    if (cd.A[i][i] != 2 || cd.U[i][i] != 0) return false;
    for (std::size_t j = 0; j < 5; ++j) {
      if (cd.A[i][j] != cd.A[j][i] || cd.U[i][j] != -cd.U[j][i]) return false;
      if (i != j && (std::abs(cd.U[i][j]) == 1) != (cd.A[i][j] == -1)) return false;
      if (i != j && cd.A[i][j] != 0 && cd.A[i][j] != -1) return false;
    }
  }
  return true;
}

PviParams reflect_params(int i, const PviParams& pr) {
  if (i < 0 || i > 4) throw Error(ErrorCode::kInvalidArgument, "generator index out of range");
  auto a = reflect_alpha(i, pr.alpha());
  // Exact linear action: re-derive a2 so round-off cannot push it off the surface.
  return PviParams::from_outer(a[0], a[1], a[3], a[4], pr.normalization());
}

PviState reflect_state(int i, const PviState& st, const PviParams& pr, double mirror_tol) {
  if (i < 0 || i > 4) throw Error(ErrorCode::kInvalidArgument, "generator index out of range");
  const FCoords fc = f_coords(st);
  const auto ii = static_cast<std::size_t>(i);
  if (pr[i] == 0.0) return st;
  if (std::abs(fc.F[ii]) < mirror_tol) {
    throw Error(ErrorCode::kOnMirror, "F_" + std::to_string(i) + " vanishes");
  }
  const auto F = reflect_f(i, fc.F, pr.alpha());
  PviState out = st;
  out.mu = F[2];
  if (i == 2) {
    // All F_j with j != 2 move by the same amount; lambda follows F_0 = lambda + t.
    out.lambda = F[0] - st.t;
    const double shift = F[0] - fc.F[0];
    for (int j : kOuterNodes) {
      const double sj = F[static_cast<std::size_t>(j)] - fc.F[static_cast<std::size_t>(j)];
      if (std::abs(sj - shift) > 1e-12 * (1.0 + std::abs(shift))) {
        throw Error(ErrorCode::kConsistencyFailure, "r_2 shifts the F_j unequally");
      }
    }
  }
  return out;
}

std::pair<PviState, PviParams> reflect(int i, const PviState& st, const PviParams& pr,
                                       double mirror_tol) {
  return {reflect_state(i, st, pr, mirror_tol), reflect_params(i, pr)};
}

WeylWord parse_word(const std::string& text) {
  WeylWord w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string trimmed;
    for (char c : item)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) {
      if (text.find_first_not_of(" \t") == std::string::npos) continue;
      throw Error(ErrorCode::kInvalidArgument, "empty generator in word '" + text + "'");
    }
    if (trimmed.size() != 1 || trimmed[0] < '0' || trimmed[0] > '4') {
      throw Error(ErrorCode::kInvalidArgument, "bad generator '" + trimmed + "'");
    }
    w.push_back(trimmed[0] - '0');
  }
  return w;
}

std::string to_string(const WeylWord& w) {
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(w[k]);
  }
  return s;
}

std::pair<PviState, PviParams> apply_word(const WeylWord& w, const PviState& st, const PviParams& pr,
                                          double mirror_tol) {
  PviState s = st;
  PviParams p = pr;
  for (std::size_t k = 0; k < w.size(); ++k) {
    try {
      std::tie(s, p) = reflect(w[k], s, p, mirror_tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kOnMirror) throw;
      throw Error(ErrorCode::kOnMirror, std::string(e.what()) + " at prefix " + std::to_string(k) +
                                            " of word " + to_string(w));
    }
  }
  return {s, p};
}

std::vector<WeylWord> coxeter_relations() {
  const auto& A = cartan_data().A;
  std::vector<WeylWord> rel;
  for (int i = 0; i < 5; ++i) rel.push_back({i, i});
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      const int a = A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (a == 0) rel.push_back({i, j, i, j});
      if (a == -1) rel.push_back({i, j, i, j, i, j});
    }
  }
  return rel;
}

CoxeterReport verify_coxeter(std::size_t trials, std::uint64_t seed, double tol) {
  CoxeterReport rep;
  const auto relations = coxeter_relations();
  rep.relations = relations.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-40, 40);
  std::uniform_int_distribution<int> den(1, 9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> tdist(1.6, 5.0);

  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::array<Rational, 5> ex;
    for (auto& v : ex) v = Rational(num(rng), den(rng));
    for (auto& v : ex) v.canonicalize();
    for (const auto& w : relations) {
      if (apply_word_alpha(w, ex) != ex) {
        rep.params_exact = false;
        rep.failures.push_back("parameter relation " + to_string(w));
      }
    }

    // Draw a state whose whole relation orbit stays away from mirrors.
    for (int attempt = 0; attempt < 100; ++attempt) {
      const double t = (rng() & 1 ? 1.0 : -1.0) * tdist(rng);
      const PviParams pr = PviParams::from_outer(u(rng), u(rng), u(rng), u(rng));
      const PviState st{t, u(rng), u(rng)};
      double worst = 0.0;
      bool ok = true;
      for (const auto& w : relations) {
        try {
          const auto [s2, p2] = apply_word(w, st, pr, 1e-2);
          worst = std::max({worst, std::abs(s2.lambda - st.lambda) / (1.0 + std::abs(st.lambda)),
                            std::abs(s2.mu - st.mu) / (1.0 + std::abs(st.mu))});
          for (int j = 0; j < 5; ++j) worst = std::max(worst, std::abs(p2[j] - pr[j]));
        } catch (const Error&) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      ++rep.trials;
      rep.max_state_residual = std::max(rep.max_state_residual, worst);
      if (worst >= tol) {
        std::ostringstream os;
        os << "state relation residual " << worst << " at t=" << st.t;
        rep.failures.push_back(os.str());
      }
      break;
    }
  }
  return rep;
}

}  // namespace dsp6
