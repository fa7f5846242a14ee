#include "dsp6/chevalley.hpp"

#include <sstream>

namespace dsp6 {
namespace {

using Matrix = Mat8<Rational>;

// Root vector for e_a - e_b (plus = false) or e_a + e_b (plus = true), 1 <= a < b <= 4.
Matrix root_vector(bool plus, int a, int b) {
  if (!plus) return Matrix::unit(a - 1, b - 1) - Matrix::unit(8 - b, 8 - a);
  return Matrix::unit(a - 1, 8 - b) - Matrix::unit(b - 1, 8 - a);
}

AlgebraElement loop0(const Matrix& m) { return AlgebraElement::loop(0, m); }

std::string node_pair(const char* what, int i, int j) {
  std::ostringstream os;
  os << what << '(' << i << ',' << j << ')';
  return os.str();
}

}  // namespace

ChevalleyBasis build_chevalley() {
  ChevalleyBasis cb;
  struct Simple {
    bool plus;
    int a, b;
  };
  const std::array<Simple, 5> simple{{{false, 0, 0}, {false, 1, 2}, {false, 2, 3},
                                      {false, 3, 4}, {true, 3, 4}}};
  for (std::size_t i = 1; i < 5; ++i) {
    const Matrix x = root_vector(simple[i].plus, simple[i].a, simple[i].b);
    cb.e[i] = loop0(x);
    cb.f[i] = loop0(x.transpose());
  }
  const Matrix theta = root_vector(true, 1, 2);
  cb.e[0] = AlgebraElement::loop(1, theta.transpose());
  cb.f[0] = AlgebraElement::loop(-1, theta);
  cb.K = AlgebraElement::central(Rational(1));
  cb.d = AlgebraElement::derivation(Rational(1));

  // Trace normalization from (e_1|f_1) = 1.
  const Rational tr = trace_product(cb.e[1].cell(0), cb.f[1].cell(0));
  if (Rational(1) / tr != trace_normalization<Rational>()) {
    throw Error(ErrorCode::kStructuralDefect, "trace normalization mismatch: 1/" + to_string(tr));
  }

  for (std::size_t i = 0; i < 5; ++i) cb.coroot[i] = bracket(cb.e[i], cb.f[i]);

  for (const auto& c : verify_chevalley(cb)) {
    if (!c.pass) throw Error(ErrorCode::kStructuralDefect, c.name + " " + c.detail);
  }
  return cb;
}

const ChevalleyBasis& chevalley() {
  static const ChevalleyBasis cb = build_chevalley();
  return cb;
}

std::vector<CheckResult> verify_chevalley(const ChevalleyBasis& cb) {
  std::vector<CheckResult> out;
  auto record = [&out](std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };
  for (const auto& x : cb.e) record("so8(e)", x.in_so8());
  for (const auto& x : cb.f) record("so8(f)", x.in_so8());

  for (int i = 0; i < 5; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    for (int j = 0; j < 5; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const int a = kCartanMatrix[ui][uj];
      record(node_pair("[h,h]", i, j), bracket(cb.coroot[ui], cb.coroot[uj]).is_zero());
      record(node_pair("[h,e]", i, j),
             bracket(cb.coroot[ui], cb.e[uj]) == cb.e[uj] * Rational(a));
      record(node_pair("[h,f]", i, j),
             bracket(cb.coroot[ui], cb.f[uj]) == cb.f[uj] * Rational(-a));
      record(node_pair("[e,f]", i, j),
             bracket(cb.e[ui], cb.f[uj]) == (i == j ? cb.coroot[ui] : AlgebraElement{}));
      if (i != j) {
        AlgebraElement se = cb.e[uj];
        AlgebraElement sf = cb.f[uj];
        for (int k = 0; k < 1 - a; ++k) {
          se = bracket(cb.e[ui], se);
          sf = bracket(cb.f[ui], sf);
        }
        record(node_pair("serre(e)", i, j), se.is_zero());
        record(node_pair("serre(f)", i, j), sf.is_zero());
      }
      record(node_pair("(h|h)", i, j),
             invariant_form(cb.coroot[ui], cb.coroot[uj]) == Rational(a));
      record(node_pair("(e|f)", i, j),
             invariant_form(cb.e[ui], cb.f[uj]) == Rational(i == j ? 1 : 0));
      record(node_pair("(h|e)", i, j), sgn(invariant_form(cb.coroot[ui], cb.e[uj])) == 0);
      record(node_pair("(h|f)", i, j), sgn(invariant_form(cb.coroot[ui], cb.f[uj])) == 0);
    }
    record(node_pair("[d,h]", i, i), bracket(cb.d, cb.coroot[ui]).is_zero());
    record(node_pair("[d,e]", i, i),
           bracket(cb.d, cb.e[ui]) == (i == 0 ? cb.e[0] : AlgebraElement{}));
    record(node_pair("[d,f]", i, i),
           bracket(cb.d, cb.f[ui]) == (i == 0 ? -cb.f[0] : AlgebraElement{}));
    record(node_pair("(d|h)", i, i), invariant_form(cb.d, cb.coroot[ui]) == Rational(i == 0 ? 1 : 0));
    record(node_pair("(d|e)", i, i), sgn(invariant_form(cb.d, cb.e[ui])) == 0);
    record(node_pair("(d|f)", i, i), sgn(invariant_form(cb.d, cb.f[ui])) == 0);
  }
  record("(d|d)", sgn(invariant_form(cb.d, cb.d)) == 0);

  AlgebraElement k_sum;
  for (std::size_t i = 0; i < 5; ++i) k_sum += cb.coroot[i] * Rational(kNullCoroot[i]);
  record("K = a0+a1+2a2+a3+a4", k_sum == cb.K);

  std::vector<AlgebraElement> gens;
  for (std::size_t i = 0; i < 5; ++i) {
    gens.push_back(cb.e[i]);
    gens.push_back(cb.f[i]);
    gens.push_back(cb.coroot[i]);
  }
  gens.push_back(cb.d);
  bool central = true;
  for (const auto& x : gens) central = central && bracket(cb.K, x).is_zero();
  record("K central", central);
  return out;
}

Gradation build_gradation(const ChevalleyBasis& cb) {
  Gradation g;
  g.d_s = cb.d * Rational(4) + cb.coroot[1] * Rational(2) + cb.coroot[2] * Rational(3) +
          cb.coroot[3] * Rational(2) + cb.coroot[4] * Rational(2);
  g.d_weight = 4;
  const auto h = g.d_s.cell(0);
  for (int r = 0; r < 8; ++r) {
    const Rational& v = h(r, r);
    if (v.get_den() != 1) throw Error(ErrorCode::kStructuralDefect, "non-integral d_s weight");
    g.h_diag[static_cast<std::size_t>(r)] = static_cast<int>(v.get_num().get_si());
  }
  return g;
}

const Gradation& gradation() {
  static const Gradation g = build_gradation(chevalley());
  return g;
}

std::vector<CheckResult> verify_gradation(const ChevalleyBasis& cb, const Gradation& g) {
  std::vector<CheckResult> out;
  for (std::size_t i = 0; i < 5; ++i) {
    const Rational deg(g.node_degree[i]);
    out.push_back({"[d_s,e" + std::to_string(i) + "]",
                   bracket(g.d_s, cb.e[i]) == cb.e[i] * deg, {}});
    out.push_back({"[d_s,f" + std::to_string(i) + "]",
                   bracket(g.d_s, cb.f[i]) == cb.f[i] * Rational(-deg), {}});
    out.push_back({"(d_s|a" + std::to_string(i) + ")",
                   invariant_form(g.d_s, cb.coroot[i]) == Rational(i == 2 ? 0 : 1), {}});
    const auto parts = degree_s(g, cb.e[i]);
    out.push_back({"degree_s(e" + std::to_string(i) + ")",
                   parts.size() == 1 && parts.begin()->first == g.node_degree[i], {}});
  }
  return out;
}

std::vector<AlgebraElement> graded_basis(const Gradation& g, int k, int cap) {
  std::vector<AlgebraElement> basis;
  for (int m = -cap; m <= cap; ++m) {
    for (int r = 0; r < 8; ++r)
      for (int c = 0; r + c < 7; ++c) {
        if (g.cell_degree(m, r, c) != k) continue;
        basis.push_back(
            AlgebraElement::loop(m, Matrix::unit(r, c) - Matrix::unit(7 - c, 7 - r)));
      }
  }
  if (k == 0) {
    basis.push_back(AlgebraElement::central(Rational(1)));
    basis.push_back(AlgebraElement::derivation(Rational(1)));
  }
  return basis;
}

}  // namespace dsp6
