#include <random>

#include "doctest.h"
#include "support.hpp"

#include "dsp6/integrator.hpp"
#include "dsp6/weyl.hpp"

using namespace dsp6;

TEST_CASE("Cartan and orientation data") {
  const CartanData& cd = cartan_data();
  CHECK(cartan_data_consistent(cd));
  for (int j : kOuterNodes) {
    const auto sj = static_cast<std::size_t>(j);
    CHECK(cd.A[2][sj] == -1);
    CHECK(cd.U[sj][2] == 1);
    CHECK(cd.U[2][sj] == -1);
  }
  CartanData broken = cd;
  broken.U[0][2] = -1;
  CHECK_FALSE(cartan_data_consistent(broken));
  broken = cd;
  broken.A[0][1] = -1;
  CHECK_FALSE(cartan_data_consistent(broken));
}

TEST_CASE("parameter action examples") {
  const std::array<Rational, 5> a{Rational(1, 2), Rational(1, 3), Rational(5, 7), Rational(-2), Rational(3, 4)};
  const auto r2 = reflect_alpha(2, a);
  CHECK(r2[2] == -a[2]);
  for (int j : kOuterNodes) CHECK(r2[static_cast<std::size_t>(j)] == a[static_cast<std::size_t>(j)] + a[2]);
  const auto r0 = reflect_alpha(0, a);
  CHECK(r0[0] == -a[0]);
  CHECK(r0[2] == a[2] + a[0]);
  CHECK(r0[1] == a[1]);
  CHECK(null_sum(r0) == null_sum(a));
  CHECK(null_sum(r2) == null_sum(a));
  CHECK(apply_word_alpha({0, 0}, a) == a);
}

TEST_CASE("state action examples") {
  const auto pr = PviParams::from_outer(1.0, 0.5, 0.25, -0.5);
  const PviState st{2.0, 0.0, 1.0};
  const PviState r0 = reflect_state(0, st, pr);
  CHECK(r0.mu == doctest::Approx(0.5));
  CHECK(r0.lambda == 0.0);
  CHECK(r0.t == 2.0);

  // r_2 moves every outer F_j by a2/mu.
  const PviState r2 = reflect_state(2, {2.0, 0.3, 0.8}, pr);
  CHECK(r2.lambda == doctest::Approx(0.3 + pr[2] / 0.8));
  CHECK(r2.mu == 0.8);

  const auto zero = PviParams::from_outer(0.0, 0.5, 0.25, -0.5);
  const PviState on = reflect_state(0, {2.0, -2.0, 0.7}, zero);
  CHECK(on.lambda == -2.0);
  CHECK(on.mu == 0.7);
  try {
    (void)reflect_state(0, {2.0, -2.0, 0.7}, pr);
    FAIL("expected OnMirror");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOnMirror);
  }
}

TEST_CASE("exact action on F coordinates") {
  std::mt19937_64 rng(31);
  const auto& U = cartan_data().U;
  for (int trial = 0; trial < 200; ++trial) {
    std::array<Rational, 5> F, a;
    for (std::size_t j = 0; j < 5; ++j) {
      F[j] = test::small_rational(rng);
      a[j] = test::small_rational(rng);
    }
    for (int i = 0; i < 5; ++i) {
      const auto si = static_cast<std::size_t>(i);
      if (F[si] == 0 && a[si] != 0) {
        CHECK_THROWS_AS(reflect_f(i, F, a), Error);
        continue;
      }
      const auto img = reflect_f(i, F, a);
      CHECK(img[si] == F[si]);
      for (std::size_t j = 0; j < 5; ++j)
        if (U[si][j] == 0) CHECK(img[j] == F[j]);
      // Involution: r_i^2 = 1 on both parameters and coordinates.
      CHECK(reflect_f(i, img, reflect_alpha(i, a)) == F);
    }
  }
}

TEST_CASE("word parsing") {
  CHECK(parse_word("0,2,1,2") == WeylWord{0, 2, 1, 2});
  CHECK(parse_word(" 3 , 4 ") == WeylWord{3, 4});
  CHECK(parse_word("").empty());
  CHECK(to_string(WeylWord{0, 2, 1}) == "0,2,1");
  CHECK_THROWS_AS(parse_word("5"), Error);
  CHECK_THROWS_AS(parse_word("0,,1"), Error);
  CHECK_THROWS_AS(parse_word("x"), Error);
  CHECK_THROWS_AS(parse_word("-1"), Error);
}

TEST_CASE("words report the failing prefix") {
  const auto pr = PviParams::from_outer(0.5, 0.5, 0.5, 0.5);
  // After r_2 the point lands on F_0 = 0 for r_0.
  const double t = 2.0;
  const double mu = 0.5;
  const double lambda = -t - pr[2] / mu;
  try {
    (void)apply_word({2, 0}, {t, lambda, mu}, pr);
    FAIL("expected OnMirror");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOnMirror);
    CHECK(std::string(e.what()).find("prefix 1") != std::string::npos);
  }
}

TEST_CASE("Coxeter relations") {
  const auto rels = coxeter_relations();
  // 5 involutions, 4 braid relations of length 6 and 6 commuting pairs.
  CHECK(rels.size() == 15);
  const CoxeterReport rep = verify_coxeter(100, 7);
  CHECK(rep.relations == 15);
  CHECK(rep.trials == 100);
  CHECK(rep.params_exact);
  CHECK(rep.max_state_residual < 1e-10);
  CHECK(rep.pass());
}

TEST_CASE("generators map solutions to solutions") {
  const auto pr = PviParams::from_outer(0.3, 0.7, -0.4, 1.1);
  const Trajectory traj = integrate({3.0, 0.4, 0.9}, pr, 3.5);
  REQUIRE(traj.completed());
  std::vector<double> times;
  for (int i = 0; i <= 50; ++i) times.push_back(3.01 + 0.48 * i / 50.0);
  std::vector<WeylWord> words{{0}, {1}, {2}, {3}, {4}, {0, 2, 1, 2}, {2, 3, 2, 4, 0}};
  for (const WeylWord& w : words) {
    CAPTURE(to_string(w));
    const PviParams img = apply_word(w, traj.at(3.2), pr).second;
    const auto path = [&](double t) { return apply_word(w, traj.at(t), pr).first; };
    CHECK(vector_field_defect(path, img, times) < 1e-6);
  }
}
