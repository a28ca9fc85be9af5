#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "towerlab/jr.hpp"

using namespace towerlab;

namespace {

Rat pow10_inv(int digits) { return make_rat(1, pow_int(10, static_cast<unsigned long>(digits))); }

}  // namespace

TEST_CASE("house: examples") {
  auto cs1 = make_conjugate_set({2, 0}, 1, UPoly::x(), 30);
  RealBall h1 = house(cs1);
  CHECK((h1 * h1).contains(Rat(2)));  // sqrt(2)

  auto cs2 = make_conjugate_set({2, 1}, 1, UPoly::x(), 30);
  RealBall h2 = house(cs2);
  CHECK((h2 * h2).contains(Rat(3)));  // sqrt(3)

  auto cs3 = make_conjugate_set({4, 3}, 2, UPoly::constant(Rat(5)), 30);
  CHECK(house(cs3).contains(Rat(5)));
}

TEST_CASE("alpha_limit") {
  auto a4 = alpha_limit(4, 40);
  CHECK(a4.certainly_gt(make_rat(25615528, 10000001)));
  CHECK(a4.certainly_lt(make_rat(25615529, 10000000)));
  // (2 alpha - 1)^2 = 17
  auto t = (a4 + a4 - RealBall(Rat(1)));
  CHECK((t * t).contains(Rat(17)));

  CHECK(alpha_limit(2, 40).is_exact());
  CHECK(alpha_limit(2, 40).mid() == 2);
  CHECK(alpha_limit(6, 40).mid() == 3);
  CHECK_THROWS_AS(alpha_limit(1, 40), precondition_error);
}

TEST_CASE("house_trajectory: examples") {
  auto dec = house_trajectory({4, 3}, 3, 30);
  REQUIRE(dec.size() == 3);
  CHECK((dec[0] * dec[0]).contains(Rat(7)));
  CHECK(dec[0].certainly_gt(dec[1]));
  CHECK(dec[1].certainly_gt(dec[2]));
  CHECK(dec[1].certainly_gt(make_rat(2577, 1000)));
  CHECK(dec[1].certainly_lt(make_rat(2578, 1000)));
  CHECK(dec[2].certainly_gt(make_rat(2564, 1000)));
  CHECK(dec[2].certainly_lt(make_rat(2565, 1000)));

  auto inc = house_trajectory({2, 0}, 3, 30);
  CHECK(inc[0].certainly_lt(inc[1]));
  CHECK(inc[1].certainly_lt(inc[2]));
  CHECK(inc[1].certainly_gt(make_rat(18477, 10000)));
  CHECK(inc[1].certainly_lt(make_rat(18479, 10000)));
  CHECK(inc[2].certainly_gt(make_rat(19615, 10000)));
  CHECK(inc[2].certainly_lt(make_rat(19617, 10000)));

  auto inc21 = house_trajectory({2, 1}, 2, 30);
  CHECK(inc21[0].certainly_lt(inc21[1]));
  CHECK((inc21[0] * inc21[0]).contains(Rat(3)));

  CHECK_THROWS_AS(house_trajectory({5, 4}, 2, 30), precondition_error);
}

TEST_CASE("house trajectory contracts toward alpha") {
  // |house_n - alpha| shrinks by better than 1/(2 alpha - 1) once the
  // house is below alpha + 1
  for (Pair p : {Pair{4, 3}, Pair{2, 0}, Pair{6, 4}}) {
    int N = 10;
    auto hs = house_trajectory(p, N, 40);
    auto alpha = alpha_limit(p.nu, 40);
    Rat ratio_bound = Rat(1) / (alpha.lo() * 2 - 1);
    for (int n = 1; n < N; ++n) {
      RealBall prev_gap = (hs[static_cast<size_t>(n - 1)] - alpha).abs();
      RealBall gap = (hs[static_cast<size_t>(n)] - alpha).abs();
      if (hs[static_cast<size_t>(n - 1)].certainly_lt(alpha.lo() + 1))
        CHECK(gap.hi() < prev_gap.hi() * ratio_bound);
    }
  }
}

TEST_CASE("ot_census: examples") {
  // (4,3), t = 6, level 2: 3 + x_2 qualifies
  auto c = ot_census({4, 3}, Rat(6), 2, 5, 30);
  bool found = false;
  for (const auto& w : c.witnesses)
    if (w.c0 == 3 && w.c1 == 1) found = true;
  CHECK(found);
  CHECK(c.undecided.empty());

  auto none = ot_census({4, 3}, Rat(1), 2, 5, 30);
  CHECK(none.count == 0);

  auto rat1 = ot_census({2, 0}, Rat(1000), 1, 1, 30);
  bool has_one = false;
  for (const auto& w : rat1.witnesses)
    if (w.c0 == 1 && w.c1 == 0) has_one = true;
  CHECK(has_one);
}

TEST_CASE("ot_census witnesses re-verified against fresh conjugates") {
  Rat t(6);
  auto c = ot_census({4, 3}, t, 2, 4, 30);
  auto xs = generator_conjugates({4, 3}, 2, digits_to_bits(60));
  for (const auto& w : c.witnesses) {
    for (const auto& x : xs) {
      RealBall v = RealBall(Rat(w.c0)) + RealBall(Rat(w.c1)) * x;
      CHECK(v.certainly_gt(Rat(0)));
      CHECK(v.certainly_lt(t));
    }
  }
}

TEST_CASE("jr_upper_estimate: examples") {
  auto rep1 = jr_upper_estimate({4, 3}, 1, 40);
  // 3 + sqrt(7)
  RealBall seven = (rep1.jr_upper - RealBall(Rat(3)));
  CHECK((seven * seven).contains(Rat(7)));
  CHECK(rep1.shift == 3);

  auto rep12 = jr_upper_estimate({4, 3}, 12, 40);
  // within 1e-6 of 3 + (1 + sqrt(17))/2
  RealBall diff = (rep12.jr_upper - rep12.limit_value).abs();
  CHECK(diff.hi() < pow10_inv(6));
  for (size_t i = 1; i < rep12.sup_estimates.size(); ++i)
    CHECK(rep12.sup_estimates[i - 1].certainly_gt(rep12.sup_estimates[i]));

  CHECK_THROWS_AS(jr_upper_estimate({2, 0}, 4, 40), precondition_error);
}

TEST_CASE("jr upper bound decreases with depth") {
  auto r4 = jr_upper_estimate({4, 3}, 4, 40);
  auto r8 = jr_upper_estimate({4, 3}, 8, 40);
  auto r12 = jr_upper_estimate({4, 3}, 12, 40);
  CHECK(r4.jr_upper.certainly_gt(r8.jr_upper));
  CHECK(r8.jr_upper.certainly_gt(r12.jr_upper));
  // always above the limit value
  CHECK(r12.jr_upper.lo() > r12.limit_value.lo());
}

TEST_CASE("trajectory csv") {
  std::string csv = trajectory_csv({4, 3}, 3, 20);
  CHECK(csv.rfind("n,house,gap\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("1,2.6457") != std::string::npos);
}
