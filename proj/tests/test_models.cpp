#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "netgrow/models.hpp"
#include "netgrow/steady.hpp"
#include "zoo_instances.hpp"

using namespace netgrow;

namespace {

double head_of(const ModelSpec& spec) {
  return head_probability(spec.birth.at(spec.birth.m), eval_limit(spec.limit, spec.birth.m));
}

}  // namespace

TEST_CASE("registry lists all nine models") {
  const auto& registry = list_models();
  CHECK(registry.size() == 9);
  std::vector<std::string> expected = {"ba",  "random", "ll1", "ll2", "collab",
                                       "zrz", "kk",     "dms", "lcd"};
  for (const auto& name : expected) {
    bool found = false;
    for (const auto& info : registry) found |= (info.name == name);
    INFO("model ", name);
    CHECK(found);
  }
  for (const auto& info : registry) {
    if (info.name == "ba") {
      CHECK(info.params.size() == 1);
      CHECK(info.params.front().name == "m");
      CHECK(!info.multiple_links);
    }
    if (info.name == "dms") CHECK(info.multiple_links);
    if (info.name == "lcd") CHECK(info.multiple_links);
  }
}

TEST_CASE("ba") {
  CHECK(head_of(build_ba(3)) == doctest::Approx(0.4).epsilon(1e-13));
  CHECK(*build_ba(1).expected_gamma == 3.0);
  CHECK_THROWS_AS(build_ba(0), std::invalid_argument);

  // k^3 P(k) approaches the exact prefactor 2m(m+1); the closed form's own
  // anchor value carries the same constant.
  const auto spec = build_ba(2);
  const auto dist = steady_closed_form_affine(spec.birth, spec.limit, 10000);
  CHECK(std::pow(1e4, 3.0) * dist.at(10000) == doctest::Approx(12.0).epsilon(5e-3));
  for (std::int64_t m : {1, 2, 3}) {
    const auto d = steady_closed_form_affine(build_ba(m).birth, build_ba(m).limit, 100);
    CHECK(*d.tail->prefactor ==
          doctest::Approx(2.0 * static_cast<double>(m) * static_cast<double>(m + 1))
              .epsilon(1e-9));
  }
}

TEST_CASE("random") {
  const auto spec = build_random(1);
  const auto dist = steady_by_recurrence(spec.birth, spec.limit, 10);
  CHECK(dist.at(1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(dist.at(4) == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
  CHECK(classify(build_random(2).limit.A, build_random(2).limit.B) == ChainClass::Geometric);
  CHECK(!build_random(2).expected_gamma.has_value());
}

TEST_CASE("ll1") {
  SUBCASE("p = 0 reproduces ba exactly") {
    const auto mixed = build_ll1(2, 0.0);
    const auto pure = build_ba(2);
    for (std::int64_t t : {1, 10, 1000, 1000000})
      for (std::int64_t k = 1; k <= 20; ++k)
        CHECK(mixed.rate.eval(t, k) == pure.rate.eval(t, k));
    CHECK(mixed.limit.A == pure.limit.A);
    CHECK(mixed.limit.B == pure.limit.B);
  }
  SUBCASE("exponent formula") {
    CHECK(*build_ll1(1, 0.5).expected_gamma == doctest::Approx(4.0).epsilon(1e-14));
  }
  SUBCASE("p = 1 is geometric") {
    const auto spec = build_ll1(1, 1.0);
    CHECK(classify(spec.limit.A, spec.limit.B) == ChainClass::Geometric);
    CHECK(!spec.expected_gamma.has_value());
  }
}

TEST_CASE("ll2") {
  CHECK(*build_ll2(1, 0.0, 2, 2).expected_gamma == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(*build_ll2(1, 0.5, 2, 2).expected_gamma == doctest::Approx(5.0).epsilon(1e-14));
  const auto spec = build_ll2(1, 1.0, 2, 2);
  CHECK(classify(spec.limit.A, spec.limit.B) == ChainClass::Geometric);
  CHECK(head_of(build_ll2(1, 0.5, 2, 2)) == doctest::Approx(4.0 / 7.0).epsilon(1e-13));
}

TEST_CASE("collab") {
  CHECK(*build_collab(2, 2, 2).expected_gamma == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(*build_collab(3, 3, 6).expected_gamma == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(build_collab(5, 5, 20).limit.A == doctest::Approx(0.8).epsilon(1e-15));
  // T = 2 and ba m=1 share the chain law exactly.
  const auto a = steady_by_recurrence(build_collab(2, 2, 2).birth, build_collab(2, 2, 2).limit, 200);
  const auto b = steady_by_recurrence(build_ba(1).birth, build_ba(1).limit, 200);
  for (std::int64_t k = 1; k <= 200; ++k)
    CHECK(a.at(k) == doctest::Approx(b.at(k)).epsilon(1e-14));
}

TEST_CASE("zrz") {
  const auto spec = build_zrz(3);
  CHECK(*spec.expected_gamma == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(eval_limit(spec.limit, 3) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(head_of(spec) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(build_zrz(4).limit.A == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(build_zrz(2), std::invalid_argument);

  // The intercept from the rate itself: a fit at t up to 1e8 lands on
  // -(m-2), far from -m(m-2).
  const auto fitted =
      extract_limit(spec.rate, {3, 4, 5, 6, 7, 8}, {100000, 1000000, 100000000});
  CHECK(fitted.A == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(fitted.B == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(std::abs(fitted.B - (-3.0)) > 1.9);
}

TEST_CASE("kk") {
  const auto spec = build_kk(0.5);
  const auto dist = steady_by_recurrence(spec.birth, spec.limit, 50);
  CHECK(dist.at(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(dist.at(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(dist.at(2) == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
  CHECK(*build_kk(0.25).expected_gamma == doctest::Approx(5.0).epsilon(1e-14));
  CHECK_THROWS_AS(build_kk(0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_kk(1.0), std::invalid_argument);
}

TEST_CASE("dms") {
  CHECK(head_of(build_dms(1, 1.0)) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(*build_dms(2, 2.0).expected_gamma == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(head_of(build_dms(2, 4.0)) == doctest::Approx(6.0 / 14.0).epsilon(1e-13));
  CHECK_THROWS_AS(build_dms(1, 0.0), std::invalid_argument);
  CHECK(*build_dms(1, 0.0, true).expected_gamma == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("lcd") {
  CHECK(head_of(build_lcd(3)) == doctest::Approx(0.4).epsilon(1e-13));
  for (std::int64_t m : {1, 2, 5}) CHECK(*build_lcd(m).expected_gamma == 3.0);
  // Shares the ba closed form.
  const auto mine = steady_closed_form_affine(build_lcd(1).birth, build_lcd(1).limit, 100);
  const auto ba = steady_closed_form_affine(build_ba(1).birth, build_ba(1).limit, 100);
  CHECK(mine.at(3) == doctest::Approx(1.0 / 15.0).epsilon(1e-13));
  for (std::int64_t k = 1; k <= 100; ++k)
    CHECK(mine.at(k) == doctest::Approx(ba.at(k)).epsilon(1e-12));
}

TEST_CASE("declared limits match the rates across the zoo") {
  for (const auto& spec : zoo::canonical()) {
    INFO("model ", spec.name);
    const std::vector<std::int64_t> probes = {spec.birth.m,     spec.birth.m + 1,
                                              spec.birth.m + 2, spec.birth.m + 3,
                                              spec.birth.m + 5, spec.birth.m + 9};
    const auto fitted = extract_limit(spec.rate, probes, {1000, 10000, 100000, 1000000});
    CHECK(std::abs(fitted.A - spec.limit.A) < 1e-4);
    CHECK(std::abs(fitted.B - spec.limit.B) < 1e-4);
  }
}

TEST_CASE("scaled rates settle along the decade grid") {
  for (const auto& spec : zoo::canonical()) {
    INFO("model ", spec.name);
    for (std::int64_t k = spec.birth.m; k <= spec.birth.m + 4; ++k) {
      double prev = -1.0;
      bool first = true;
      for (std::int64_t t : {1000, 10000, 100000, 1000000}) {
        const double f = spec.rate.eval(t, k);
        CHECK(f >= 0.0);
        CHECK(f < 1.0);
        const double dev = std::abs(static_cast<double>(t) * f - eval_limit(spec.limit, k));
        if (!first) CHECK(dev <= prev + 1e-12);
        prev = dev;
        first = false;
      }
    }
  }
}

TEST_CASE("expected exponents equal 1 + 1/A") {
  for (const auto& spec : zoo::canonical()) {
    if (spec.limit.A > 0.0) {
      REQUIRE(spec.expected_gamma.has_value());
      CHECK(*spec.expected_gamma ==
            doctest::Approx(tail_exponent_exact(spec.limit.A)).epsilon(1e-12));
    }
  }
}

TEST_CASE("stationary heads across the zoo") {
  for (const auto& spec : zoo::canonical()) {
    const auto dist = steady_by_recurrence(spec.birth, spec.limit, spec.birth.M + 10);
    INFO("model ", spec.name);
    CHECK(dist.at(spec.birth.m) == doctest::Approx(head_of(spec)).epsilon(1e-12));
  }
  // Heads with known closed-form constants.
  CHECK(steady_by_recurrence(build_ba(3).birth, build_ba(3).limit, 20).at(3) ==
        doctest::Approx(0.4).epsilon(1e-12));
  CHECK(steady_by_recurrence(build_lcd(3).birth, build_lcd(3).limit, 20).at(3) ==
        doctest::Approx(0.4).epsilon(1e-12));
  CHECK(steady_by_recurrence(build_kk(0.5).birth, build_kk(0.5).limit, 20).at(0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(steady_by_recurrence(build_dms(1, 1.0).birth, build_dms(1, 1.0).limit, 20).at(0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("build_model applies defaults and rejects off-schema parameters") {
  const auto spec = build_model("collab", {{"T", 3}});
  CHECK(spec.params.at("m0") == 3);
  CHECK(spec.params.at("k0") == 6);
  CHECK_THROWS_AS(build_model("ba", {{"p", 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(build_model("nope", {}), std::invalid_argument);
  CHECK_THROWS_AS(build_model("ba", {{"m", 1.5}}), std::invalid_argument);
}
