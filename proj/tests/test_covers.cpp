#include "doctest.h"

#include <numeric>

#include "amalgam/classify.hpp"
#include "amalgam/covers.hpp"

using namespace amalgam;

namespace {

const CurveSpec NS = CurveSpec::nonseparating();

// composite permutation of the boundary word, built letter by letter
std::vector<int> word_permutation(const GraphCover &c, const Word &w) {
  std::vector<int> image(static_cast<std::size_t>(c.degree));
  std::iota(image.begin(), image.end(), 0);
  for (const auto &l : w) {
    const auto &p = c.action.at(l.gen);
    for (auto &v : image) {
      if (l.exp > 0) {
        v = p[static_cast<std::size_t>(v)];
      } else {
        v = static_cast<int>(std::find(p.begin(), p.end(), v) - p.begin());
      }
    }
  }
  return image;
}

} // namespace

TEST_CASE("boundary word") {
  auto w1 = boundary_word(1);
  CHECK(w1 == Word{{"a1", 1}, {"b1", 1}, {"a1", -1}, {"b1", -1}});
  CHECK(boundary_word(2).size() == 8);
  CHECK(boundary_word(3).size() == 12);
  CHECK(to_string(w1) == "a1 b1 a1^-1 b1^-1");
}

TEST_CASE("odd cover of genus two and degree seven") {
  auto c = build_odd_cover(2, 7);
  auto r = verify_cover(c);
  CHECK(r.valid);
  CHECK(r.chi == -21);
  CHECK(euler_characteristic({11, 1}) == r.chi);
  auto w = boundary_word(2);
  CHECK(word_action(c, power(w, 7), 0) == 0);
  for (int k = 1; k <= 6; ++k)
    CHECK(word_action(c, power(w, k), 0) != 0);
  CHECK(boundary_components(c, w) == std::vector<int>{7});
  CHECK(first_return(c, w, 0) == 7);
}

TEST_CASE("small odd covers") {
  auto trivial = build_odd_cover(1, 1);
  CHECK(verify_cover(trivial).valid);
  CHECK(first_return(trivial, boundary_word(1), 0) == 1);

  auto c = build_odd_cover(1, 5);
  auto r = verify_cover(c);
  CHECK(r.chi == -5);
  CHECK(euler_characteristic({3, 1}) == -5);
  CHECK(boundary_components(c, boundary_word(1)) == std::vector<int>{5});
  CHECK_THROWS_AS(build_odd_cover(2, 4), ValidationError);
}

TEST_CASE("cycle structure agrees with the composite permutation") {
  for (int g = 1; g <= 3; ++g) {
    for (int n = 1; n <= 21; n += 2) {
      auto c = build_odd_cover(g, n);
      auto perm = word_permutation(c, boundary_word(g));
      int k = 1;
      for (int v = perm[0]; v != 0; v = perm[static_cast<std::size_t>(v)])
        ++k;
      CHECK(k == n);
      CHECK(first_return(c, boundary_word(g), 0) == n);
    }
  }
}

TEST_CASE("verify cover negative controls") {
  GraphCover bad;
  bad.degree = 2;
  bad.generators = {"a1", "b1"};
  bad.action = {{"a1", {0, 0}}, {"b1", {1, 0}}};
  auto r = verify_cover(bad);
  CHECK_FALSE(r.valid);
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0] == "generator a1 is not a bijection");

  GraphCover split;
  split.degree = 2;
  split.generators = {"a1", "b1"};
  split.action = {{"a1", {0, 1}}, {"b1", {0, 1}}};
  CHECK_FALSE(verify_cover(split).transitive);
}

TEST_CASE("boundary components of trivial actions") {
  auto c = build_odd_cover(2, 5);
  CHECK(boundary_components(c, {}) == std::vector<int>{1, 1, 1, 1, 1});
  GraphCover d;
  d.degree = 2;
  d.generators = {"a1", "b1"};
  d.action = {{"a1", {1, 0}}, {"b1", {0, 1}}};
  CHECK(boundary_components(d, boundary_word(1)) == std::vector<int>{1, 1});
  CHECK_THROWS_AS(word_action(d, {{"c7", 1}}, 0), ValidationError);
}

TEST_CASE("simulated labels end at zero") {
  auto c = build_odd_cover(2, 7);
  auto sim = simulated_labels(c, 7);
  auto formula = formula_labels(7);
  CHECK(sim.size() == 8);
  CHECK(sim.front() == 0);
  CHECK(sim.back() == 0);
  CHECK(formula.back() == 0);
  CHECK(sim[1] == formula[1]);
}

TEST_CASE("existcovers arithmetic") {
  auto x1 = Amalgam::make(2, NS, 2, NS);
  auto x2 = Amalgam::make(3, NS, 3, NS);
  auto e = existcovers(x1, x2);
  CHECK(e.L == -16);
  CHECK(e.d1 == 4);
  CHECK(e.d2 == 2);
  CHECK(check_piece_covers(e.y1, e.d1, e.L).empty());

  auto same = existcovers(x2, x2);
  CHECK(same.L == -16);
  CHECK(same.d1 == 2);
  CHECK(same.d2 == 2);

  std::int64_t sum = 0;
  for (const auto &p : e.y2)
    sum += p.chi;
  CHECK(sum == e.L);

  auto broken = e.y1;
  broken[0].boundaries[0].degree += 1;
  CHECK_FALSE(check_piece_covers(broken, e.d1, e.L).empty());
}

TEST_CASE("common cover") {
  auto a = Amalgam::make(2, NS, 3, NS);
  auto b = Amalgam::make(3, NS, 5, NS);
  auto cc = common_cover(a, b);
  REQUIRE(cc);
  CHECK(cc->chis.size() == 4);
  auto self = common_cover(a, a);
  REQUIRE(self);
  CHECK(self->d1 == self->d2);
  CHECK_FALSE(common_cover(Amalgam::make(2, NS, 2, NS), a).has_value());
}
