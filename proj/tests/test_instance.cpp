#include <stdexcept>
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>

#include "doctest.h"

#include "ccknap/instance.hpp"
#include "ccknap/rng.hpp"

using namespace ccknap;

namespace {

// Independent subset-enumeration optimum for small deterministic instances.
long long brute_force_optimum(const DetInstance& det) {
  long long best = 0;
  const std::uint32_t limit = 1u << det.n;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    long long weight = 0;
    long long value = 0;
    for (int i = 0; i < det.n; ++i) {
      if (mask & (1u << i)) {
        weight += det.weights[static_cast<std::size_t>(i)];
        value += det.profits[static_cast<std::size_t>(i)];
      }
    }
    if (weight <= det.capacity && value > best) best = value;
  }
  return best;
}

Solution from_mask(int n, std::uint32_t mask) {
  Solution x(n);
  for (int i = 0; i < n; ++i)
    x.bits[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>((mask >> i) & 1u);
  return x;
}

}  // namespace

TEST_CASE("parse_instance maps the canonical format") {
  const DetInstance det = parse_instance("3\n10 5\n6 4\n5 3\n7");
  CHECK(det.n == 3);
  CHECK(det.profits == std::vector<long long>{10, 6, 5});
  CHECK(det.weights == std::vector<long long>{5, 4, 3});
  CHECK(det.capacity == 7);
}

TEST_CASE("parse_instance reports a count mismatch with the line number") {
  try {
    parse_instance("3\n10 5\n6 4\n7");
    FAIL("expected a parse error");
  } catch (const std::runtime_error& error) {
    const std::string message = error.what();
    CHECK(message.find("expected 3 item lines, found 2") != std::string::npos);
    CHECK(message.find("line") != std::string::npos);
  }
}

TEST_CASE("parse_instance rejects malformed input") {
  CHECK_THROWS_AS(parse_instance(""), std::runtime_error);
  CHECK_THROWS_AS(parse_instance("x\n1 1\n1"), std::runtime_error);
  CHECK_THROWS_AS(parse_instance("1\n0 5\n7"), std::runtime_error);
  CHECK_THROWS_AS(parse_instance("1\n5 -2\n7"), std::runtime_error);
  CHECK_THROWS_AS(parse_instance("1\n5 5\n0"), std::runtime_error);
  CHECK_THROWS_AS(parse_instance("2\n5 5\n1 2 3\n7"), std::runtime_error);
}

TEST_CASE("serialize/parse round-trips") {
  const std::string canonical = "3\n10 5\n6 4\n5 3\n7\n";
  CHECK(serialize_instance(parse_instance(canonical)) == canonical);

  rng::Engine eng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = static_cast<int>(rng::uniform_int(eng, 1, 40));
    const DetInstance det = generate_instance(
        trial % 2 == 0 ? InstanceKind::uncorr : InstanceKind::bou_s_c, n,
        eng());
    const std::string text = serialize_instance(det);
    const DetInstance back = parse_instance(text);
    CHECK(back.n == det.n);
    CHECK(back.profits == det.profits);
    CHECK(back.weights == det.weights);
    CHECK(back.capacity == det.capacity);
    CHECK(serialize_instance(back) == text);
  }
}

TEST_CASE("generate_instance ranges and determinism") {
  const DetInstance uncorr = generate_instance(InstanceKind::uncorr, 100, 11);
  for (int i = 0; i < uncorr.n; ++i) {
    CHECK(uncorr.profits[static_cast<std::size_t>(i)] >= 1);
    CHECK(uncorr.profits[static_cast<std::size_t>(i)] <= 1000);
    CHECK(uncorr.weights[static_cast<std::size_t>(i)] >= 1);
    CHECK(uncorr.weights[static_cast<std::size_t>(i)] <= 1000);
  }
  const long long total =
      std::accumulate(uncorr.weights.begin(), uncorr.weights.end(), 0LL);
  CHECK(uncorr.capacity == total / 2);

  const DetInstance correlated =
      generate_instance(InstanceKind::bou_s_c, 60, 13, 100);
  for (int i = 0; i < correlated.n; ++i)
    CHECK(correlated.profits[static_cast<std::size_t>(i)] -
              correlated.weights[static_cast<std::size_t>(i)] ==
          100);

  const DetInstance a = generate_instance(InstanceKind::uncorr, 50, 7);
  const DetInstance b = generate_instance(InstanceKind::uncorr, 50, 7);
  CHECK(a.profits == b.profits);
  CHECK(a.weights == b.weights);
  CHECK(a.capacity == b.capacity);

  CHECK_THROWS_AS(generate_instance(InstanceKind::uncorr, 0, 1),
                  std::invalid_argument);

  const DetInstance overridden =
      generate_instance(InstanceKind::uncorr, 10, 3, 100, 1234);
  CHECK(overridden.capacity == 1234);
}

TEST_CASE("adapt_instance hand trace") {
  DetInstance det;
  det.n = 3;
  det.profits = {1, 1, 1};
  det.weights = {10, 20, 30};
  det.capacity = 35;

  const auto [inst, report] =
      adapt_instance(det, 100, WeightModel::uniform_additive(25.0), 0.01);
  CHECK(report.k == 2);  // 10+20 fits 35, adding 30 does not
  CHECK(report.gamma == 100);
  CHECK(report.original_capacity == 35);
  CHECK(report.adapted_capacity == 235.0);
  CHECK(inst.expected_weights ==
        std::vector<double>{110.0, 120.0, 130.0});
  CHECK(inst.alpha == 0.01);
  CHECK(inst.model.kind == ModelKind::uniform_additive);
}

TEST_CASE("adapt_instance with gamma zero is the identity shift") {
  const DetInstance det = generate_instance(InstanceKind::uncorr, 12, 5);
  const auto [inst, report] =
      adapt_instance(det, 0, WeightModel::deterministic(), 0.5);
  CHECK(report.adapted_capacity ==
        static_cast<double>(det.capacity));
  for (int i = 0; i < det.n; ++i)
    CHECK(inst.expected_weights[static_cast<std::size_t>(i)] ==
          static_cast<double>(det.weights[static_cast<std::size_t>(i)]));
}

TEST_CASE("adapt_instance preserves feasibility of small solutions") {
  rng::Engine eng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const DetInstance det = generate_instance(InstanceKind::uncorr, 10, eng());
    const long long gamma = rng::uniform_int(eng, 0, 200);
    const auto [inst, report] =
        adapt_instance(det, gamma, WeightModel::deterministic(), 0.5);
    for (std::uint32_t mask = 0; mask < (1u << det.n); ++mask) {
      const Solution x = from_mask(det.n, mask);
      long long weight = 0;
      for (int i = 0; i < det.n; ++i)
        if (x.bits[static_cast<std::size_t>(i)])
          weight += det.weights[static_cast<std::size_t>(i)];
      if (weight > det.capacity || x.count() > report.k) continue;
      CHECK(weight_stats(inst, x).expected <= report.adapted_capacity);
    }
  }
}

TEST_CASE("adapt_instance rejects a delta too large for the shifted weights") {
  DetInstance det;
  det.n = 2;
  det.profits = {5, 5};
  det.weights = {10, 20};
  det.capacity = 15;
  CHECK_THROWS_AS(
      adapt_instance(det, 0, WeightModel::uniform_additive(10.0), 0.01),
      std::invalid_argument);
  // the shift makes the same delta valid
  CHECK_NOTHROW(
      adapt_instance(det, 100, WeightModel::uniform_additive(10.0), 0.01));
}

TEST_CASE("weight_stats on hand examples") {
  CCInstance inst;
  inst.n = 4;
  inst.profits = {1, 2, 3, 4};
  inst.expected_weights = {50.0, 50.0, 50.0, 50.0};
  inst.model = WeightModel::uniform_additive(25.0);
  inst.capacity = 500.0;
  inst.alpha = 0.01;

  const Solution zeros(4);
  const WeightStats empty = weight_stats(inst, zeros);
  CHECK(empty.expected == 0.0);
  CHECK(empty.variance == 0.0);
  CHECK(empty.count == 0);

  const Solution ones = Solution::from_string("1111");
  const WeightStats all = weight_stats(inst, ones);
  CHECK(all.expected == 200.0);
  CHECK(all.variance == doctest::Approx(4.0 * 625.0 / 3.0).epsilon(1e-12));
  CHECK(all.count == 4);

  CCInstance relative;
  relative.n = 1;
  relative.profits = {1};
  relative.expected_weights = {300.0};
  relative.model = WeightModel::uniform_relative(0.1);
  relative.capacity = 400.0;
  relative.alpha = 0.01;
  const WeightStats single = weight_stats(relative, Solution::from_string("1"));
  CHECK(single.expected == 300.0);
  CHECK(single.variance == doctest::Approx(300.0).epsilon(1e-12));
  CHECK(single.count == 1);

  CHECK_THROWS_AS(weight_stats(inst, Solution(3)), std::invalid_argument);
}

TEST_CASE("weight_stats is additive over disjoint selections") {
  rng::Engine eng(123);
  for (int trial = 0; trial < 20; ++trial) {
    const DetInstance det = generate_instance(InstanceKind::uncorr, 16, eng());
    WeightModel model;
    switch (trial % 3) {
      case 0: model = WeightModel::uniform_additive(20.0); break;
      case 1: model = WeightModel::uniform_relative(0.3); break;
      default: {
        std::vector<double> variances(16);
        for (double& v : variances) v = rng::uniform01(eng) * 100.0;
        model = WeightModel::normal(std::move(variances));
        break;
      }
    }
    const auto [inst, report] = adapt_instance(det, 100, model, 0.1);
    const std::uint32_t mask = static_cast<std::uint32_t>(eng() & 0xffffu);
    const std::uint32_t sub = static_cast<std::uint32_t>(eng()) & mask;
    const Solution a = from_mask(16, sub);
    const Solution b = from_mask(16, mask & ~sub);
    const Solution whole = from_mask(16, mask);
    const WeightStats sa = weight_stats(inst, a);
    const WeightStats sb = weight_stats(inst, b);
    const WeightStats sw = weight_stats(inst, whole);
    CHECK(sw.expected == doctest::Approx(sa.expected + sb.expected).epsilon(1e-12));
    CHECK(sw.variance == doctest::Approx(sa.variance + sb.variance).epsilon(1e-12));
    CHECK(sw.count == sa.count + sb.count);
  }
}

TEST_CASE("profit sums selected items") {
  CCInstance inst;
  inst.n = 3;
  inst.profits = {10, 6, 5};
  inst.expected_weights = {1.0, 1.0, 1.0};
  inst.model = WeightModel::deterministic();
  inst.capacity = 10.0;
  inst.alpha = 0.5;
  CHECK(profit(inst, Solution(3)) == 0);
  CHECK(profit(inst, Solution::from_string("111")) == 21);
  CHECK(profit(inst, Solution::from_string("010")) == 6);
}

TEST_CASE("dp_optimum matches enumeration") {
  DetInstance det;
  det.n = 3;
  det.profits = {10, 6, 5};
  det.weights = {5, 4, 3};
  det.capacity = 7;
  CHECK(brute_force_optimum(det) == 11);  // items 2 and 3
  CHECK(dp_optimum(det) == 11);

  rng::Engine eng(2024);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = static_cast<int>(rng::uniform_int(eng, 1, 16));
    DetInstance random = generate_instance(InstanceKind::uncorr, n, eng());
    CHECK(dp_optimum(random) == brute_force_optimum(random));
  }
}

TEST_CASE("dp_optimum boundary capacities") {
  DetInstance det;
  det.n = 3;
  det.profits = {10, 6, 5};
  det.weights = {5, 4, 3};
  det.capacity = 12;  // everything fits
  CHECK(dp_optimum(det) == 21);
  det.capacity = 2;  // nothing fits
  CHECK(dp_optimum(det) == 0);
  det.capacity = 1LL << 40;  // over the memory budget
  CHECK_THROWS_AS(dp_optimum(det), std::length_error);
}

TEST_CASE("cc instance json round-trip") {
  const DetInstance det = generate_instance(InstanceKind::bou_s_c, 8, 21);
  const auto [inst, report] =
      adapt_instance(det, 100, WeightModel::uniform_additive(25.0), 0.001);
  const CCInstance back = cc_from_json_text(cc_to_json_text(inst));
  CHECK(back.n == inst.n);
  CHECK(back.profits == inst.profits);
  CHECK(back.expected_weights == inst.expected_weights);
  CHECK(back.model.kind == inst.model.kind);
  CHECK(back.model.delta == inst.model.delta);
  CHECK(back.capacity == inst.capacity);
  CHECK(back.alpha == inst.alpha);

  CCInstance normal = inst;
  normal.model = WeightModel::normal(std::vector<double>(8, 4.0));
  const CCInstance normal_back = cc_from_json_text(cc_to_json_text(normal));
  CHECK(normal_back.model.variances == normal.model.variances);
}

TEST_CASE("cc instance validation") {
  CCInstance inst;
  inst.n = 2;
  inst.profits = {1, 1};
  inst.expected_weights = {10.0, 20.0};
  inst.model = WeightModel::uniform_additive(5.0);
  inst.capacity = 25.0;
  inst.alpha = 0.01;
  CHECK_NOTHROW(validate(inst));

  CCInstance bad = inst;
  bad.model.delta = 10.0;  // not below min expected weight
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  bad = inst;
  bad.alpha = 0.0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad.alpha = 1.0;  // allowed: makes the constraint vacuous
  CHECK_NOTHROW(validate(bad));

  bad = inst;
  bad.model = WeightModel::uniform_relative(1.0);
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  bad = inst;
  bad.model = WeightModel::normal({1.0});  // wrong length
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}
