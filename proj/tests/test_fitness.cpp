#include <stdexcept>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "ccknap/fitness.hpp"
#include "ccknap/rng.hpp"

using namespace ccknap;

namespace {

// E_W = 80 < B = 100 with a tiny bound: comfortably feasible at alpha 0.01.
CCInstance feasible_instance() {
  CCInstance inst;
  inst.n = 2;
  inst.profits = {30, 12};
  inst.expected_weights = {30.0, 50.0};
  inst.model = WeightModel::normal({0.5, 0.5});
  inst.capacity = 100.0;
  inst.alpha = 0.01;
  return inst;
}

// E_W = 120 > B = 100: expected-weight infeasible.
CCInstance overweight_instance() {
  CCInstance inst;
  inst.n = 2;
  inst.profits = {7, 9};
  inst.expected_weights = {60.0, 60.0};
  inst.model = WeightModel::normal({1.0, 1.0});
  inst.capacity = 100.0;
  inst.alpha = 0.01;
  return inst;
}

// Four selected items with bound exactly 0.25 under cantelli.
CCInstance quarter_bound_instance() {
  CCInstance inst;
  inst.n = 4;
  inst.profits = {5, 5, 5, 5};
  inst.expected_weights = {50.0, 50.0, 50.0, 50.0};
  inst.model = WeightModel::uniform_additive(25.0);
  inst.capacity = 250.0;
  inst.alpha = 0.01;
  return inst;
}

}  // namespace

TEST_CASE("so_fitness on the three reference situations") {
  const CCInstance good = feasible_instance();
  const SOFitness f1 =
      so_fitness(good, Solution::from_string("11"), BoundMethod::cantelli);
  CHECK(f1.weight_excess == 0.0);
  CHECK(f1.risk_excess == 0.0);
  CHECK(f1.profit == 42);
  CHECK(feasible(f1));

  const CCInstance heavy = overweight_instance();
  const SOFitness f2 =
      so_fitness(heavy, Solution::from_string("11"), BoundMethod::cantelli);
  CHECK(f2.weight_excess == 20.0);
  CHECK(f2.risk_excess == doctest::Approx(0.99).epsilon(1e-12));
  CHECK(f2.profit == 16);

  const CCInstance quarter = quarter_bound_instance();
  const SOFitness f3 =
      so_fitness(quarter, Solution::from_string("1111"), BoundMethod::cantelli);
  CHECK(f3.weight_excess == 0.0);
  CHECK(f3.risk_excess == doctest::Approx(0.24).epsilon(1e-12));
}

TEST_CASE("so_compare is lexicographic") {
  CHECK(so_compare({0, 0, 50}, {0, 0, 40}) == Cmp::better);
  CHECK(so_compare({0, 0, 40}, {0, 0, 50}) == Cmp::worse);
  CHECK(so_compare({0, 0.2, 99}, {0, 0.1, 10}) == Cmp::worse);
  CHECK(so_compare({5, 0, 100}, {0, 0.9, 1}) == Cmp::worse);
  CHECK(so_compare({0, 0, 7}, {0, 0, 7}) == Cmp::equal);
}

TEST_CASE("so_compare is total and transitive") {
  rng::Engine eng(55);
  const auto random_fitness = [&]() {
    SOFitness f;
    f.weight_excess = static_cast<double>(rng::uniform_int(eng, 0, 2));
    f.risk_excess = static_cast<double>(rng::uniform_int(eng, 0, 2)) * 0.1;
    f.profit = rng::uniform_int(eng, 0, 3);
    return f;
  };
  const auto rank = [](Cmp c) { return c == Cmp::better ? 1 : c == Cmp::equal ? 0 : -1; };
  for (int trial = 0; trial < 2000; ++trial) {
    const SOFitness a = random_fitness();
    const SOFitness b = random_fitness();
    const SOFitness c = random_fitness();
    // antisymmetry of the comparison
    CHECK(rank(so_compare(a, b)) == -rank(so_compare(b, a)));
    // transitivity: a >= b and b >= c imply a >= c
    if (so_compare(a, b) != Cmp::worse && so_compare(b, c) != Cmp::worse)
      CHECK(so_compare(a, c) != Cmp::worse);
    if (so_compare(a, b) == Cmp::equal && so_compare(b, c) == Cmp::equal)
      CHECK(so_compare(a, c) == Cmp::equal);
  }
}

TEST_CASE("feasible solutions beat any penalized solution") {
  rng::Engine eng(56);
  for (int trial = 0; trial < 500; ++trial) {
    const SOFitness clean{0.0, 0.0, rng::uniform_int(eng, 0, 100)};
    SOFitness dirty;
    if (rng::below(eng, 2) == 0)
      dirty.weight_excess = rng::uniform01(eng) * 10.0 + 1e-9;
    else
      dirty.risk_excess = rng::uniform01(eng) * 0.5 + 1e-9;
    dirty.profit = rng::uniform_int(eng, 0, 100000);
    CHECK(so_compare(clean, dirty) == Cmp::better);
  }
}

TEST_CASE("mo_fitness on the reference situations") {
  const CCInstance heavy = overweight_instance();
  const MOFitness f1 =
      mo_fitness(heavy, Solution::from_string("11"), BoundMethod::cantelli);
  CHECK(f1.risk == 21.0);
  CHECK(f1.profit == -1.0);

  const CCInstance quarter = quarter_bound_instance();
  const MOFitness f2 =
      mo_fitness(quarter, Solution::from_string("1111"), BoundMethod::cantelli);
  CHECK(f2.risk == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(f2.profit == -1.0);

  const CCInstance good = feasible_instance();
  const MOFitness f3 =
      mo_fitness(good, Solution::from_string("11"), BoundMethod::cantelli);
  CHECK(f3.risk <= good.alpha);
  CHECK(f3.profit == 42.0);
}

TEST_CASE("mo_fitness risk separates the two infeasibility regimes") {
  // risk <= 1 iff the expected weight is below the capacity
  const CCInstance quarter = quarter_bound_instance();
  CHECK(mo_fitness(quarter, Solution::from_string("1111"), BoundMethod::cantelli)
            .risk <= 1.0);
  const CCInstance heavy = overweight_instance();
  CHECK(mo_fitness(heavy, Solution::from_string("11"), BoundMethod::cantelli)
            .risk > 1.0);
}

TEST_CASE("mo_dominates is the weak product order") {
  CHECK(mo_dominates({50.0, 0.003}, {50.0, 0.003}));  // reflexive
  CHECK(mo_dominates({50.0, 0.003}, {40.0, 0.005}));
  CHECK(!mo_dominates({50.0, 0.005}, {40.0, 0.003}));  // trade-off
  CHECK(!mo_dominates({40.0, 0.003}, {50.0, 0.005}));

  rng::Engine eng(57);
  const auto random_point = [&]() {
    return MOFitness{static_cast<double>(rng::uniform_int(eng, -1, 3)),
                     static_cast<double>(rng::uniform_int(eng, 0, 3)) * 0.1};
  };
  for (int trial = 0; trial < 2000; ++trial) {
    const MOFitness a = random_point();
    const MOFitness b = random_point();
    const MOFitness c = random_point();
    if (mo_dominates(a, b) && mo_dominates(b, c)) CHECK(mo_dominates(a, c));
    // the strict part is irreflexive
    CHECK(!(mo_dominates(a, a) && !(a == a)));
  }
}

TEST_CASE("alpha-feasible solutions always dominate on profit sign") {
  rng::Engine eng(58);
  const CCInstance quarter = quarter_bound_instance();
  for (int trial = 0; trial < 200; ++trial) {
    Solution x(4);
    for (auto& bit : x.bits)
      bit = static_cast<std::uint8_t>(rng::below(eng, 2));
    const MOFitness f = mo_fitness(quarter, x, BoundMethod::cantelli);
    if (f.risk <= quarter.alpha)
      CHECK(f.profit >= 0.0);
    else
      CHECK(f.profit == -1.0);
  }
}

TEST_CASE("risk_excess is exactly the clamped violation bound") {
  rng::Engine eng(59);
  for (int trial = 0; trial < 50; ++trial) {
    const DetInstance det = generate_instance(InstanceKind::uncorr, 12, eng());
    const auto [inst, report] = adapt_instance(
        det, 100, WeightModel::uniform_additive(25.0), 0.01);
    for (int s = 0; s < 20; ++s) {
      Solution x(12);
      for (auto& bit : x.bits)
        bit = static_cast<std::uint8_t>(rng::below(eng, 2));
      for (BoundMethod method :
           {BoundMethod::cantelli, BoundMethod::chernoff}) {
        const double bound = violation_bound(inst, x, method);
        const SOFitness f = so_fitness(inst, x, method);
        CHECK(f.risk_excess == std::max(bound - inst.alpha, 0.0));
      }
    }
  }
}
