#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "tradeq/errors.hpp"
#include "tradeq/kernels.hpp"

using namespace tradeq;

namespace {

PreparedInstance prepare(const TradeInstance& instance) {
    return PreparedInstance(instance.demand, instance.supply);
}

} // namespace

TEST_CASE("prepared instance derives totals and activity masks") {
    DemandMatrix c = DemandMatrix::from_rows({{1, 0}, {2, 0}});
    SupplyMatrix b = SupplyMatrix::from_rows({{0, 3}, {0, 4}});
    PreparedInstance inst(c, b);
    CHECK(inst.supply_totals == std::vector<double>{3.0, 4.0});
    CHECK(inst.supply_total_sum == 7.0);
    CHECK(inst.demand_active == std::vector<std::uint8_t>{1, 0});
    CHECK(inst.supply_active == std::vector<std::uint8_t>{0, 1});
}

TEST_CASE("guard policies differ only on inadmissible countries") {
    // country 2 demands good 2 only but earns from good 1
    DemandMatrix c = DemandMatrix::from_rows({{1, 0}, {0, 1}});
    SupplyMatrix b = SupplyMatrix::from_rows({{0, 1}, {0, 0}});
    PreparedInstance inst(c, b);
    EvalScratch scratch;
    std::vector<double> excess(2);
    const double prices[2] = {1.0, 0.0};
    CHECK(!excess_demand_kernel(inst, prices, 1e-12, GuardPolicy::reject, scratch, excess.data()));
    CHECK(excess_demand_kernel(inst, prices, 1e-12, GuardPolicy::clamp, scratch, excess.data()));
    const double admissible[2] = {1.0, 1.0};
    CHECK(excess_demand_kernel(inst, admissible, 1e-12, GuardPolicy::reject, scratch,
                               excess.data()));
}

TEST_CASE("complementarity residual separates slack and violation") {
    const std::vector<double> prices = {1.0, 0.5, 0.0};
    const std::vector<double> excess = {0.0, -2.0, 3.0};
    // 0.5 * 2 from priced slack, 3 from violation, zero-priced slack free
    CHECK(complementarity_residual(prices, excess) == doctest::Approx(4.0));
    const std::vector<double> clear = {0.0, -5.0};
    const std::vector<double> p2 = {1.0, 0.0};
    CHECK(complementarity_residual(p2, clear) == 0.0);
}

TEST_CASE("batch evaluation matches the serial reference bit for bit") {
    std::mt19937_64 rng(404);
    for (int round = 0; round < 10; ++round) {
        const auto instance = testing::random_instance(rng, 6, 6);
        PreparedInstance inst = prepare(instance);
        const std::size_t n = inst.goods;
        const std::size_t count = 512;
        std::vector<double> prices(count * n);
        std::uniform_real_distribution<double> price(0.05, 1.0);
        for (double& v : prices)
            v = price(rng);
        std::vector<double> serial(count * n), parallel(count * n);
        const double guard = 1e-12 * inst.supply_total_sum;
        excess_demand_batch_reference(inst, prices, count, guard, GuardPolicy::clamp, serial);
        excess_demand_batch(inst, prices, count, guard, GuardPolicy::clamp, parallel);
        CHECK(serial == parallel);
    }
}

TEST_CASE("batch evaluation surfaces inadmissible points") {
    DemandMatrix c = DemandMatrix::from_rows({{1, 0}, {0, 1}});
    SupplyMatrix b = SupplyMatrix::from_rows({{0, 1}, {0, 0}});
    PreparedInstance inst(c, b);
    const std::vector<double> prices = {1.0, 1.0, 1.0, 0.0}; // second point inadmissible
    std::vector<double> excess(4);
    CHECK_THROWS_AS(
        excess_demand_batch(inst, prices, 2, 1e-12, GuardPolicy::reject, excess),
        UndefinedDemand);
    CHECK_THROWS_AS(
        excess_demand_batch_reference(inst, prices, 2, 1e-12, GuardPolicy::reject, excess),
        UndefinedDemand);
}

TEST_CASE("simplex scan matches the serial reference exactly") {
    std::mt19937_64 rng(808);
    for (int round = 0; round < 12; ++round) {
        const auto instance = testing::random_instance(rng, 3, 3);
        PreparedInstance inst = prepare(instance);
        const double guard = 1e-12 * inst.supply_total_sum;
        const auto serial = simplex_scan_reference(inst, 200, 1e-10, guard, true);
        const auto parallel = simplex_scan(inst, 200, 1e-10, guard, true);
        CHECK(serial.node_count == parallel.node_count);
        CHECK(serial.admissible_count == parallel.admissible_count);
        CHECK(serial.feasible_count == parallel.feasible_count);
        CHECK(serial.has_best == parallel.has_best);
        if (serial.has_best) {
            CHECK(serial.best_index == parallel.best_index);
            CHECK(serial.best_residual == parallel.best_residual);
            CHECK(serial.best_point == parallel.best_point);
            CHECK(serial.best_zero_components == parallel.best_zero_components);
        }
        CHECK(serial.feasible_points == parallel.feasible_points);
    }
}

TEST_CASE("simplex scan node counts follow the composition formula") {
    DemandMatrix c = DemandMatrix::from_rows({{1}, {1}, {1}});
    SupplyMatrix b = SupplyMatrix::from_rows({{1}, {1}, {1}});
    PreparedInstance inst(c, b);
    const auto scan = simplex_scan_reference(inst, 10, 1e-10, 1e-12, false);
    CHECK(scan.node_count == 66); // (N+1)(N+2)/2 for n = 3
    DemandMatrix c2 = DemandMatrix::from_rows({{1}, {1}});
    SupplyMatrix b2 = SupplyMatrix::from_rows({{1}, {1}});
    PreparedInstance inst2(c2, b2);
    CHECK(simplex_scan_reference(inst2, 10, 1e-10, 1e-12, false).node_count == 11);
    DemandMatrix c1 = DemandMatrix::from_rows({{1}});
    SupplyMatrix b1 = SupplyMatrix::from_rows({{1}});
    PreparedInstance inst1(c1, b1);
    CHECK(simplex_scan_reference(inst1, 10, 1e-10, 1e-12, false).node_count == 1);
}

TEST_CASE("simplex scan refuses more than three goods") {
    DemandMatrix c(4, 1, std::vector<double>(4, 1.0));
    SupplyMatrix b(4, 1, std::vector<double>(4, 1.0));
    PreparedInstance inst(c, b);
    CHECK_THROWS_AS(simplex_scan(inst, 10, 1e-10, 1e-12, false), DimensionTooLarge);
}
