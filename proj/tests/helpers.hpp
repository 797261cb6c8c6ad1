#pragma once

// Shared generators for the property and acceptance suites. Everything here
// is deterministic given the caller's RNG state.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "tradeq/types.hpp"

namespace tradeq::testing {

inline GoodsSet make_goods(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t s = 0; s < n; ++s)
        labels.push_back("G" + std::to_string(s + 1));
    return GoodsSet(labels);
}

inline CountrySet make_countries(std::size_t m) {
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < m; ++k)
        labels.push_back("K" + std::to_string(k + 1));
    return CountrySet(labels);
}

/// Random instance with integer entries in {0..9}. Rejection rules keep the
/// draw inside the model's admissible class: every country demands at least
/// one good, and total supply is positive.
inline TradeInstance random_instance(std::mt19937_64& rng, std::size_t max_goods,
                                     std::size_t max_countries) {
    std::uniform_int_distribution<std::size_t> goods_dim(1, max_goods);
    std::uniform_int_distribution<std::size_t> countries_dim(1, max_countries);
    std::uniform_int_distribution<int> entry(0, 9);
    for (;;) {
        const std::size_t n = goods_dim(rng);
        const std::size_t m = countries_dim(rng);
        DemandMatrix demand(n, m);
        SupplyMatrix supply(n, m);
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t k = 0; k < m; ++k) {
                demand.set(s, k, entry(rng));
                supply.set(s, k, entry(rng));
            }
        bool all_countries_demand = true;
        for (std::size_t k = 0; k < m && all_countries_demand; ++k) {
            bool any = false;
            for (std::size_t s = 0; s < n; ++s)
                any = any || demand.at(s, k) > 0.0;
            all_countries_demand = any;
        }
        if (!all_countries_demand || supply.total() <= 0.0)
            continue;
        return TradeInstance{make_goods(n), make_countries(m), 0, std::move(demand),
                             std::move(supply)};
    }
}

/// Strictly positive random prices; admissible for any instance whose
/// countries all demand something.
inline PriceVector random_prices(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> price(0.05, 1.0);
    std::vector<double> p(n);
    for (double& v : p)
        v = price(rng);
    return PriceVector(std::move(p));
}

/// Balanced instance: demand entries are positive reals, supply is a
/// Sinkhorn rebalance of an independent positive matrix onto demand's row
/// and column totals, so row sums and column sums of both matrices match to
/// machine precision (zero trade balances at p = ones).
inline TradeInstance random_balanced_instance(std::mt19937_64& rng, std::size_t max_goods,
                                              std::size_t max_countries) {
    std::uniform_int_distribution<std::size_t> goods_dim(1, max_goods);
    std::uniform_int_distribution<std::size_t> countries_dim(1, max_countries);
    std::uniform_real_distribution<double> entry(0.5, 10.0);
    const std::size_t n = goods_dim(rng);
    const std::size_t m = countries_dim(rng);

    DemandMatrix demand(n, m);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t k = 0; k < m; ++k)
            demand.set(s, k, entry(rng));

    std::vector<double> target_rows = demand.row_totals();
    std::vector<double> target_cols = demand.column_totals();

    std::vector<std::vector<double>> x(n, std::vector<double>(m));
    for (auto& row : x)
        for (double& v : row)
            v = entry(rng);

    for (int sweep = 0; sweep < 500; ++sweep) {
        double worst = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            double col = 0.0;
            for (std::size_t s = 0; s < n; ++s)
                col += x[s][k];
            const double f = target_cols[k] / col;
            worst = std::max(worst, std::abs(f - 1.0));
            for (std::size_t s = 0; s < n; ++s)
                x[s][k] *= f;
        }
        for (std::size_t s = 0; s < n; ++s) {
            double row = 0.0;
            for (std::size_t k = 0; k < m; ++k)
                row += x[s][k];
            const double f = target_rows[s] / row;
            worst = std::max(worst, std::abs(f - 1.0));
            for (std::size_t k = 0; k < m; ++k)
                x[s][k] *= f;
        }
        if (worst < 1e-15)
            break;
    }

    SupplyMatrix supply(n, m);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t k = 0; k < m; ++k)
            supply.set(s, k, x[s][k]);
    return TradeInstance{make_goods(n), make_countries(m), 0, std::move(demand),
                         std::move(supply)};
}

} // namespace tradeq::testing
