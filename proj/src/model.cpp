#include "tradeq/model.hpp"

namespace tradeq {

DemandMatrix build_demand_matrix(const TradeTensors& tensors) {
    const std::size_t m = tensors.countries();
    const std::size_t n = tensors.goods();
    DemandMatrix c(n, m);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j < m; ++j) {
            if (j == k)
                continue;
            for (std::size_t s = 0; s < n; ++s)
                c.set(s, k, c.at(s, k) + tensors.import_value(k, j, s));
        }
    return c;
}

SupplyMatrix build_supply_matrix(const TradeTensors& tensors) {
    const std::size_t m = tensors.countries();
    const std::size_t n = tensors.goods();
    SupplyMatrix b(n, m);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j < m; ++j) {
            if (j == k)
                continue;
            for (std::size_t s = 0; s < n; ++s)
                b.set(s, k, b.at(s, k) + tensors.export_value(k, j, s));
        }
    return b;
}

SupplyVector supply_vector(const SupplyMatrix& supply) {
    return SupplyVector{supply.row_totals()};
}

std::vector<double> incomes(const SupplyMatrix& supply, const PriceVector& prices) {
    if (prices.size() != supply.goods())
        throw InvalidArgument("price vector length does not match goods count");
    std::vector<double> d(supply.countries(), 0.0);
    for (std::size_t s = 0; s < supply.goods(); ++s) {
        const double p = prices[s];
        for (std::size_t k = 0; k < supply.countries(); ++k)
            d[k] += p * supply.at(s, k);
    }
    return d;
}

std::vector<double> expenditures(const DemandMatrix& demand, const PriceVector& prices) {
    if (prices.size() != demand.goods())
        throw InvalidArgument("price vector length does not match goods count");
    std::vector<double> e(demand.countries(), 0.0);
    for (std::size_t s = 0; s < demand.goods(); ++s) {
        const double p = prices[s];
        for (std::size_t k = 0; k < demand.countries(); ++k)
            e[k] += p * demand.at(s, k);
    }
    return e;
}

} // namespace tradeq
