#pragma once

#include <vector>

#include "tradeq/types.hpp"

namespace tradeq {

/// c[s][k] = sum_j i[k][j][s]: value of goods s imported by country k,
/// summed over all partners.
DemandMatrix build_demand_matrix(const TradeTensors& tensors);

/// b[s][k] = sum_j e[k][j][s]: value of goods s exported by country k.
SupplyMatrix build_supply_matrix(const TradeTensors& tensors);

/// psi[s] = sum_k b[s][k].
SupplyVector supply_vector(const SupplyMatrix& supply);

/// D[k] = sum_s p[s] * b[s][k]: value of country k's exports at prices p.
std::vector<double> incomes(const SupplyMatrix& supply, const PriceVector& prices);

/// E[k] = sum_s p[s] * c[s][k]: value of country k's demand bundle at prices p.
std::vector<double> expenditures(const DemandMatrix& demand, const PriceVector& prices);

} // namespace tradeq
