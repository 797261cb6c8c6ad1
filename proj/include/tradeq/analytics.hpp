#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tradeq/types.hpp"

namespace tradeq {

enum class ShareMetric { country_supply, country_demand, goods_supply, goods_demand };

/// Serialization name, e.g. "country_supply_share".
std::string metric_name(ShareMetric metric);

/// One labeled share vector (a single bar chart worth of data).
struct ShareSeries {
    std::vector<std::string> labels;
    std::vector<double> values;
};

/// Per-year market-share decomposition. Reports computed from matrices carry
/// all four series; caption fixtures carry only the one their figure shows.
struct ShareReport {
    int year = 0;
    std::optional<ShareSeries> country_supply;
    std::optional<ShareSeries> country_demand;
    std::optional<ShareSeries> goods_supply;
    std::optional<ShareSeries> goods_demand;

    const std::optional<ShareSeries>& series(ShareMetric metric) const;
    std::optional<ShareSeries>& series(ShareMetric metric);
};

/// Year-over-year share movements. deltas[t][e] is the change of entity e
/// between years[t] and years[t+1].
struct DeltaSeries {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> deltas;
};

struct DynamicsReport {
    std::vector<int> years;
    std::optional<DeltaSeries> country_supply;
    std::optional<DeltaSeries> country_demand;
    std::optional<DeltaSeries> goods_supply;
    std::optional<DeltaSeries> goods_demand;

    const std::optional<DeltaSeries>& series(ShareMetric metric) const;
    std::optional<DeltaSeries>& series(ShareMetric metric);
};

/// share[k] = sum_s b[s][k] / sum(b). Throws ZeroSupply on an all-zero matrix.
std::vector<double> country_supply_shares(const SupplyMatrix& supply);

/// share[k] = sum_s c[s][k] / sum(c).
std::vector<double> country_demand_shares(const DemandMatrix& demand);

/// share[s] = sum_k b[s][k] / sum(b).
std::vector<double> goods_supply_shares(const SupplyMatrix& supply);

/// share[s] = sum_k c[s][k] / sum(c).
std::vector<double> goods_demand_shares(const DemandMatrix& demand);

/// balance[k] = D_k(p0) - E_k(p0). At p0 = ones this is the raw cost-form
/// export minus import balance.
std::vector<double> trade_balances(const DemandMatrix& demand, const SupplyMatrix& supply,
                                   const PriceVector& prices);

/// All four share series of one instance.
ShareReport share_report(const TradeInstance& instance);

/// Year-over-year deltas across reports ordered by year. Every metric must be
/// present in either all reports or none, with identical label sequences;
/// otherwise InconsistentSets.
DynamicsReport share_dynamics(std::span<const ShareReport> reports);

} // namespace tradeq
