#include "tradeq/analytics.hpp"

#include <array>

#include "tradeq/errors.hpp"
#include "tradeq/model.hpp"

namespace tradeq {

namespace {

constexpr std::array<ShareMetric, 4> kAllMetrics = {
    ShareMetric::country_supply, ShareMetric::country_demand, ShareMetric::goods_supply,
    ShareMetric::goods_demand};

std::vector<double> normalized(std::vector<double> totals, double grand_total,
                               const char* what) {
    if (grand_total <= 0.0)
        throw ZeroSupply(std::string(what) + " totals are all zero");
    for (double& v : totals)
        v /= grand_total;
    return totals;
}

} // namespace

std::string metric_name(ShareMetric metric) {
    switch (metric) {
    case ShareMetric::country_supply:
        return "country_supply_share";
    case ShareMetric::country_demand:
        return "country_demand_share";
    case ShareMetric::goods_supply:
        return "goods_supply_share";
    case ShareMetric::goods_demand:
        return "goods_demand_share";
    }
    return "unknown";
}

const std::optional<ShareSeries>& ShareReport::series(ShareMetric metric) const {
    switch (metric) {
    case ShareMetric::country_supply:
        return country_supply;
    case ShareMetric::country_demand:
        return country_demand;
    case ShareMetric::goods_supply:
        return goods_supply;
    default:
        return goods_demand;
    }
}

std::optional<ShareSeries>& ShareReport::series(ShareMetric metric) {
    return const_cast<std::optional<ShareSeries>&>(
        static_cast<const ShareReport&>(*this).series(metric));
}

const std::optional<DeltaSeries>& DynamicsReport::series(ShareMetric metric) const {
    switch (metric) {
    case ShareMetric::country_supply:
        return country_supply;
    case ShareMetric::country_demand:
        return country_demand;
    case ShareMetric::goods_supply:
        return goods_supply;
    default:
        return goods_demand;
    }
}

std::optional<DeltaSeries>& DynamicsReport::series(ShareMetric metric) {
    return const_cast<std::optional<DeltaSeries>&>(
        static_cast<const DynamicsReport&>(*this).series(metric));
}

std::vector<double> country_supply_shares(const SupplyMatrix& supply) {
    return normalized(supply.column_totals(), supply.total(), "supply");
}

std::vector<double> country_demand_shares(const DemandMatrix& demand) {
    return normalized(demand.column_totals(), demand.total(), "demand");
}

std::vector<double> goods_supply_shares(const SupplyMatrix& supply) {
    return normalized(supply.row_totals(), supply.total(), "supply");
}

std::vector<double> goods_demand_shares(const DemandMatrix& demand) {
    return normalized(demand.row_totals(), demand.total(), "demand");
}

std::vector<double> trade_balances(const DemandMatrix& demand, const SupplyMatrix& supply,
                                   const PriceVector& prices) {
    if (demand.goods() != supply.goods() || demand.countries() != supply.countries())
        throw InvalidArgument("demand and supply matrices must have matching dimensions");
    const auto d = incomes(supply, prices);
    const auto e = expenditures(demand, prices);
    std::vector<double> balance(d.size());
    for (std::size_t k = 0; k < d.size(); ++k)
        balance[k] = d[k] - e[k];
    return balance;
}

ShareReport share_report(const TradeInstance& instance) {
    ShareReport report;
    report.year = instance.year;
    report.country_supply =
        ShareSeries{instance.countries.labels(), country_supply_shares(instance.supply)};
    report.country_demand =
        ShareSeries{instance.countries.labels(), country_demand_shares(instance.demand)};
    report.goods_supply =
        ShareSeries{instance.goods.labels(), goods_supply_shares(instance.supply)};
    report.goods_demand =
        ShareSeries{instance.goods.labels(), goods_demand_shares(instance.demand)};
    return report;
}

DynamicsReport share_dynamics(std::span<const ShareReport> reports) {
    if (reports.size() < 2)
        throw InvalidArgument("share dynamics needs at least two reports");
    DynamicsReport out;
    out.years.reserve(reports.size());
    for (const auto& r : reports)
        out.years.push_back(r.year);

    for (ShareMetric metric : kAllMetrics) {
        const auto& first = reports.front().series(metric);
        for (const auto& r : reports)
            if (r.series(metric).has_value() != first.has_value())
                throw InconsistentSets("metric " + metric_name(metric) +
                                       " is present in some reports but not all");
        if (!first)
            continue;
        DeltaSeries series;
        series.labels = first->labels;
        for (std::size_t t = 0; t + 1 < reports.size(); ++t) {
            const auto& a = *reports[t].series(metric);
            const auto& b = *reports[t + 1].series(metric);
            if (a.labels != series.labels || b.labels != series.labels)
                throw InconsistentSets("label sets differ across reports for metric " +
                                       metric_name(metric));
            std::vector<double> delta(series.labels.size());
            for (std::size_t i = 0; i < delta.size(); ++i)
                delta[i] = b.values[i] - a.values[i];
            series.deltas.push_back(std::move(delta));
        }
        out.series(metric) = std::move(series);
    }
    return out;
}

} // namespace tradeq
