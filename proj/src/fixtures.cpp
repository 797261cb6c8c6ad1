#include "tradeq/fixtures.hpp"

#include <map>

#include "tradeq/errors.hpp"

namespace tradeq {

namespace {

const std::vector<std::string>& country_labels() {
    static const std::vector<std::string> labels = {
        "Canada", "China", "Germany", "France",
        "United Kingdom", "Italy", "Japan", "United States"};
    return labels;
}

const std::vector<std::string>& goods_labels() {
    static const std::vector<std::string> labels = {
        "Animal", "Vegetable", "FoodProd", "Minerals", "Fuels", "Chemicals", "PlastiRub",
        "HidesSkin", "Wood", "TextCloth", "Footwear", "StoneGlas", "Metals", "MachElec",
        "Transport", "Miscellan"};
    return labels;
}

Fixture caption_fixture(std::string name, int year, ShareMetric metric,
                        std::vector<double> values) {
    CaptionShares caption;
    caption.year = year;
    caption.metric = metric;
    caption.labels = (metric == ShareMetric::country_supply ||
                      metric == ShareMetric::country_demand)
                         ? country_labels()
                         : goods_labels();
    caption.values = std::move(values);
    return Fixture{std::move(name), std::move(caption)};
}

Fixture instance_fixture(std::string name, DemandMatrix demand, SupplyMatrix supply) {
    TradeInstance instance{GoodsSet({"G1", "G2"}), CountrySet({"K1", "K2"}), 0,
                           std::move(demand), std::move(supply)};
    return Fixture{std::move(name), std::move(instance)};
}

std::map<std::string, Fixture, std::less<>> build_registry() {
    std::map<std::string, Fixture, std::less<>> reg;
    auto add = [&reg](Fixture f) { reg.emplace(f.name, std::move(f)); };

    using SM = ShareMetric;
    add(caption_fixture("fig1_2020", 2020, SM::country_supply,
                        {0.10, 0.28, 0.16, 0.06, 0.04, 0.06, 0.1, 0.169}));
    add(caption_fixture("fig2_2021", 2021, SM::country_supply,
                        {0.108, 0.291, 0.16, 0.066, 0.044, 0.067, 0.095, 0.165}));
    add(caption_fixture("fig3_2022", 2022, SM::country_supply,
                        {0.123, 0.281, 0.155, 0.066, 0.044, 0.067, 0.085, 0.176}));
    add(caption_fixture("fig4_2020", 2020, SM::country_demand,
                        {0.088, 0.152, 0.122, 0.074, 0.086, 0.052, 0.088, 0.335}));
    add(caption_fixture("fig5_2021", 2021, SM::country_demand,
                        {0.089, 0.158, 0.1209, 0.0737, 0.0771, 0.054, 0.084, 0.3409}));
    add(caption_fixture("fig6_2022", 2022, SM::country_demand,
                        {0.093, 0.137, 0.122, 0.074, 0.085, 0.056, 0.079, 0.348}));
    add(caption_fixture("fig7_2020", 2020, SM::goods_demand,
                        {0.015, 0.021, 0.030, 0.005, 0.040, 0.112, 0.047, 0.007, 0.024, 0.047,
                         0.010, 0.036, 0.055, 0.304, 0.128, 0.1108}));
    add(caption_fixture("fig8_2021", 2021, SM::goods_demand,
                        {0.014, 0.023, 0.029, 0.006, 0.058, 0.111, 0.049, 0.007, 0.026, 0.034,
                         0.011, 0.035, 0.062, 0.299, 0.119, 0.110}));
    add(caption_fixture("fig9_2022", 2022, SM::goods_demand,
                        {0.013, 0.023, 0.028, 0.005, 0.086, 0.117, 0.046, 0.007, 0.024, 0.032,
                         0.011, 0.033, 0.063, 0.286, 0.114, 0.103}));
    add(caption_fixture("fig10_2020", 2020, SM::goods_supply,
                        {0.016, 0.024, 0.031, 0.005, 0.042, 0.102, 0.048, 0.007, 0.025, 0.051,
                         0.010, 0.039, 0.057, 0.283, 0.141, 0.111}));
    add(caption_fixture("fig11_2021", 2021, SM::goods_supply,
                        {0.015, 0.024, 0.030, 0.005, 0.05, 0.099, 0.05, 0.008, 0.027, 0.041,
                         0.012, 0.036, 0.066, 0.279, 0.132, 0.113}));
    add(caption_fixture("fig12_2022", 2022, SM::goods_supply,
                        {0.014, 0.024, 0.029, 0.005, 0.084, 0.103, 0.047, 0.008, 0.026, 0.039,
                         0.012, 0.036, 0.067, 0.265, 0.119, 0.114}));

    // Two-good, two-country instances used across the test suites: one whose
    // raw data is already balanced, and one whose only equilibrium ray is
    // degenerate (second good priced at zero).
    add(instance_fixture("ideal_2x2", DemandMatrix::from_rows({{1, 0}, {0, 1}}),
                         SupplyMatrix::from_rows({{0, 1}, {1, 0}})));
    add(instance_fixture("degenerate_2x2", DemandMatrix::from_rows({{1, 1}, {0, 0}}),
                         SupplyMatrix::from_rows({{1, 1}, {1, 1}})));
    return reg;
}

const std::map<std::string, Fixture, std::less<>>& registry() {
    static const auto reg = build_registry();
    return reg;
}

} // namespace

const Fixture& load_fixture(std::string_view name) {
    const auto& reg = registry();
    auto it = reg.find(name);
    if (it == reg.end())
        throw UnknownFixture("unknown fixture '" + std::string(name) + "'");
    return it->second;
}

std::vector<std::string> fixture_names() {
    std::vector<std::string> names;
    names.reserve(registry().size());
    for (const auto& [name, fixture] : registry())
        names.push_back(name);
    return names;
}

ShareReport caption_share_report(const CaptionShares& caption) {
    ShareReport report;
    report.year = caption.year;
    report.series(caption.metric) = ShareSeries{caption.labels, caption.values};
    return report;
}

CountrySet default_countries() {
    return CountrySet(country_labels());
}

GoodsSet default_goods() {
    return GoodsSet(goods_labels());
}

} // namespace tradeq
