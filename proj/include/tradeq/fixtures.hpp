#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tradeq/analytics.hpp"
#include "tradeq/types.hpp"

namespace tradeq {

/// Published per-figure share values, stored digit for digit. These are
/// shares of a unit total, not raw flows; some vectors sum to slightly less
/// than 1 because the source rounds entries to 2-4 digits.
struct CaptionShares {
    int year = 0;
    ShareMetric metric = ShareMetric::country_supply;
    std::vector<std::string> labels;
    std::vector<double> values;
};

struct Fixture {
    std::string name;
    std::variant<CaptionShares, TradeInstance> data;

    bool is_instance() const { return std::holds_alternative<TradeInstance>(data); }
    const TradeInstance& instance() const { return std::get<TradeInstance>(data); }
    const CaptionShares& caption() const { return std::get<CaptionShares>(data); }
};

/// Bundled set: fig1_2020 .. fig12_2022 plus the synthetic instances
/// ideal_2x2 and degenerate_2x2. Throws UnknownFixture otherwise.
const Fixture& load_fixture(std::string_view name);

std::vector<std::string> fixture_names();

/// A caption fixture viewed as a one-metric ShareReport.
ShareReport caption_share_report(const CaptionShares& caption);

/// The eight economies used by the bundled figure fixtures.
CountrySet default_countries();

/// The sixteen goods categories used by the bundled figure fixtures.
GoodsSet default_goods();

} // namespace tradeq
