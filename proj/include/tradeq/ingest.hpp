#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tradeq/types.hpp"

namespace tradeq {

enum class FlowDirection { import_flow, export_flow };

/// One bilateral flow observation in value form.
struct FlowRecord {
    int year = 0;
    std::string reporter;
    std::string partner;
    std::string product;
    FlowDirection direction = FlowDirection::import_flow;
    double value_usd = 0.0;

    friend bool operator==(const FlowRecord&, const FlowRecord&) = default;
};

/// Parses the canonical flow CSV:
///   year,reporter,partner,product,direction,value_usd
/// UTF-8, comma separated, header mandatory, decimal-point values,
/// direction is "import" or "export". Row order is preserved.
/// Errors carry the 1-based data-row number.
std::vector<FlowRecord> parse_flows(std::istream& input);

/// Writes records back in the canonical format; parse(write(r)) == r.
void write_flows(std::ostream& output, std::span<const FlowRecord> records);

enum class LabelPolicy {
    strict_labels,  // unknown reporter/partner/product is an error
    lenient_labels, // unknown labels are skipped and counted
};

struct AggregateStats {
    std::size_t aggregated = 0; // records folded into the tensors
    std::size_t skipped = 0;    // unknown-label records under the lenient policy
    std::size_t selected = 0;   // records matching the requested year
};

/// Folds the records of one calendar year into bilateral tensors.
/// Duplicate (reporter, partner, product, direction) keys are summed.
/// Throws EmptySelection if no record matches the year, UnknownLabel in
/// strict mode.
TradeTensors aggregate(std::span<const FlowRecord> records, const CountrySet& countries,
                       const GoodsSet& goods, int year,
                       LabelPolicy policy = LabelPolicy::strict_labels,
                       AggregateStats* stats = nullptr);

/// Label override file: one label per line, order significant.
/// Blank lines and lines starting with '#' are ignored.
std::vector<std::string> read_label_lines(std::istream& input);

/// Distinct years present in the records, ascending.
std::vector<int> years_present(std::span<const FlowRecord> records);

} // namespace tradeq
