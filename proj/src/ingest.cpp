#include "tradeq/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>

#include "tradeq/errors.hpp"
#include "tradeq/report.hpp"

namespace tradeq {

namespace {

constexpr const char* kHeader = "year,reporter,partner,product,direction,value_usd";

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.emplace_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

int parse_year(const std::string& text, std::size_t row) {
    int year = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, year);
    if (ec != std::errc{} || ptr != last)
        throw MalformedRow("data row " + std::to_string(row) + ": bad year '" + text + "'", row);
    return year;
}

double parse_value(const std::string& text, std::size_t row) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value))
        throw MalformedRow("data row " + std::to_string(row) + ": bad value '" + text + "'", row);
    return value;
}

} // namespace

std::vector<FlowRecord> parse_flows(std::istream& input) {
    std::string line;
    if (!std::getline(input, line))
        throw MalformedRow("empty input: missing header row", 0);
    strip_cr(line);
    if (line != kHeader)
        throw MalformedRow("bad header: expected '" + std::string(kHeader) + "'", 0);

    std::vector<FlowRecord> records;
    std::size_t row = 0;
    while (std::getline(input, line)) {
        strip_cr(line);
        if (line.empty())
            continue;
        ++row;
        auto fields = split_fields(line);
        if (fields.size() != 6)
            throw MalformedRow("data row " + std::to_string(row) + ": expected 6 fields, got " +
                                   std::to_string(fields.size()),
                               row);
        FlowRecord rec;
        rec.year = parse_year(fields[0], row);
        rec.reporter = fields[1];
        rec.partner = fields[2];
        rec.product = fields[3];
        if (rec.reporter.empty() || rec.partner.empty() || rec.product.empty())
            throw MalformedRow("data row " + std::to_string(row) + ": empty label field", row);
        if (rec.reporter == rec.partner)
            throw SelfFlow("data row " + std::to_string(row) + ": reporter equals partner ('" +
                               rec.reporter + "')",
                           row);
        if (fields[4] == "import")
            rec.direction = FlowDirection::import_flow;
        else if (fields[4] == "export")
            rec.direction = FlowDirection::export_flow;
        else
            throw UnknownDirection("data row " + std::to_string(row) + ": unknown direction '" +
                                       fields[4] + "'",
                                   row);
        rec.value_usd = parse_value(fields[5], row);
        if (rec.value_usd < 0.0)
            throw NegativeValue("data row " + std::to_string(row) + ": negative value", row);
        records.push_back(std::move(rec));
    }
    return records;
}

void write_flows(std::ostream& output, std::span<const FlowRecord> records) {
    output << kHeader << '\n';
    for (const auto& rec : records) {
        output << rec.year << ',' << rec.reporter << ',' << rec.partner << ',' << rec.product
               << ',' << (rec.direction == FlowDirection::import_flow ? "import" : "export")
               << ',' << format_json_double(rec.value_usd) << '\n';
    }
}

TradeTensors aggregate(std::span<const FlowRecord> records, const CountrySet& countries,
                       const GoodsSet& goods, int year, LabelPolicy policy,
                       AggregateStats* stats) {
    TradeTensors tensors(year, countries.size(), goods.size());
    AggregateStats local;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const FlowRecord& rec = records[i];
        if (rec.year != year)
            continue;
        ++local.selected;
        const auto k = countries.index_of(rec.reporter);
        const auto j = countries.index_of(rec.partner);
        const auto s = goods.index_of(rec.product);
        if (!k || !j || !s) {
            if (policy == LabelPolicy::strict_labels) {
                const std::string& offender =
                    !k ? rec.reporter : (!j ? rec.partner : rec.product);
                throw UnknownLabel("record " + std::to_string(i + 1) + ": unknown label '" +
                                   offender + "'");
            }
            ++local.skipped;
            continue;
        }
        if (rec.direction == FlowDirection::import_flow)
            tensors.add_import(*k, *j, *s, rec.value_usd);
        else
            tensors.add_export(*k, *j, *s, rec.value_usd);
        ++local.aggregated;
    }
    if (local.selected == 0)
        throw EmptySelection("no record matches year " + std::to_string(year));
    if (stats)
        *stats = local;
    return tensors;
}

std::vector<std::string> read_label_lines(std::istream& input) {
    std::vector<std::string> labels;
    std::string line;
    while (std::getline(input, line)) {
        strip_cr(line);
        if (line.empty() || line.front() == '#')
            continue;
        labels.push_back(line);
    }
    return labels;
}

std::vector<int> years_present(std::span<const FlowRecord> records) {
    std::set<int> years;
    for (const auto& rec : records)
        years.insert(rec.year);
    return {years.begin(), years.end()};
}

} // namespace tradeq
