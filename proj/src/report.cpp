#include "tradeq/report.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "tradeq/errors.hpp"

namespace tradeq {

namespace {

constexpr const char* kCsvHeader = "year,entity,metric,value";

std::string formatted(double value, const char* fmt) {
    if (!std::isfinite(value))
        throw InvalidArgument("refusing to serialize a non-finite number");
    if (value == 0.0)
        value = 0.0; // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), fmt, value);
    return buf;
}

std::string quoted(std::string_view text) {
    std::string out;
    out.reserve(text.size() + 2);
    out.push_back('"');
    for (char c : text) {
        switch (c) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\r':
            out += "\\r";
            break;
        case '\t':
            out += "\\t";
            break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out.push_back(c);
            }
        }
    }
    out.push_back('"');
    return out;
}

constexpr std::array<ShareMetric, 4> kAllMetrics = {
    ShareMetric::country_supply, ShareMetric::country_demand, ShareMetric::goods_supply,
    ShareMetric::goods_demand};

} // namespace

std::string format_json_double(double value) {
    return formatted(value, "%.17g");
}

std::string format_csv_double(double value) {
    return formatted(value, "%.6g");
}

JsonBuilder& JsonBuilder::begin_object() {
    separator();
    out_.push_back('{');
    frames_.push_back({});
    return *this;
}

JsonBuilder& JsonBuilder::end_object() {
    out_.push_back('}');
    frames_.pop_back();
    return *this;
}

JsonBuilder& JsonBuilder::begin_array() {
    separator();
    out_.push_back('[');
    frames_.push_back({});
    return *this;
}

JsonBuilder& JsonBuilder::end_array() {
    out_.push_back(']');
    frames_.pop_back();
    return *this;
}

JsonBuilder& JsonBuilder::key(std::string_view name) {
    Frame& f = frames_.back();
    if (!f.first)
        out_.push_back(',');
    f.first = false;
    out_ += quoted(name);
    out_.push_back(':');
    f.pending_value = true;
    return *this;
}

void JsonBuilder::separator() {
    if (frames_.empty())
        return;
    Frame& f = frames_.back();
    if (f.pending_value) {
        f.pending_value = false;
        return;
    }
    if (!f.first)
        out_.push_back(',');
    f.first = false;
}

JsonBuilder& JsonBuilder::value(double v) {
    separator();
    out_ += format_json_double(v);
    return *this;
}

JsonBuilder& JsonBuilder::value(std::int64_t v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonBuilder& JsonBuilder::value(std::size_t v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonBuilder& JsonBuilder::value(int v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonBuilder& JsonBuilder::value(bool v) {
    separator();
    out_ += v ? "true" : "false";
    return *this;
}

JsonBuilder& JsonBuilder::value(std::string_view v) {
    separator();
    out_ += quoted(v);
    return *this;
}

namespace {

void number_array(JsonBuilder& j, const std::vector<double>& values) {
    j.begin_array();
    for (double v : values)
        j.value(v);
    j.end_array();
}

void index_array(JsonBuilder& j, const std::vector<std::size_t>& values) {
    j.begin_array();
    for (std::size_t v : values)
        j.value(v);
    j.end_array();
}

void string_array(JsonBuilder& j, const std::vector<std::string>& values) {
    j.begin_array();
    for (const auto& v : values)
        j.value(std::string_view(v));
    j.end_array();
}

void equilibrium_object(JsonBuilder& j, const EquilibriumReport& report) {
    const EquilibriumResult& r = report.result;
    j.begin_object();
    j.key("year").value(report.year);
    j.key("goods");
    string_array(j, report.goods);
    j.key("countries");
    string_array(j, report.countries);
    j.key("p0");
    number_array(j, r.p0.values());
    j.key("excess");
    number_array(j, r.excess);
    j.key("binding_set");
    index_array(j, r.binding_set);
    j.key("slack_set");
    index_array(j, r.slack_set);
    j.key("degeneracy").value(r.degeneracy);
    j.key("recession_level_proxy").value(r.recession_level);
    j.key("balance_ratios");
    number_array(j, r.balance_ratios);
    j.key("incomes");
    number_array(j, r.incomes);
    j.key("expenditures");
    number_array(j, r.expenditures);
    j.key("iterations").value(r.iterations);
    j.key("converged").value(r.converged);
    j.key("status").value(std::string_view(to_string(r.status)));
    j.key("complementarity_residual").value(r.complementarity_residual);
    j.end_object();
}

void csv_row(std::ostream& out, const std::string& year, std::string_view entity,
             std::string_view metric, const std::string& value) {
    out << year << ',' << entity << ',' << metric << ',' << value << '\n';
}

void equilibrium_rows(std::ostream& out, const EquilibriumReport& report) {
    const EquilibriumResult& r = report.result;
    const std::string year = std::to_string(report.year);
    for (std::size_t s = 0; s < report.goods.size(); ++s)
        csv_row(out, year, report.goods[s], "p0", format_csv_double(r.p0[s]));
    for (std::size_t s = 0; s < report.goods.size(); ++s)
        csv_row(out, year, report.goods[s], "excess", format_csv_double(r.excess[s]));
    for (std::size_t k = 0; k < report.countries.size(); ++k)
        csv_row(out, year, report.countries[k], "balance_ratio",
                format_csv_double(r.balance_ratios[k]));
    for (std::size_t k = 0; k < report.countries.size(); ++k)
        csv_row(out, year, report.countries[k], "income", format_csv_double(r.incomes[k]));
    for (std::size_t k = 0; k < report.countries.size(); ++k)
        csv_row(out, year, report.countries[k], "expenditure",
                format_csv_double(r.expenditures[k]));
    csv_row(out, year, "", "degeneracy", std::to_string(r.degeneracy));
    csv_row(out, year, "", "recession_level_proxy", format_csv_double(r.recession_level));
    csv_row(out, year, "", "iterations", std::to_string(r.iterations));
    csv_row(out, year, "", "converged", r.converged ? "1" : "0");
    csv_row(out, year, "", "status", to_string(r.status));
    csv_row(out, year, "", "complementarity_residual",
            format_csv_double(r.complementarity_residual));
}

void shares_object(JsonBuilder& j, const ShareReport& report) {
    j.begin_object();
    j.key("year").value(report.year);
    for (ShareMetric metric : kAllMetrics) {
        const auto& series = report.series(metric);
        if (!series)
            continue;
        j.key(metric_name(metric) + "s");
        j.begin_object();
        for (std::size_t i = 0; i < series->labels.size(); ++i)
            j.key(series->labels[i]).value(series->values[i]);
        j.end_object();
    }
    j.end_object();
}

void shares_rows(std::ostream& out, const ShareReport& report) {
    const std::string year = std::to_string(report.year);
    for (ShareMetric metric : kAllMetrics) {
        const auto& series = report.series(metric);
        if (!series)
            continue;
        const std::string name = metric_name(metric);
        for (std::size_t i = 0; i < series->labels.size(); ++i)
            csv_row(out, year, series->labels[i], name, format_csv_double(series->values[i]));
    }
}

void balances_rows(std::ostream& out, const FullReport& report) {
    const std::string year = std::to_string(report.equilibrium.year);
    for (std::size_t k = 0; k < report.equilibrium.countries.size(); ++k)
        csv_row(out, year, report.equilibrium.countries[k], "trade_balance",
                format_csv_double(report.trade_balances[k]));
}

void full_report_object(JsonBuilder& j, const FullReport& report) {
    j.begin_object();
    j.key("year").value(report.equilibrium.year);
    j.key("shares");
    shares_object(j, report.shares);
    j.key("trade_balances");
    j.begin_object();
    for (std::size_t k = 0; k < report.equilibrium.countries.size(); ++k)
        j.key(report.equilibrium.countries[k]).value(report.trade_balances[k]);
    j.end_object();
    j.key("equilibrium");
    equilibrium_object(j, report.equilibrium);
    j.end_object();
}

} // namespace

void write_equilibrium_json(std::ostream& out, const EquilibriumReport& report) {
    JsonBuilder j;
    equilibrium_object(j, report);
    out << j.str() << '\n';
}

void write_equilibrium_csv(std::ostream& out, const EquilibriumReport& report) {
    out << kCsvHeader << '\n';
    equilibrium_rows(out, report);
}

void write_equilibrium_json_many(std::ostream& out,
                                 const std::vector<EquilibriumReport>& reports) {
    if (reports.size() == 1) {
        write_equilibrium_json(out, reports.front());
        return;
    }
    JsonBuilder j;
    j.begin_object();
    j.key("results");
    j.begin_array();
    for (const auto& r : reports)
        equilibrium_object(j, r);
    j.end_array();
    j.end_object();
    out << j.str() << '\n';
}

void write_equilibrium_csv_many(std::ostream& out, const std::vector<EquilibriumReport>& reports) {
    out << kCsvHeader << '\n';
    for (const auto& r : reports)
        equilibrium_rows(out, r);
}

void write_shares_json(std::ostream& out, const ShareReport& report) {
    JsonBuilder j;
    shares_object(j, report);
    out << j.str() << '\n';
}

void write_shares_csv(std::ostream& out, const ShareReport& report) {
    out << kCsvHeader << '\n';
    shares_rows(out, report);
}

void write_shares_json_many(std::ostream& out, const std::vector<ShareReport>& reports) {
    if (reports.size() == 1) {
        write_shares_json(out, reports.front());
        return;
    }
    JsonBuilder j;
    j.begin_object();
    j.key("reports");
    j.begin_array();
    for (const auto& r : reports)
        shares_object(j, r);
    j.end_array();
    j.end_object();
    out << j.str() << '\n';
}

void write_shares_csv_many(std::ostream& out, const std::vector<ShareReport>& reports) {
    out << kCsvHeader << '\n';
    for (const auto& r : reports)
        shares_rows(out, r);
}

void write_dynamics_json(std::ostream& out, const DynamicsReport& report) {
    JsonBuilder j;
    j.begin_object();
    j.key("years");
    j.begin_array();
    for (int y : report.years)
        j.value(y);
    j.end_array();
    for (ShareMetric metric : kAllMetrics) {
        const auto& series = report.series(metric);
        if (!series)
            continue;
        j.key(metric_name(metric) + "_deltas");
        j.begin_object();
        for (std::size_t i = 0; i < series->labels.size(); ++i) {
            j.key(series->labels[i]);
            j.begin_array();
            for (const auto& step : series->deltas)
                j.value(step[i]);
            j.end_array();
        }
        j.end_object();
    }
    j.end_object();
    out << j.str() << '\n';
}

void write_dynamics_csv(std::ostream& out, const DynamicsReport& report) {
    out << kCsvHeader << '\n';
    for (ShareMetric metric : kAllMetrics) {
        const auto& series = report.series(metric);
        if (!series)
            continue;
        const std::string name = metric_name(metric) + "_delta";
        for (std::size_t t = 0; t < series->deltas.size(); ++t) {
            const std::string year = std::to_string(report.years[t + 1]);
            for (std::size_t i = 0; i < series->labels.size(); ++i)
                csv_row(out, year, series->labels[i], name,
                        format_csv_double(series->deltas[t][i]));
        }
    }
}

void write_full_report_json(std::ostream& out, const FullReport& report) {
    JsonBuilder j;
    full_report_object(j, report);
    out << j.str() << '\n';
}

void write_full_report_csv(std::ostream& out, const FullReport& report) {
    out << kCsvHeader << '\n';
    shares_rows(out, report.shares);
    balances_rows(out, report);
    equilibrium_rows(out, report.equilibrium);
}

void write_full_report_json_many(std::ostream& out, const std::vector<FullReport>& reports) {
    if (reports.size() == 1) {
        write_full_report_json(out, reports.front());
        return;
    }
    JsonBuilder j;
    j.begin_object();
    j.key("reports");
    j.begin_array();
    for (const auto& r : reports)
        full_report_object(j, r);
    j.end_array();
    j.end_object();
    out << j.str() << '\n';
}

void write_full_report_csv_many(std::ostream& out, const std::vector<FullReport>& reports) {
    out << kCsvHeader << '\n';
    for (const auto& r : reports) {
        shares_rows(out, r.shares);
        balances_rows(out, r);
        equilibrium_rows(out, r.equilibrium);
    }
}

} // namespace tradeq
