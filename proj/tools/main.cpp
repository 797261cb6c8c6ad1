// tradeq: reconstructs the exchange model from bilateral trade flows, solves
// for the relative equilibrium price vector and emits share analytics.

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tradeq/analytics.hpp"
#include "tradeq/equilibrium.hpp"
#include "tradeq/errors.hpp"
#include "tradeq/fixtures.hpp"
#include "tradeq/ingest.hpp"
#include "tradeq/model.hpp"
#include "tradeq/report.hpp"

namespace {

using namespace tradeq;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr const char* kGlobalHelp = R"(tradeq - trade exchange-model equilibrium and market-share reports

Usage: tradeq <command> [options]

Commands:
  ingest-check  Validate a flow CSV file and summarize its contents
  solve         Solve the relative equilibrium price vector per year
  shares        Emit per-country and per-goods market shares
  dynamics      Emit year-over-year share movements
  report        All-in-one per-year report (shares + balances + equilibrium)

Common options:
  --input PATH         Flow CSV (repeatable; files merge additively)
                       header: year,reporter,partner,product,direction,value_usd
  --fixture NAME       Bundled fixture (repeatable where multiple datasets make sense)
  --year Y             Calendar year to select from --input (repeatable)
  --countries PATH     Country label override file (one label per line)
  --goods PATH         Goods label override file (one label per line)
  --strict|--lenient   Unknown-label policy for ingestion (default --strict)
  --format json|csv    Output format (default json)
  --output PATH        Write to a file instead of stdout
  --gamma F            Solver damping exponent in (0,1] (default 0.5)
  --tol F              Solver residual tolerance (default 1e-10)
  --max-iterations N   Solver iteration budget (default 100000)
  --zero-threshold F   Relative zero-price threshold (default 1e-9)
  --help               Show this help (or per-command help)

Exit codes: 0 success, 1 data/model error, 2 usage error.
)";

struct Options {
    std::string command;
    std::vector<std::string> inputs;
    std::vector<std::string> fixtures;
    std::vector<int> years;
    std::string countries_file;
    std::string goods_file;
    bool lenient = false;
    std::string format = "json";
    std::string output;
    SolverConfig solver;
    bool help = false;
};

int parse_int(std::string_view text, const char* what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw UsageError(std::string("invalid ") + what + " '" + std::string(text) + "'");
    return v;
}

std::int64_t parse_int64(std::string_view text, const char* what) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw UsageError(std::string("invalid ") + what + " '" + std::string(text) + "'");
    return v;
}

double parse_double(std::string_view text, const char* what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw UsageError(std::string("invalid ") + what + " '" + std::string(text) + "'");
    return v;
}

Options parse_options(int argc, char** argv) {
    Options opt;
    opt.command = argv[1];
    std::vector<std::string_view> args(argv + 2, argv + argc);
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string_view a = args[i];
        auto need = [&](const char* flag) -> std::string_view {
            if (i + 1 >= args.size())
                throw UsageError(std::string("missing value for ") + flag);
            return args[++i];
        };
        if (a == "--help" || a == "-h")
            opt.help = true;
        else if (a == "--input")
            opt.inputs.emplace_back(need("--input"));
        else if (a == "--fixture")
            opt.fixtures.emplace_back(need("--fixture"));
        else if (a == "--year")
            opt.years.push_back(parse_int(need("--year"), "--year"));
        else if (a == "--countries")
            opt.countries_file = need("--countries");
        else if (a == "--goods")
            opt.goods_file = need("--goods");
        else if (a == "--strict")
            opt.lenient = false;
        else if (a == "--lenient")
            opt.lenient = true;
        else if (a == "--format") {
            opt.format = need("--format");
            if (opt.format != "json" && opt.format != "csv")
                throw UsageError("unsupported format '" + opt.format + "'");
        } else if (a == "--output")
            opt.output = need("--output");
        else if (a == "--gamma")
            opt.solver.gamma = parse_double(need("--gamma"), "--gamma");
        else if (a == "--tol")
            opt.solver.tolerance = parse_double(need("--tol"), "--tol");
        else if (a == "--max-iterations")
            opt.solver.max_iterations = parse_int64(need("--max-iterations"), "--max-iterations");
        else if (a == "--zero-threshold")
            opt.solver.zero_threshold = parse_double(need("--zero-threshold"), "--zero-threshold");
        else
            throw UsageError("unknown option '" + std::string(a) + "'");
    }
    try {
        opt.solver.validate();
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    return opt;
}

std::vector<FlowRecord> load_flow_file(const std::string& path) {
    std::ifstream file(path);
    if (!file)
        throw IoError("cannot open input file '" + path + "'");
    return parse_flows(file);
}

// Multiple --input files merge by concatenation; aggregation is additive.
std::vector<FlowRecord> load_flow_files(const std::vector<std::string>& paths) {
    std::vector<FlowRecord> records;
    for (const auto& path : paths) {
        auto part = load_flow_file(path);
        records.insert(records.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
    }
    return records;
}

CountrySet load_countries(const Options& opt) {
    if (opt.countries_file.empty())
        return default_countries();
    std::ifstream file(opt.countries_file);
    if (!file)
        throw IoError("cannot open countries file '" + opt.countries_file + "'");
    return CountrySet(read_label_lines(file));
}

GoodsSet load_goods(const Options& opt) {
    if (opt.goods_file.empty())
        return default_goods();
    std::ifstream file(opt.goods_file);
    if (!file)
        throw IoError("cannot open goods file '" + opt.goods_file + "'");
    return GoodsSet(read_label_lines(file));
}

std::vector<int> sorted_years(const Options& opt) {
    std::set<int> years(opt.years.begin(), opt.years.end());
    return {years.begin(), years.end()};
}

void require_one_source(const Options& opt) {
    if (opt.inputs.empty() == opt.fixtures.empty())
        throw UsageError("exactly one of --input or --fixture is required");
    if (!opt.inputs.empty() && opt.years.empty())
        throw UsageError("--year is required with --input");
}

/// Instances ordered by year (file-based) or fixture order (bundled).
std::vector<TradeInstance> load_instances(const Options& opt) {
    require_one_source(opt);
    std::vector<TradeInstance> instances;
    if (!opt.inputs.empty()) {
        const auto records = load_flow_files(opt.inputs);
        const auto countries = load_countries(opt);
        const auto goods = load_goods(opt);
        const auto policy =
            opt.lenient ? LabelPolicy::lenient_labels : LabelPolicy::strict_labels;
        for (int year : sorted_years(opt)) {
            const auto tensors = aggregate(records, countries, goods, year, policy);
            instances.push_back(TradeInstance{goods, countries, year,
                                              build_demand_matrix(tensors),
                                              build_supply_matrix(tensors)});
        }
    } else {
        for (const auto& name : opt.fixtures) {
            const Fixture& fixture = load_fixture(name);
            if (!fixture.is_instance())
                throw Error("fixture '" + name +
                            "' carries published share values, not flow data; it cannot be "
                            "solved");
            instances.push_back(fixture.instance());
        }
    }
    return instances;
}

void emit(const Options& opt, const std::string& text) {
    if (opt.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(opt.output, std::ios::binary);
    if (!file)
        throw IoError("cannot open output file '" + opt.output + "'");
    file << text;
    if (!file)
        throw IoError("failed writing output file '" + opt.output + "'");
}

int cmd_solve(const Options& opt) {
    const auto instances = load_instances(opt);
    std::vector<EquilibriumReport> reports;
    reports.reserve(instances.size());
    const auto results = solve_batch(instances, opt.solver);
    for (std::size_t i = 0; i < instances.size(); ++i) {
        EquilibriumReport report;
        report.year = instances[i].year;
        report.goods = instances[i].goods.labels();
        report.countries = instances[i].countries.labels();
        report.result = results[i];
        if (!report.result.converged)
            std::cerr << "warning: solver did not converge for year " << report.year
                      << " (status=" << to_string(report.result.status)
                      << ", iterations=" << report.result.iterations << ")\n";
        reports.push_back(std::move(report));
    }
    std::ostringstream out;
    if (opt.format == "json")
        write_equilibrium_json_many(out, reports);
    else
        write_equilibrium_csv_many(out, reports);
    emit(opt, out.str());
    return 0;
}

std::vector<ShareReport> load_share_reports(const Options& opt) {
    require_one_source(opt);
    std::vector<ShareReport> reports;
    if (!opt.inputs.empty()) {
        for (const auto& instance : load_instances(opt))
            reports.push_back(share_report(instance));
    } else {
        for (const auto& name : opt.fixtures) {
            const Fixture& fixture = load_fixture(name);
            if (fixture.is_instance())
                reports.push_back(share_report(fixture.instance()));
            else
                reports.push_back(caption_share_report(fixture.caption()));
        }
    }
    return reports;
}

int cmd_shares(const Options& opt) {
    const auto reports = load_share_reports(opt);
    std::ostringstream out;
    if (opt.format == "json")
        write_shares_json_many(out, reports);
    else
        write_shares_csv_many(out, reports);
    emit(opt, out.str());
    return 0;
}

int cmd_dynamics(const Options& opt) {
    auto reports = load_share_reports(opt);
    if (reports.size() < 2)
        throw UsageError("dynamics needs at least two datasets (--year/--fixture repeated)");
    std::stable_sort(reports.begin(), reports.end(),
                     [](const ShareReport& a, const ShareReport& b) { return a.year < b.year; });
    const auto dynamics = share_dynamics(reports);
    std::ostringstream out;
    if (opt.format == "json")
        write_dynamics_json(out, dynamics);
    else
        write_dynamics_csv(out, dynamics);
    emit(opt, out.str());
    return 0;
}

int cmd_report(const Options& opt) {
    const auto instances = load_instances(opt);
    std::vector<FullReport> reports;
    reports.reserve(instances.size());
    const auto results = solve_batch(instances, opt.solver);
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const TradeInstance& instance = instances[i];
        FullReport full;
        full.shares = share_report(instance);
        full.trade_balances = trade_balances(instance.demand, instance.supply,
                                             PriceVector::ones(instance.goods.size()));
        full.equilibrium.year = instance.year;
        full.equilibrium.goods = instance.goods.labels();
        full.equilibrium.countries = instance.countries.labels();
        full.equilibrium.result = results[i];
        if (!full.equilibrium.result.converged)
            std::cerr << "warning: solver did not converge for year " << instance.year
                      << " (status=" << to_string(full.equilibrium.result.status) << ")\n";
        reports.push_back(std::move(full));
    }
    std::ostringstream out;
    if (opt.format == "json")
        write_full_report_json_many(out, reports);
    else
        write_full_report_csv_many(out, reports);
    emit(opt, out.str());
    return 0;
}

int cmd_ingest_check(const Options& opt) {
    if (opt.inputs.empty())
        throw UsageError("ingest-check requires --input");
    const auto records = load_flow_files(opt.inputs);
    const auto countries = load_countries(opt);
    const auto goods = load_goods(opt);
    std::size_t unknown = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const FlowRecord& rec = records[i];
        const bool known = countries.index_of(rec.reporter) && countries.index_of(rec.partner) &&
                           goods.index_of(rec.product);
        if (!known) {
            if (!opt.lenient)
                throw UnknownLabel("record " + std::to_string(i + 1) +
                                   ": label not in the configured sets (reporter='" +
                                   rec.reporter + "', partner='" + rec.partner + "', product='" +
                                   rec.product + "')");
            ++unknown;
        }
    }
    const auto years = years_present(records);
    std::ostringstream out;
    if (opt.format == "json") {
        JsonBuilder j;
        j.begin_object();
        j.key("records").value(records.size());
        j.key("years");
        j.begin_array();
        for (int y : years)
            j.value(y);
        j.end_array();
        j.key("unknown_label_records").value(unknown);
        j.key("status").value(std::string_view("ok"));
        j.end_object();
        out << j.str() << '\n';
    } else {
        out << "year,entity,metric,value\n";
        out << ",,records," << records.size() << '\n';
        for (int y : years) {
            std::size_t count = 0;
            for (const auto& rec : records)
                if (rec.year == y)
                    ++count;
            out << y << ",,records_in_year," << count << '\n';
        }
        out << ",,unknown_label_records," << unknown << '\n';
    }
    emit(opt, out.str());
    return 0;
}

int run(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << kGlobalHelp;
        return 2;
    }
    const std::string_view command = argv[1];
    if (command == "--help" || command == "-h" || command == "help") {
        std::cout << kGlobalHelp;
        return 0;
    }
    Options opt = parse_options(argc, argv);
    if (opt.help) {
        std::cout << kGlobalHelp;
        return 0;
    }
    if (command == "ingest-check")
        return cmd_ingest_check(opt);
    if (command == "solve")
        return cmd_solve(opt);
    if (command == "shares")
        return cmd_shares(opt);
    if (command == "dynamics")
        return cmd_dynamics(opt);
    if (command == "report")
        return cmd_report(opt);
    throw UsageError("unknown command '" + std::string(command) + "'");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        std::cerr << "run 'tradeq --help' for the command summary\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
