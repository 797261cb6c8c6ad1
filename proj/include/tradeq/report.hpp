#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tradeq/analytics.hpp"
#include "tradeq/equilibrium.hpp"
#include "tradeq/types.hpp"

namespace tradeq {

/// %.17g with -0 normalized to 0. Throws InvalidArgument on non-finite input.
std::string format_json_double(double value);

/// %.6g, the reduced precision used in CSV summaries.
std::string format_csv_double(double value);

/// Minimal insertion-ordered JSON emitter. Key order is the emission order,
/// which makes the byte-level output contract explicit.
class JsonBuilder {
public:
    JsonBuilder& begin_object();
    JsonBuilder& end_object();
    JsonBuilder& begin_array();
    JsonBuilder& end_array();
    JsonBuilder& key(std::string_view name);
    JsonBuilder& value(double v);
    JsonBuilder& value(std::int64_t v);
    JsonBuilder& value(std::size_t v);
    JsonBuilder& value(int v);
    JsonBuilder& value(bool v);
    JsonBuilder& value(std::string_view v);

    const std::string& str() const { return out_; }

private:
    struct Frame {
        bool first = true;
        bool pending_value = false;
    };

    void separator();

    std::string out_;
    std::vector<Frame> frames_;
};

/// Labeled solver output for one dataset year.
struct EquilibriumReport {
    int year = 0;
    std::vector<std::string> goods;
    std::vector<std::string> countries;
    EquilibriumResult result;
};

/// The all-in-one per-year report: shares, balances and the equilibrium.
struct FullReport {
    ShareReport shares;
    std::vector<double> trade_balances;
    EquilibriumReport equilibrium;
};

void write_equilibrium_json(std::ostream& out, const EquilibriumReport& report);
void write_equilibrium_csv(std::ostream& out, const EquilibriumReport& report);
void write_equilibrium_json_many(std::ostream& out, const std::vector<EquilibriumReport>& reports);
void write_equilibrium_csv_many(std::ostream& out, const std::vector<EquilibriumReport>& reports);

void write_shares_json(std::ostream& out, const ShareReport& report);
void write_shares_csv(std::ostream& out, const ShareReport& report);
void write_shares_json_many(std::ostream& out, const std::vector<ShareReport>& reports);
void write_shares_csv_many(std::ostream& out, const std::vector<ShareReport>& reports);

void write_dynamics_json(std::ostream& out, const DynamicsReport& report);
void write_dynamics_csv(std::ostream& out, const DynamicsReport& report);

void write_full_report_json(std::ostream& out, const FullReport& report);
void write_full_report_csv(std::ostream& out, const FullReport& report);
void write_full_report_json_many(std::ostream& out, const std::vector<FullReport>& reports);
void write_full_report_csv_many(std::ostream& out, const std::vector<FullReport>& reports);

} // namespace tradeq
