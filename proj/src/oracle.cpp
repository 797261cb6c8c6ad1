#include "tradeq/oracle.hpp"

#include <cmath>
#include <limits>

#include "tradeq/errors.hpp"
#include "tradeq/kernels.hpp"

namespace tradeq {

void OracleConfig::validate() const {
    if (!(grid_step > 0.0) || grid_step > 1.0)
        throw InvalidArgument("oracle grid step must lie in (0, 1]");
    if (!(feasibility_tol > 0.0))
        throw InvalidArgument("oracle feasibility tolerance must be positive");
    if (!(expenditure_guard_scale > 0.0))
        throw InvalidArgument("oracle expenditure guard scale must be positive");
}

OracleResult brute_force_oracle(const DemandMatrix& demand, const SupplyMatrix& supply,
                                const OracleConfig& config) {
    config.validate();
    if (demand.goods() > 3)
        throw DimensionTooLarge("brute-force oracle is limited to 3 goods");
    PreparedInstance inst(demand, supply);
    if (inst.supply_total_sum <= 0.0)
        throw ZeroSupply("total supply is zero; nothing to price");

    const auto resolution = static_cast<std::uint64_t>(std::llround(1.0 / config.grid_step));
    const double guard = config.expenditure_guard_scale * inst.supply_total_sum;

    SimplexScanResult scan =
        config.parallel
            ? simplex_scan(inst, resolution, config.feasibility_tol, guard,
                           config.collect_feasible)
            : simplex_scan_reference(inst, resolution, config.feasibility_tol, guard,
                                     config.collect_feasible);

    OracleResult out;
    out.node_count = scan.node_count;
    out.admissible_count = scan.admissible_count;
    out.feasible_count = scan.feasible_count;
    if (scan.has_best) {
        out.best = PriceVector(scan.best_point);
        out.best_residual = scan.best_residual;
        out.best_zero_components = scan.best_zero_components;
    } else {
        out.best_residual = std::numeric_limits<double>::infinity();
    }
    out.feasible_points.reserve(scan.feasible_points.size());
    for (auto& p : scan.feasible_points)
        out.feasible_points.emplace_back(std::move(p));
    return out;
}

} // namespace tradeq
