#pragma once

#include <optional>
#include <vector>

#include "tradeq/types.hpp"

namespace tradeq {

struct OracleConfig {
    double grid_step = 1e-3;
    double feasibility_tol = 1e-10;          // same shape as is_equilibrium's tol
    double expenditure_guard_scale = 1e-12;
    bool collect_feasible = false;           // keep the feasible nodes (small grids only)
    bool parallel = true;

    void validate() const;
};

/// Exhaustive verification result over the price simplex.
struct OracleResult {
    std::optional<PriceVector> best;   // residual-minimizing admissible node
    double best_residual = 0.0;        // complementarity residual at `best`
    std::size_t best_zero_components = 0;
    std::uint64_t node_count = 0;
    std::uint64_t admissible_count = 0;
    std::uint64_t feasible_count = 0;
    std::vector<PriceVector> feasible_points; // populated when collect_feasible
};

/// Enumerates the unit simplex at the configured resolution, evaluating
/// feasibility and the complementarity residual at every node. Independent
/// of the solver path by construction. Throws DimensionTooLarge when the
/// instance has more than 3 goods.
OracleResult brute_force_oracle(const DemandMatrix& demand, const SupplyMatrix& supply,
                                const OracleConfig& config = {});

} // namespace tradeq
