#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "tradeq/types.hpp"

namespace tradeq {

/// Flattened, validated view of one exchange instance, shared by the solver,
/// the grid oracle and the batch kernels. Rows are goods, columns countries.
struct PreparedInstance {
    std::size_t goods = 0;
    std::size_t countries = 0;
    std::vector<double> demand_values; // c[s][k], row-major
    std::vector<double> supply_values; // b[s][k], row-major
    std::vector<double> supply_totals; // psi[s]
    std::vector<std::uint8_t> demand_active; // column k has a positive demand entry
    std::vector<std::uint8_t> supply_active; // column k has a positive supply entry
    double supply_total_sum = 0.0;

    PreparedInstance(const DemandMatrix& demand, const SupplyMatrix& supply);
};

/// Per-call working memory so the hot loops never allocate.
struct EvalScratch {
    std::vector<double> incomes;
    std::vector<double> expenditures;
    std::vector<double> ratios;

    void resize(std::size_t countries) {
        incomes.assign(countries, 0.0);
        expenditures.assign(countries, 0.0);
        ratios.assign(countries, 0.0);
    }
};

/// What to do when a country's expenditure falls under the guard while its
/// income does not: `reject` reports the node as inadmissible, `clamp`
/// substitutes the guard for the vanishing expenditure (used inside the
/// solver iteration so transient iterates cannot overflow).
enum class GuardPolicy { reject, clamp };

/// Excess demand d[s] = sum_k c[s][k] * D_k/E_k - psi[s].
/// Countries with a structurally zero demand column contribute nothing at
/// any price; countries with E_k <= guard and D_k <= guard contribute
/// nothing either (priced out of the market entirely).
/// Returns false iff some country is inadmissible under `reject`.
/// On success scratch.incomes / scratch.expenditures hold D and E.
bool excess_demand_kernel(const PreparedInstance& inst, const double* prices, double guard,
                          GuardPolicy policy, EvalScratch& scratch, double* excess_out) noexcept;

/// sum_s phat[s]*max(0,-d[s]) + sum_s max(0,d[s]) with phat the
/// max-normalized price vector. Zero exactly at complementarity points.
double complementarity_residual(std::span<const double> prices, std::span<const double> excess);

/// Batch evaluation of excess demand at `count` price vectors stored
/// consecutively in `prices_flat` (count * n values). Results land in
/// `excess_flat` with the same layout. Throws UndefinedDemand if any point
/// is inadmissible under `reject`.
void excess_demand_batch(const PreparedInstance& inst, std::span<const double> prices_flat,
                         std::size_t count, double guard, GuardPolicy policy,
                         std::span<double> excess_flat);

/// Serial twin of excess_demand_batch, kept as the reference the parallel
/// kernel is tested and benchmarked against.
void excess_demand_batch_reference(const PreparedInstance& inst,
                                   std::span<const double> prices_flat, std::size_t count,
                                   double guard, GuardPolicy policy,
                                   std::span<double> excess_flat);

/// Exhaustive scan of the price simplex at resolution 1/N.
/// Nodes are all compositions (a_1..a_n) of N, evaluated at p_i = a_i / N.
/// A node is feasible when it is admissible and d[s] <= tol * max(1, psi[s])
/// for every good. `best` is the admissible node minimizing the
/// complementarity residual, ties broken by the smallest node index, so the
/// result is identical for any thread count.
struct SimplexScanResult {
    std::uint64_t node_count = 0;
    std::uint64_t admissible_count = 0;
    std::uint64_t feasible_count = 0;
    bool has_best = false;
    std::uint64_t best_index = 0;
    std::vector<double> best_point;
    double best_residual = std::numeric_limits<double>::infinity();
    std::size_t best_zero_components = 0;
    std::vector<std::vector<double>> feasible_points; // index order, only if collected
};

SimplexScanResult simplex_scan(const PreparedInstance& inst, std::uint64_t resolution,
                               double feasibility_tol, double guard, bool collect_feasible);

/// Serial twin of simplex_scan; results must match simplex_scan exactly.
SimplexScanResult simplex_scan_reference(const PreparedInstance& inst, std::uint64_t resolution,
                                         double feasibility_tol, double guard,
                                         bool collect_feasible);

} // namespace tradeq
