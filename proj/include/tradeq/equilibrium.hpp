#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tradeq/kernels.hpp"
#include "tradeq/types.hpp"

namespace tradeq {

struct SolverConfig {
    double gamma = 0.5;                    // damping exponent in (0, 1]
    std::int64_t max_iterations = 100000;
    double tolerance = 1e-10;              // per-good: d[s] <= tol * max(1, psi[s])
    double zero_threshold = 1e-9;          // relative to the max price component
    double expenditure_guard_scale = 1e-12; // guard = scale * sum_s psi[s]
    std::int64_t stall_window = 5000;      // iterations without residual decrease

    void validate() const;
};

enum class SolveStatus { converged, max_iterations, no_progress };

std::string to_string(SolveStatus status);

/// Solved relative price vector plus every diagnostic the reports carry.
/// If converged: d[s] <= tol*max(1,psi[s]) for all s and the complementarity
/// residual is <= tol * sum(psi); p0 is max-normalized.
struct EquilibriumResult {
    PriceVector p0 = PriceVector::ones(1);
    std::vector<double> excess;            // d[s], USD
    std::vector<std::size_t> binding_set;  // |d[s]| within tolerance scale
    std::vector<std::size_t> slack_set;    // d[s] below -tolerance scale
    std::size_t degeneracy = 0;            // zero components of p0
    double recession_level = 0.0;          // unsold fraction of total supply value
    std::vector<double> balance_ratios;    // y[k] = D_k / E_k
    std::vector<double> incomes;           // D[k]
    std::vector<double> expenditures;      // E[k]
    std::int64_t iterations = 0;
    bool converged = false;
    SolveStatus status = SolveStatus::max_iterations;
    double complementarity_residual = 0.0;
};

/// d[s] = sum_k c[s][k] * D_k(p)/E_k(p) - psi[s].
/// Throws UndefinedDemand if some country has expenditure <= guard but
/// income > guard at p (p lies outside the admissible cone).
std::vector<double> excess_demand(const DemandMatrix& demand, const SupplyMatrix& supply,
                                  const PriceVector& prices, double guard);

/// Same with the default guard 1e-12 * sum(psi).
std::vector<double> excess_demand(const DemandMatrix& demand, const SupplyMatrix& supply,
                                  const PriceVector& prices);

/// True iff d[s] <= tol * max(1, psi[s]) for every good.
bool is_equilibrium(const DemandMatrix& demand, const SupplyMatrix& supply,
                    const PriceVector& prices, double tol);

/// Multiplicative price adjustment from the all-ones start:
///   p[s] <- p[s] * ((demand_s + kappa) / (psi_s + kappa))^gamma
/// followed by zero-flooring of vanishing slack prices and max-renormalization
/// each step. Deterministic: fixed start, fixed iteration order. Returns the
/// best iterate with converged=false when the iteration stalls or the
/// iteration budget runs out.
EquilibriumResult solve_relative_prices(const DemandMatrix& demand, const SupplyMatrix& supply,
                                        const SolverConfig& config = {});

/// Solves independent instances concurrently; results are identical to
/// one-by-one solve_relative_prices calls in instance order.
std::vector<EquilibriumResult> solve_batch(std::span<const TradeInstance> instances,
                                           const SolverConfig& config = {});

/// Count of components <= zero_threshold; prices must be max-normalized,
/// so the result is at most n-1.
std::size_t degeneracy_multiplicity(const PriceVector& canonical_prices, double zero_threshold);

/// rho = sum_s max(0, -d[s]) / sum_s psi[s]: the unsold fraction of total
/// supply value at the given prices. In [0, 1] by construction.
double recession_level(const DemandMatrix& demand, const SupplyMatrix& supply,
                       const PriceVector& prices);

/// y[k] = D_k / E_k; 1 means the country's trade balance is zero at p0.
/// A country with neither income nor expenditure counts as balanced (1).
std::vector<double> balance_ratios(const DemandMatrix& demand, const SupplyMatrix& supply,
                                   const PriceVector& prices);

} // namespace tradeq
