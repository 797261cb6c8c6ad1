#include "tradeq/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "tradeq/errors.hpp"

namespace tradeq {

void SolverConfig::validate() const {
    if (!(gamma > 0.0) || gamma > 1.0)
        throw InvalidArgument("solver gamma must lie in (0, 1]");
    if (max_iterations <= 0)
        throw InvalidArgument("solver max_iterations must be positive");
    if (!(tolerance > 0.0))
        throw InvalidArgument("solver tolerance must be positive");
    if (!(zero_threshold > 0.0))
        throw InvalidArgument("solver zero_threshold must be positive");
    if (!(expenditure_guard_scale > 0.0))
        throw InvalidArgument("solver expenditure_guard_scale must be positive");
    if (stall_window <= 0)
        throw InvalidArgument("solver stall_window must be positive");
}

std::string to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::converged:
        return "converged";
    case SolveStatus::max_iterations:
        return "max_iterations";
    case SolveStatus::no_progress:
        return "no_progress";
    }
    return "unknown";
}

namespace {

double guard_for(const PreparedInstance& inst, double scale) {
    return scale * inst.supply_total_sum;
}

// max over goods of d[s]/max(1, psi[s]), joined with the scale-free
// complementarity residual; <= tolerance on both means converged.
double solve_metric(const PreparedInstance& inst, std::span<const double> prices,
                    std::span<const double> excess) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < inst.goods; ++s)
        worst = std::max(worst, excess[s] / std::max(1.0, inst.supply_totals[s]));
    const double comp = complementarity_residual(prices, excess);
    return std::max(worst, comp / inst.supply_total_sum);
}

std::vector<double> checked_excess(const PreparedInstance& inst, const PriceVector& prices,
                                   double guard) {
    if (prices.size() != inst.goods)
        throw InvalidArgument("price vector length does not match goods count");
    std::vector<double> excess(inst.goods, 0.0);
    EvalScratch scratch;
    if (!excess_demand_kernel(inst, prices.values().data(), guard, GuardPolicy::reject, scratch,
                              excess.data()))
        throw UndefinedDemand("some country has zero expenditure but positive income at the "
                              "given prices");
    return excess;
}

EquilibriumResult build_result(const PreparedInstance& inst, std::vector<double> prices,
                               std::int64_t iterations, SolveStatus status,
                               const SolverConfig& config, double guard) {
    const std::size_t n = inst.goods;
    const std::size_t m = inst.countries;
    std::vector<double> excess(n, 0.0);
    EvalScratch scratch;
    excess_demand_kernel(inst, prices.data(), guard, GuardPolicy::clamp, scratch, excess.data());

    EquilibriumResult r;
    r.p0 = PriceVector(prices);
    r.excess = excess;
    for (std::size_t s = 0; s < n; ++s) {
        const double scale = config.tolerance * std::max(1.0, inst.supply_totals[s]);
        if (std::abs(excess[s]) <= scale)
            r.binding_set.push_back(s);
        else if (excess[s] < -scale)
            r.slack_set.push_back(s);
    }
    r.degeneracy = 0;
    for (double p : prices)
        if (p <= config.zero_threshold)
            ++r.degeneracy;
    double unsold = 0.0;
    for (double d : excess)
        if (d < 0.0)
            unsold -= d;
    r.recession_level = unsold / inst.supply_total_sum;
    r.balance_ratios.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double e = scratch.expenditures[k];
        const double d = scratch.incomes[k];
        if (e > guard)
            r.balance_ratios[k] = d / e;
        else if (d <= guard)
            r.balance_ratios[k] = 1.0; // no trade at these prices counts as balanced
        else
            r.balance_ratios[k] = d / guard; // only reachable on unconverged iterates
    }
    r.incomes = scratch.incomes;
    r.expenditures = scratch.expenditures;
    r.iterations = iterations;
    r.status = status;
    r.converged = status == SolveStatus::converged;
    r.complementarity_residual = complementarity_residual(prices, excess);
    return r;
}

} // namespace

std::vector<double> excess_demand(const DemandMatrix& demand, const SupplyMatrix& supply,
                                  const PriceVector& prices, double guard) {
    PreparedInstance inst(demand, supply);
    return checked_excess(inst, prices, guard);
}

std::vector<double> excess_demand(const DemandMatrix& demand, const SupplyMatrix& supply,
                                  const PriceVector& prices) {
    PreparedInstance inst(demand, supply);
    return checked_excess(inst, prices, guard_for(inst, SolverConfig{}.expenditure_guard_scale));
}

bool is_equilibrium(const DemandMatrix& demand, const SupplyMatrix& supply,
                    const PriceVector& prices, double tol) {
    PreparedInstance inst(demand, supply);
    const auto excess = checked_excess(inst, prices, guard_for(inst, SolverConfig{}.expenditure_guard_scale));
    for (std::size_t s = 0; s < inst.goods; ++s)
        if (excess[s] > tol * std::max(1.0, inst.supply_totals[s]))
            return false;
    return true;
}

EquilibriumResult solve_relative_prices(const DemandMatrix& demand, const SupplyMatrix& supply,
                                        const SolverConfig& config) {
    config.validate();
    PreparedInstance inst(demand, supply);
    if (inst.supply_total_sum <= 0.0)
        throw ZeroSupply("total supply is zero; nothing to price");
    for (std::size_t k = 0; k < inst.countries; ++k)
        if (!inst.demand_active[k] && inst.supply_active[k])
            throw UndefinedDemand("country " + std::to_string(k) +
                                  " supplies goods but demands none; its income can never "
                                  "be spent");

    const double guard = guard_for(inst, config.expenditure_guard_scale);
    const std::size_t n = inst.goods;
    std::vector<double> prices(n, 1.0);
    std::vector<double> excess(n, 0.0);
    std::vector<double> trial_prices(n), trial_excess(n);
    EvalScratch scratch;

    // Slack prices decay geometrically but can take many iterations to cross
    // the flooring threshold. The trial floor snaps small slack components to
    // zero whenever doing so does not worsen the convergence metric, which a
    // genuinely positive equilibrium price never allows.
    constexpr double kFloorProbe = 1e-3;
    auto try_floor = [&](double metric) -> double {
        bool changed = false;
        for (std::size_t s = 0; s < n; ++s) {
            if (prices[s] > 0.0 && prices[s] < kFloorProbe && excess[s] < 0.0) {
                trial_prices[s] = 0.0;
                changed = true;
            } else {
                trial_prices[s] = prices[s];
            }
        }
        if (!changed)
            return metric;
        excess_demand_kernel(inst, trial_prices.data(), guard, GuardPolicy::clamp, scratch,
                             trial_excess.data());
        const double trial_metric = solve_metric(inst, trial_prices, trial_excess);
        if (trial_metric > metric)
            return metric;
        prices.swap(trial_prices);
        excess.swap(trial_excess);
        return trial_metric;
    };

    auto update_step = [&](std::vector<double>& pv, const std::vector<double>& ex) {
        double maxp = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            const double dem = ex[s] + inst.supply_totals[s];
            const double ratio = (dem + guard) / (inst.supply_totals[s] + guard);
            pv[s] *= std::pow(ratio, config.gamma);
            maxp = std::max(maxp, pv[s]);
        }
        for (std::size_t s = 0; s < n; ++s)
            if (pv[s] < config.zero_threshold * maxp && ex[s] < 0.0)
                pv[s] = 0.0;
        for (std::size_t s = 0; s < n; ++s)
            pv[s] = (pv[s] == maxp) ? 1.0 : pv[s] / maxp;
    };

    std::vector<double> best_prices = prices;
    double best_metric = std::numeric_limits<double>::infinity();
    SolveStatus status = SolveStatus::max_iterations;
    std::int64_t stall = 0;
    std::int64_t iteration = 0;

    // The multiplicative dynamics can settle into a small cycle around a
    // point that is not a complementarity solution whose support differs by
    // one good; zeros are absorbing, so the plain iteration cannot fix the
    // support on its own. On a stall, probe each single-good support change
    // (a positive price forced to zero, or a zeroed price re-seeded) for a
    // bounded number of steps and jump to the best strictly improving end
    // state.
    constexpr int kProbeSteps = 500;
    constexpr double kResurrectPrice = 1e-6;
    int probe_rounds_left = 64;
    std::vector<double> probe_prices(n), probe_excess(n), champion(n);
    auto support_probe = [&]() -> bool {
        double champion_metric = best_metric * (1.0 - 1e-9);
        bool found = false;
        for (std::size_t s = 0; s < n; ++s) {
            probe_prices = prices;
            probe_prices[s] = (prices[s] > 0.0) ? 0.0 : kResurrectPrice;
            double maxp = 0.0;
            for (double v : probe_prices)
                maxp = std::max(maxp, v);
            if (maxp <= 0.0)
                continue;
            for (std::size_t i = 0; i < n; ++i)
                probe_prices[i] = (probe_prices[i] == maxp) ? 1.0 : probe_prices[i] / maxp;
            for (int step = 0; step < kProbeSteps; ++step) {
                excess_demand_kernel(inst, probe_prices.data(), guard, GuardPolicy::clamp,
                                     scratch, probe_excess.data());
                update_step(probe_prices, probe_excess);
            }
            excess_demand_kernel(inst, probe_prices.data(), guard, GuardPolicy::clamp, scratch,
                                 probe_excess.data());
            const double m = solve_metric(inst, probe_prices, probe_excess);
            if (m < champion_metric) {
                champion_metric = m;
                champion = probe_prices;
                found = true;
            }
        }
        if (found)
            prices = champion;
        return found;
    };

    for (;; ++iteration) {
        excess_demand_kernel(inst, prices.data(), guard, GuardPolicy::clamp, scratch,
                             excess.data());
        double metric = solve_metric(inst, prices, excess);
        metric = try_floor(metric);
        if (metric < best_metric) {
            best_metric = metric;
            best_prices = prices;
            stall = 0;
        } else {
            ++stall;
        }
        if (metric <= config.tolerance) {
            status = SolveStatus::converged;
            break;
        }
        if (iteration >= config.max_iterations) {
            status = SolveStatus::max_iterations;
            break;
        }
        if (stall >= config.stall_window) {
            if (probe_rounds_left > 0 && support_probe()) {
                --probe_rounds_left;
                stall = 0;
                continue;
            }
            status = SolveStatus::no_progress;
            break;
        }

        update_step(prices, excess);
    }

    auto& final_prices = (status == SolveStatus::converged) ? prices : best_prices;
    return build_result(inst, std::move(final_prices), iteration, status, config, guard);
}

std::vector<EquilibriumResult> solve_batch(std::span<const TradeInstance> instances,
                                           const SolverConfig& config) {
    const std::size_t count = instances.size();
    std::vector<EquilibriumResult> out(count);
    std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
        try {
            out[i] = solve_relative_prices(instances[i].demand, instances[i].supply, config);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (std::size_t i = 0; i < count; ++i)
        if (errors[i])
            std::rethrow_exception(errors[i]);
    return out;
}

std::size_t degeneracy_multiplicity(const PriceVector& canonical_prices, double zero_threshold) {
    if (!canonical_prices.is_canonical())
        throw InvalidArgument("degeneracy multiplicity expects a max-normalized price vector");
    if (!(zero_threshold > 0.0) || zero_threshold >= 1.0)
        throw InvalidArgument("zero threshold must lie in (0, 1)");
    std::size_t count = 0;
    for (double p : canonical_prices.values())
        if (p <= zero_threshold)
            ++count;
    return count;
}

double recession_level(const DemandMatrix& demand, const SupplyMatrix& supply,
                       const PriceVector& prices) {
    PreparedInstance inst(demand, supply);
    if (inst.supply_total_sum <= 0.0)
        throw ZeroSupply("recession level is undefined for zero total supply");
    const auto excess =
        checked_excess(inst, prices, guard_for(inst, SolverConfig{}.expenditure_guard_scale));
    double unsold = 0.0;
    for (double d : excess)
        if (d < 0.0)
            unsold -= d;
    return unsold / inst.supply_total_sum;
}

std::vector<double> balance_ratios(const DemandMatrix& demand, const SupplyMatrix& supply,
                                   const PriceVector& prices) {
    PreparedInstance inst(demand, supply);
    if (prices.size() != inst.goods)
        throw InvalidArgument("price vector length does not match goods count");
    const double guard = guard_for(inst, SolverConfig{}.expenditure_guard_scale);
    EvalScratch scratch;
    std::vector<double> excess(inst.goods, 0.0);
    if (!excess_demand_kernel(inst, prices.values().data(), guard, GuardPolicy::reject, scratch,
                              excess.data()))
        throw UndefinedDemand("some country has zero expenditure but positive income at the "
                              "given prices");
    std::vector<double> ratios(inst.countries);
    for (std::size_t k = 0; k < inst.countries; ++k) {
        const double e = scratch.expenditures[k];
        const double d = scratch.incomes[k];
        if (e > guard)
            ratios[k] = d / e;
        else if (d <= guard)
            ratios[k] = 1.0; // no trade at these prices counts as balanced
        else
            throw UndefinedDemand("country " + std::to_string(k) +
                                  " has positive income but zero expenditure");
    }
    return ratios;
}

} // namespace tradeq
