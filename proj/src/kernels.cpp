#include "tradeq/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "tradeq/errors.hpp"

namespace tradeq {

PreparedInstance::PreparedInstance(const DemandMatrix& demand, const SupplyMatrix& supply) {
    if (demand.goods() != supply.goods() || demand.countries() != supply.countries())
        throw InvalidArgument("demand and supply matrices must have matching dimensions");
    goods = demand.goods();
    countries = demand.countries();
    demand_values = demand.data();
    supply_values = supply.data();
    supply_totals.assign(goods, 0.0);
    demand_active.assign(countries, 0);
    supply_active.assign(countries, 0);
    for (std::size_t s = 0; s < goods; ++s) {
        double row = 0.0;
        for (std::size_t k = 0; k < countries; ++k) {
            const double c = demand_values[s * countries + k];
            const double b = supply_values[s * countries + k];
            if (c > 0.0)
                demand_active[k] = 1;
            if (b > 0.0)
                supply_active[k] = 1;
            row += b;
        }
        supply_totals[s] = row;
        supply_total_sum += row;
    }
}

bool excess_demand_kernel(const PreparedInstance& inst, const double* prices, double guard,
                          GuardPolicy policy, EvalScratch& scratch, double* excess_out) noexcept {
    const std::size_t n = inst.goods;
    const std::size_t m = inst.countries;
    scratch.resize(m);
    double* income = scratch.incomes.data();
    double* expenditure = scratch.expenditures.data();

    for (std::size_t s = 0; s < n; ++s) {
        const double p = prices[s];
        if (p == 0.0)
            continue;
        const double* crow = inst.demand_values.data() + s * m;
        const double* brow = inst.supply_values.data() + s * m;
        for (std::size_t k = 0; k < m; ++k) {
            expenditure[k] += p * crow[k];
            income[k] += p * brow[k];
        }
    }

    double* ratio = scratch.ratios.data();
    for (std::size_t k = 0; k < m; ++k) {
        if (!inst.demand_active[k]) {
            ratio[k] = 0.0; // empty demand bundle buys nothing at any income
        } else if (expenditure[k] > guard) {
            ratio[k] = income[k] / expenditure[k];
        } else if (income[k] <= guard) {
            ratio[k] = 0.0; // priced out: both sides vanish
        } else if (policy == GuardPolicy::clamp) {
            ratio[k] = income[k] / guard;
        } else {
            return false;
        }
    }

    for (std::size_t s = 0; s < n; ++s) {
        const double* crow = inst.demand_values.data() + s * m;
        double dem = 0.0;
        for (std::size_t k = 0; k < m; ++k)
            dem += crow[k] * ratio[k];
        excess_out[s] = dem - inst.supply_totals[s];
    }
    return true;
}

double complementarity_residual(std::span<const double> prices, std::span<const double> excess) {
    double maxp = 0.0;
    for (double p : prices)
        maxp = std::max(maxp, p);
    double slack = 0.0;
    double violation = 0.0;
    for (std::size_t s = 0; s < excess.size(); ++s) {
        const double d = excess[s];
        if (d < 0.0)
            slack += (prices[s] / maxp) * (-d);
        else
            violation += d;
    }
    return slack + violation;
}

namespace {

void batch_loop(const PreparedInstance& inst, std::span<const double> prices_flat,
                std::size_t count, double guard, GuardPolicy policy, std::span<double> excess_flat,
                bool parallel) {
    const std::size_t n = inst.goods;
    if (prices_flat.size() < count * n || excess_flat.size() < count * n)
        throw InvalidArgument("batch buffers too small");
    bool bad = false;
    if (parallel) {
#pragma omp parallel
        {
            EvalScratch scratch;
            bool bad_local = false;
#pragma omp for schedule(static)
            for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
                const std::size_t off = static_cast<std::size_t>(i) * n;
                if (!excess_demand_kernel(inst, prices_flat.data() + off, guard, policy, scratch,
                                          excess_flat.data() + off))
                    bad_local = true;
            }
            if (bad_local) {
#pragma omp critical
                bad = true;
            }
        }
    } else {
        EvalScratch scratch;
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t off = i * n;
            if (!excess_demand_kernel(inst, prices_flat.data() + off, guard, policy, scratch,
                                      excess_flat.data() + off))
                bad = true;
        }
    }
    if (bad)
        throw UndefinedDemand("batch contains a price vector with zero expenditure but "
                              "positive income for some country");
}

// Linear index of the first node with the given leading coordinate (n = 3).
inline std::uint64_t leading_offset(std::uint64_t a1, std::uint64_t res) {
    return a1 == 0 ? 0 : a1 * (res + 1) - a1 * (a1 - 1) / 2;
}

// Lexicographic (residual, zero_count, index) minimum: among equally good
// nodes the least degenerate, lowest-index one wins, independent of thread
// count and schedule.
struct ThreadBest {
    double residual = std::numeric_limits<double>::infinity();
    std::size_t zeros = 0;
    std::uint64_t index = 0;
    bool valid = false;

    bool beats(const ThreadBest& other) const {
        if (!other.valid)
            return valid;
        if (residual != other.residual)
            return residual < other.residual;
        if (zeros != other.zeros)
            return zeros < other.zeros;
        return index < other.index;
    }
};

struct NodeRecord {
    std::uint64_t index;
    std::array<std::uint32_t, 3> comp;
};

// Evaluates one grid node; updates best/feasible bookkeeping.
struct NodeVisitor {
    const PreparedInstance& inst;
    std::uint64_t res;
    double feas_tol;
    double guard;
    bool collect;

    EvalScratch scratch;
    std::vector<double> point;
    std::vector<double> excess;
    ThreadBest best;
    std::vector<NodeRecord> feasible;
    std::uint64_t feasible_count = 0;
    std::uint64_t admissible = 0;

    NodeVisitor(const PreparedInstance& i, std::uint64_t r, double tol, double g, bool c)
        : inst(i), res(r), feas_tol(tol), guard(g), collect(c),
          point(i.goods, 0.0), excess(i.goods, 0.0) {}

    void visit(std::uint64_t index, std::uint32_t a1, std::uint32_t a2, std::uint32_t a3) {
        const double den = static_cast<double>(res);
        point[0] = static_cast<double>(a1) / den;
        if (inst.goods > 1)
            point[1] = static_cast<double>(a2) / den;
        if (inst.goods > 2)
            point[2] = static_cast<double>(a3) / den;
        if (!excess_demand_kernel(inst, point.data(), guard, GuardPolicy::reject, scratch,
                                  excess.data()))
            return;
        ++admissible;
        const double r = complementarity_residual(point, excess);
        ThreadBest candidate;
        candidate.valid = true;
        candidate.residual = r;
        candidate.zeros = (a1 == 0 ? 1u : 0u) + (inst.goods > 1 && a2 == 0 ? 1u : 0u) +
                          (inst.goods > 2 && a3 == 0 ? 1u : 0u);
        candidate.index = index;
        if (candidate.beats(best))
            best = candidate;
        bool feas = true;
        for (std::size_t s = 0; s < inst.goods; ++s) {
            if (excess[s] > feas_tol * std::max(1.0, inst.supply_totals[s])) {
                feas = false;
                break;
            }
        }
        if (feas) {
            ++feasible_count;
            if (collect)
                feasible.push_back({index, {a1, a2, a3}});
        }
    }
};

std::vector<double> node_point(std::size_t n, std::uint64_t res,
                               const std::array<std::uint32_t, 3>& comp) {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = static_cast<double>(comp[i]) / static_cast<double>(res);
    return p;
}

std::array<std::uint32_t, 3> index_composition(std::size_t n, std::uint64_t res,
                                               std::uint64_t index) {
    const auto r32 = static_cast<std::uint32_t>(res);
    if (n == 1)
        return {r32, 0, 0};
    if (n == 2) {
        const auto a1 = static_cast<std::uint32_t>(index);
        return {a1, static_cast<std::uint32_t>(res - a1), 0};
    }
    std::uint64_t a1 = 0;
    while (leading_offset(a1 + 1, res) <= index)
        ++a1;
    const std::uint64_t a2 = index - leading_offset(a1, res);
    return {static_cast<std::uint32_t>(a1), static_cast<std::uint32_t>(a2),
            static_cast<std::uint32_t>(res - a1 - a2)};
}

SimplexScanResult finalize_scan(const PreparedInstance& inst, std::uint64_t res,
                                std::uint64_t node_count, std::uint64_t admissible,
                                std::uint64_t feasible_count, const ThreadBest& best,
                                std::vector<NodeRecord>&& feasible, bool collect) {
    SimplexScanResult out;
    out.node_count = node_count;
    out.admissible_count = admissible;
    std::sort(feasible.begin(), feasible.end(),
              [](const NodeRecord& a, const NodeRecord& b) { return a.index < b.index; });
    out.feasible_count = feasible_count;
    if (best.valid) {
        out.has_best = true;
        out.best_index = best.index;
        out.best_residual = best.residual;
        out.best_zero_components = best.zeros;
        out.best_point = node_point(inst.goods, res, index_composition(inst.goods, res, best.index));
    }
    if (collect) {
        out.feasible_points.reserve(feasible.size());
        for (const auto& rec : feasible)
            out.feasible_points.push_back(node_point(inst.goods, res, rec.comp));
    }
    return out;
}

SimplexScanResult scan_impl(const PreparedInstance& inst, std::uint64_t res, double feas_tol,
                            double guard, bool collect, bool parallel) {
    if (res == 0)
        throw InvalidArgument("simplex scan resolution must be positive");
    const std::size_t n = inst.goods;
    if (n > 3)
        throw DimensionTooLarge("simplex scan supports at most 3 goods");

    if (n == 1) {
        NodeVisitor v(inst, res, feas_tol, guard, collect);
        v.visit(0, static_cast<std::uint32_t>(res), 0, 0);
        return finalize_scan(inst, res, 1, v.admissible, v.feasible_count, v.best,
                             std::move(v.feasible), collect);
    }

    if (n == 2) {
        const std::uint64_t nodes = res + 1;
        ThreadBest best;
        std::vector<NodeRecord> feasible;
        std::uint64_t feasible_count = 0;
        std::uint64_t admissible = 0;
#pragma omp parallel if (parallel)
        {
            NodeVisitor v(inst, res, feas_tol, guard, collect);
#pragma omp for schedule(static)
            for (std::ptrdiff_t i = 0; i <= static_cast<std::ptrdiff_t>(res); ++i) {
                const auto a1 = static_cast<std::uint32_t>(i);
                v.visit(static_cast<std::uint64_t>(i), a1, static_cast<std::uint32_t>(res) - a1,
                        0);
            }
#pragma omp critical
            {
                admissible += v.admissible;
                feasible_count += v.feasible_count;
                if (v.best.beats(best))
                    best = v.best;
                feasible.insert(feasible.end(), v.feasible.begin(), v.feasible.end());
            }
        }
        return finalize_scan(inst, res, nodes, admissible, feasible_count, best,
                             std::move(feasible), collect);
    }

    const std::uint64_t nodes = leading_offset(res + 1, res);
    ThreadBest best;
    std::vector<NodeRecord> feasible;
    std::uint64_t feasible_count = 0;
    std::uint64_t admissible = 0;
#pragma omp parallel if (parallel)
    {
        NodeVisitor v(inst, res, feas_tol, guard, collect);
#pragma omp for schedule(dynamic, 8)
        for (std::ptrdiff_t i = 0; i <= static_cast<std::ptrdiff_t>(res); ++i) {
            const auto a1 = static_cast<std::uint32_t>(i);
            std::uint64_t index = leading_offset(static_cast<std::uint64_t>(i), res);
            const auto limit = static_cast<std::uint32_t>(res) - a1;
            for (std::uint32_t a2 = 0; a2 <= limit; ++a2, ++index)
                v.visit(index, a1, a2, limit - a2);
        }
#pragma omp critical
        {
            admissible += v.admissible;
            feasible_count += v.feasible_count;
            if (v.best.beats(best))
                best = v.best;
            feasible.insert(feasible.end(), v.feasible.begin(), v.feasible.end());
        }
    }
    return finalize_scan(inst, res, nodes, admissible, feasible_count, best, std::move(feasible),
                         collect);
}

} // namespace

void excess_demand_batch(const PreparedInstance& inst, std::span<const double> prices_flat,
                         std::size_t count, double guard, GuardPolicy policy,
                         std::span<double> excess_flat) {
    batch_loop(inst, prices_flat, count, guard, policy, excess_flat, true);
}

void excess_demand_batch_reference(const PreparedInstance& inst,
                                   std::span<const double> prices_flat, std::size_t count,
                                   double guard, GuardPolicy policy,
                                   std::span<double> excess_flat) {
    batch_loop(inst, prices_flat, count, guard, policy, excess_flat, false);
}

SimplexScanResult simplex_scan(const PreparedInstance& inst, std::uint64_t resolution,
                               double feasibility_tol, double guard, bool collect_feasible) {
    return scan_impl(inst, resolution, feasibility_tol, guard, collect_feasible, true);
}

SimplexScanResult simplex_scan_reference(const PreparedInstance& inst, std::uint64_t resolution,
                                         double feasibility_tol, double guard,
                                         bool collect_feasible) {
    return scan_impl(inst, resolution, feasibility_tol, guard, collect_feasible, false);
}

} // namespace tradeq
