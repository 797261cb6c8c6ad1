#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tradeq/errors.hpp"

namespace tradeq {

/// Ordered, unique label set. Order is fixed for the lifetime of a dataset;
/// every matrix/tensor index refers back to it.
template <class Tag>
class LabelSet {
public:
    explicit LabelSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
        if (labels_.empty())
            throw InvalidArgument("label set must not be empty");
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i].empty())
                throw InvalidArgument("label set must not contain empty labels");
            auto [it, inserted] = index_.emplace(labels_[i], i);
            if (!inserted)
                throw InvalidArgument("duplicate label: " + labels_[i]);
        }
    }

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }

    std::optional<std::size_t> index_of(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    friend bool operator==(const LabelSet& a, const LabelSet& b) { return a.labels_ == b.labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
};

using GoodsSet = LabelSet<struct GoodsTag>;
using CountrySet = LabelSet<struct CountryTag>;

/// Bilateral import/export value tensors i[k][j][s] and e[k][j][s] (USD).
/// k = reporter, j = partner, s = goods category. The diagonal k == j is
/// structurally zero: self-flows are rejected at ingestion.
class TradeTensors {
public:
    TradeTensors(int year, std::size_t countries, std::size_t goods)
        : year_(year),
          countries_(countries),
          goods_(goods),
          imports_(countries * countries * goods, 0.0),
          exports_(countries * countries * goods, 0.0) {
        if (countries == 0 || goods == 0)
            throw InvalidArgument("trade tensors need at least one country and one good");
    }

    int year() const { return year_; }
    std::size_t countries() const { return countries_; }
    std::size_t goods() const { return goods_; }

    double import_value(std::size_t k, std::size_t j, std::size_t s) const {
        return imports_[index(k, j, s)];
    }
    double export_value(std::size_t k, std::size_t j, std::size_t s) const {
        return exports_[index(k, j, s)];
    }

    /// Accumulates an import observation (reporter k importing from partner j).
    void add_import(std::size_t k, std::size_t j, std::size_t s, double value) {
        check_entry(k, j, value);
        imports_[index(k, j, s)] += value;
    }
    /// Accumulates an export observation (reporter k exporting to partner j).
    void add_export(std::size_t k, std::size_t j, std::size_t s, double value) {
        check_entry(k, j, value);
        exports_[index(k, j, s)] += value;
    }

private:
    std::size_t index(std::size_t k, std::size_t j, std::size_t s) const {
        if (k >= countries_ || j >= countries_ || s >= goods_)
            throw InvalidArgument("trade tensor index out of range");
        return (k * countries_ + j) * goods_ + s;
    }

    void check_entry(std::size_t k, std::size_t j, double value) const {
        if (k == j)
            throw InvalidArgument("self-flow: reporter equals partner");
        if (!std::isfinite(value) || value < 0.0)
            throw InvalidArgument("trade value must be finite and nonnegative");
    }

    int year_;
    std::size_t countries_;
    std::size_t goods_;
    std::vector<double> imports_;
    std::vector<double> exports_;
};

/// Cost-form goods x countries matrix with nonnegative finite entries,
/// row-major (goods index s is the row).
template <class Tag>
class ValueMatrix {
public:
    ValueMatrix(std::size_t goods, std::size_t countries)
        : goods_(goods), countries_(countries), data_(goods * countries, 0.0) {
        if (goods == 0 || countries == 0)
            throw InvalidArgument("value matrix needs at least one good and one country");
    }

    ValueMatrix(std::size_t goods, std::size_t countries, std::vector<double> data)
        : goods_(goods), countries_(countries), data_(std::move(data)) {
        if (goods == 0 || countries == 0)
            throw InvalidArgument("value matrix needs at least one good and one country");
        if (data_.size() != goods * countries)
            throw InvalidArgument("value matrix data size mismatch");
        for (double v : data_)
            if (!std::isfinite(v) || v < 0.0)
                throw InvalidArgument("value matrix entries must be finite and nonnegative");
    }

    /// Row-per-good initializer, mainly for tests and fixtures:
    /// from_rows({{c11, c12}, {c21, c22}}).
    static ValueMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        std::size_t n = rows.size();
        if (n == 0)
            throw InvalidArgument("value matrix needs at least one row");
        std::size_t m = rows.begin()->size();
        std::vector<double> data;
        data.reserve(n * m);
        for (const auto& row : rows) {
            if (row.size() != m)
                throw InvalidArgument("value matrix rows must have equal length");
            data.insert(data.end(), row.begin(), row.end());
        }
        return ValueMatrix(n, m, std::move(data));
    }

    std::size_t goods() const { return goods_; }
    std::size_t countries() const { return countries_; }

    double at(std::size_t s, std::size_t k) const { return data_[offset(s, k)]; }
    void set(std::size_t s, std::size_t k, double v) {
        if (!std::isfinite(v) || v < 0.0)
            throw InvalidArgument("value matrix entries must be finite and nonnegative");
        data_[offset(s, k)] = v;
    }

    const std::vector<double>& data() const { return data_; }

    double total() const {
        double t = 0.0;
        for (double v : data_)
            t += v;
        return t;
    }

    std::vector<double> row_totals() const {
        std::vector<double> r(goods_, 0.0);
        for (std::size_t s = 0; s < goods_; ++s)
            for (std::size_t k = 0; k < countries_; ++k)
                r[s] += at(s, k);
        return r;
    }

    std::vector<double> column_totals() const {
        std::vector<double> c(countries_, 0.0);
        for (std::size_t s = 0; s < goods_; ++s)
            for (std::size_t k = 0; k < countries_; ++k)
                c[k] += at(s, k);
        return c;
    }

    friend bool operator==(const ValueMatrix& a, const ValueMatrix& b) {
        return a.goods_ == b.goods_ && a.countries_ == b.countries_ && a.data_ == b.data_;
    }

private:
    std::size_t offset(std::size_t s, std::size_t k) const {
        if (s >= goods_ || k >= countries_)
            throw InvalidArgument("value matrix index out of range");
        return s * countries_ + k;
    }

    std::size_t goods_;
    std::size_t countries_;
    std::vector<double> data_;
};

using DemandMatrix = ValueMatrix<struct DemandTag>;
using SupplyMatrix = ValueMatrix<struct SupplyTag>;

/// Total supplied value per good, psi[s] = sum_k b[s][k] (USD).
struct SupplyVector {
    std::vector<double> values;

    double total() const {
        double t = 0.0;
        for (double v : values)
            t += v;
        return t;
    }
};

/// Nonnegative relative price vector. Not all components may be zero.
/// Canonical form (used for solver output) is max-normalized: max_s p[s] = 1.
class PriceVector {
public:
    explicit PriceVector(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty())
            throw InvalidArgument("price vector must not be empty");
        bool any_positive = false;
        for (double v : values_) {
            if (!std::isfinite(v) || v < 0.0)
                throw InvalidArgument("prices must be finite and nonnegative");
            if (v > 0.0)
                any_positive = true;
        }
        if (!any_positive)
            throw InvalidArgument("price vector must not be all zero");
    }

    static PriceVector ones(std::size_t n) { return PriceVector(std::vector<double>(n, 1.0)); }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t s) const { return values_[s]; }
    const std::vector<double>& values() const { return values_; }

    double max_component() const { return *std::max_element(values_.begin(), values_.end()); }

    /// Returns the max-normalized copy (largest component exactly 1).
    PriceVector canonicalized() const {
        double m = max_component();
        std::vector<double> out(values_.size());
        for (std::size_t s = 0; s < values_.size(); ++s)
            out[s] = (values_[s] == m) ? 1.0 : values_[s] / m;
        return PriceVector(std::move(out));
    }

    bool is_canonical() const { return max_component() == 1.0; }

    friend bool operator==(const PriceVector& a, const PriceVector& b) {
        return a.values_ == b.values_;
    }

private:
    std::vector<double> values_;
};

/// A fully labeled single-year exchange instance: the unit every pipeline
/// stage downstream of ingestion operates on.
struct TradeInstance {
    GoodsSet goods;
    CountrySet countries;
    int year;
    DemandMatrix demand;
    SupplyMatrix supply;
};

} // namespace tradeq
