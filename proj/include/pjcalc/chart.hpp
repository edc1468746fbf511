#pragma once

#include "pjcalc/rational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pj {

/// A coordinate chart: an ordered list of distinct variable names, with an
/// optional distinguished homogeneity variable (the "t" of a product N x R).
class Chart {
public:
    Chart(std::vector<std::string> variables, std::optional<std::string> homogeneity = {})
        : vars_(std::move(variables)), homog_(std::move(homogeneity)) {
        for (const auto& v : vars_) {
            if (v.empty()) throw error("chart: empty variable name");
        }
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (std::size_t j = i + 1; j < vars_.size(); ++j)
                if (vars_[i] == vars_[j]) throw error("chart: duplicate variable '" + vars_[i] + "'");
        if (homog_ && !contains(*homog_))
            throw error("chart: homogeneity variable '" + *homog_ + "' not in chart");
    }

    const std::vector<std::string>& variables() const { return vars_; }
    std::size_t dim() const { return vars_.size(); }
    const std::optional<std::string>& homogeneity_variable() const { return homog_; }

    bool contains(const std::string& name) const {
        return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
    }

    int index_of(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) throw error("chart: unknown variable '" + name + "'");
        return static_cast<int>(it - vars_.begin());
    }

    int homogeneity_index() const {
        if (!homog_) throw error("chart: no homogeneity variable declared");
        return index_of(*homog_);
    }

    friend bool operator==(const Chart& a, const Chart& b) {
        return a.vars_ == b.vars_ && a.homog_ == b.homog_;
    }
    friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

private:
    std::vector<std::string> vars_;
    std::optional<std::string> homog_;
};

using ChartPtr = std::shared_ptr<const Chart>;

inline ChartPtr make_chart(std::vector<std::string> vars, std::optional<std::string> homog = {}) {
    return std::make_shared<const Chart>(std::move(vars), std::move(homog));
}

inline bool same_chart(const ChartPtr& a, const ChartPtr& b) {
    return a == b || (a && b && *a == *b);
}

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* op) {
    if (!same_chart(a, b)) throw error(std::string(op) + ": operands live on different charts");
}

/// A rational point of a chart: one value per variable.
struct Point {
    std::map<std::string, Rational> assignment;

    const Rational& value(const std::string& name) const {
        auto it = assignment.find(name);
        if (it == assignment.end()) throw error("point: variable '" + name + "' unassigned");
        return it->second;
    }

    void require_complete(const Chart& chart) const {
        for (const auto& v : chart.variables()) (void)value(v);
    }
};

} // namespace pj
