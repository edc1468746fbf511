#pragma once

#include "pjcalc/chart.hpp"

#include <map>
#include <vector>

namespace pj {

/// Exact multivariate Laurent polynomial over a chart, with rational
/// coefficients. Exponents are integers and may be negative. The term map
/// never stores a zero coefficient, so equality of term maps is equality
/// of scalars.
class Scalar {
public:
    using Expo = std::vector<int>; // one exponent per chart variable
    using Terms = std::map<Expo, Rational>;

    explicit Scalar(ChartPtr chart) : chart_(std::move(chart)) {}
    Scalar(ChartPtr chart, const Rational& c);

    static Scalar zero(ChartPtr chart) { return Scalar(std::move(chart)); }
    static Scalar constant(ChartPtr chart, const Rational& c) { return Scalar(std::move(chart), c); }
    static Scalar one(ChartPtr chart) { return Scalar(std::move(chart), Rational(1)); }
    static Scalar variable(const ChartPtr& chart, const std::string& name, int power = 1);
    static Scalar monomial(ChartPtr chart, Expo e, const Rational& c);

    const ChartPtr& chart() const { return chart_; }
    const Terms& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const;
    Rational constant_value() const; // requires is_constant()

    Scalar operator-() const;
    Scalar operator+(const Scalar& rhs) const;
    Scalar operator-(const Scalar& rhs) const;
    Scalar operator*(const Scalar& rhs) const;
    Scalar operator*(const Rational& c) const;
    Scalar pow(long long n) const; // negative n only for monomials

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return same_chart(a.chart_, b.chart_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    bool operator<(const Scalar& rhs) const { return terms_ < rhs.terms_; }

    Scalar derivative(const std::string& var) const;
    Scalar derivative(int var_index) const;

    /// Substitute a rational value for one variable (exponent of that
    /// variable becomes zero; the chart is unchanged).
    Scalar specialize(const std::string& var, const Rational& value) const;
    Scalar specialize(int var_index, const Rational& value) const;

    /// Full evaluation at a point.
    Rational evaluate(const Point& p) const;

    /// Move this scalar to another chart; `index_map[i]` is the index in
    /// the target chart of source variable i, or -1 for a dropped variable
    /// (whose exponent must already be zero in every term).
    Scalar transplant(const ChartPtr& target, const std::vector<int>& index_map) const;

    void add_term(const Expo& e, const Rational& c); // normalizing insert

private:
    ChartPtr chart_;
    Terms terms_;
};

inline Scalar operator*(const Rational& c, const Scalar& s) { return s * c; }

} // namespace pj
