#include "pjcalc/scalar.hpp"

namespace pj {

Scalar::Scalar(ChartPtr chart, const Rational& c) : chart_(std::move(chart)) {
    if (c != 0) terms_.emplace(Expo(chart_->dim(), 0), c);
}

Scalar Scalar::variable(const ChartPtr& chart, const std::string& name, int power) {
    Expo e(chart->dim(), 0);
    e[static_cast<std::size_t>(chart->index_of(name))] = power;
    return monomial(chart, std::move(e), Rational(1));
}

Scalar Scalar::monomial(ChartPtr chart, Expo e, const Rational& c) {
    if (e.size() != chart->dim()) throw error("scalar: exponent vector length mismatch");
    Scalar s(std::move(chart));
    if (c != 0) s.terms_.emplace(std::move(e), c);
    return s;
}

bool Scalar::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const auto& e = terms_.begin()->first;
    for (int x : e)
        if (x != 0) return false;
    return true;
}

Rational Scalar::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw error("scalar: not a constant");
    return terms_.begin()->second;
}

void Scalar::add_term(const Expo& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Scalar Scalar::operator-() const {
    Scalar r(chart_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Scalar Scalar::operator+(const Scalar& rhs) const {
    require_same_chart(chart_, rhs.chart_, "scalar add");
    Scalar r = *this;
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, c);
    return r;
}

Scalar Scalar::operator-(const Scalar& rhs) const {
    require_same_chart(chart_, rhs.chart_, "scalar sub");
    Scalar r = *this;
    for (const auto& [e, c] : rhs.terms_) r.add_term(e, -c);
    return r;
}

Scalar Scalar::operator*(const Scalar& rhs) const {
    require_same_chart(chart_, rhs.chart_, "scalar mul");
    Scalar r(chart_);
    Expo e(chart_->dim());
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Scalar Scalar::operator*(const Rational& c) const {
    Scalar r(chart_);
    if (c == 0) return r;
    for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
    return r;
}

Scalar Scalar::pow(long long n) const {
    if (n == 0) return one(chart_);
    if (n < 0) {
        if (!is_monomial()) throw error("scalar pow: non-invertible scalar (only monomials are units)");
        const auto& [e, c] = *terms_.begin();
        Expo inv(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) inv[i] = -e[i];
        return monomial(chart_, std::move(inv), Rational(1) / c).pow(-n);
    }
    Scalar base = *this;
    Scalar acc = one(chart_);
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

Scalar Scalar::derivative(const std::string& var) const { return derivative(chart_->index_of(var)); }

Scalar Scalar::derivative(int var_index) const {
    if (var_index < 0 || static_cast<std::size_t>(var_index) >= chart_->dim())
        throw error("scalar derivative: unknown variable");
    Scalar r(chart_);
    for (const auto& [e, c] : terms_) {
        int n = e[static_cast<std::size_t>(var_index)];
        if (n == 0) continue;
        Expo de = e;
        de[static_cast<std::size_t>(var_index)] = n - 1;
        r.add_term(de, c * n);
    }
    return r;
}

Scalar Scalar::specialize(const std::string& var, const Rational& value) const {
    return specialize(chart_->index_of(var), value);
}

Scalar Scalar::specialize(int var_index, const Rational& value) const {
    if (var_index < 0 || static_cast<std::size_t>(var_index) >= chart_->dim())
        throw error("scalar specialize: unknown variable");
    Scalar r(chart_);
    for (const auto& [e, c] : terms_) {
        int n = e[static_cast<std::size_t>(var_index)];
        if (n < 0 && value == 0) throw error("scalar specialize: zero substituted into negative exponent");
        Rational factor(1);
        if (n != 0) {
            Rational base = (n > 0) ? value : Rational(1) / value;
            for (int i = 0; i < (n > 0 ? n : -n); ++i) factor *= base;
        }
        Expo se = e;
        se[static_cast<std::size_t>(var_index)] = 0;
        r.add_term(se, c * factor);
    }
    return r;
}

Rational Scalar::evaluate(const Point& p) const {
    p.require_complete(*chart_);
    Scalar cur = *this;
    for (std::size_t i = 0; i < chart_->dim(); ++i)
        cur = cur.specialize(static_cast<int>(i), p.value(chart_->variables()[i]));
    return cur.constant_value();
}

Scalar Scalar::transplant(const ChartPtr& target, const std::vector<int>& index_map) const {
    if (index_map.size() != chart_->dim()) throw error("scalar transplant: bad index map");
    Scalar r(target);
    for (const auto& [e, c] : terms_) {
        Expo te(target->dim(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (index_map[i] < 0) {
                if (e[i] != 0)
                    throw error("scalar transplant: dropped variable '" + chart_->variables()[i] +
                                "' occurs with nonzero exponent");
            } else {
                te[static_cast<std::size_t>(index_map[i])] = e[i];
            }
        }
        r.add_term(te, c);
    }
    return r;
}

} // namespace pj
