#pragma once

#include "pjcalc/scalar.hpp"

#include <map>
#include <vector>

namespace pj {

enum class Variance { Contra, Co };

/// Sparse skew tensor of fixed degree: a map from strictly increasing index
/// tuples to nonzero scalars. Variance::Contra gives multivector fields,
/// Variance::Co differential forms. Degree -1 is the typed zero that shows
/// up as the absent component of a degree-0 first-order operator.
template <Variance V>
class Tensor {
public:
    using Key = std::vector<int>;
    using Terms = std::map<Key, Scalar>;

    Tensor(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
        if (degree_ < -1) throw error("tensor: degree below -1");
        if (degree_ > static_cast<int>(chart_->dim())) degree_ = degree; // sparse zero beyond top degree is fine
    }

    static Tensor zero(ChartPtr chart, int degree) { return Tensor(std::move(chart), degree); }

    static Tensor from_scalar(const Scalar& s) {
        Tensor t(s.chart(), 0);
        if (!s.is_zero()) t.terms_.emplace(Key{}, s);
        return t;
    }

    static Tensor basis(const ChartPtr& chart, const std::string& var) {
        Tensor t(chart, 1);
        t.terms_.emplace(Key{chart->index_of(var)}, Scalar::one(chart));
        return t;
    }

    const ChartPtr& chart() const { return chart_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Scalar to_scalar() const {
        if (degree_ != 0) throw error("tensor: not degree 0");
        if (terms_.empty()) return Scalar::zero(chart_);
        return terms_.begin()->second;
    }

    void add_term(const Key& key, const Scalar& coeff) {
        if (static_cast<int>(key.size()) != degree_) throw error("tensor: key length != degree");
        if (coeff.is_zero()) return;
        auto [it, inserted] = terms_.emplace(key, coeff);
        if (!inserted) {
            it->second = it->second + coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Insert an arbitrary (possibly unsorted, possibly repeating) tuple,
    /// normalizing by skew symmetry.
    void add_unsorted(Key key, Scalar coeff) {
        int sign = sort_key(key);
        if (sign == 0) return;
        if (sign < 0) coeff = -coeff;
        add_term(key, coeff);
    }

    Tensor operator-() const {
        Tensor r(chart_, degree_);
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }

    Tensor operator+(const Tensor& rhs) const {
        require_compatible(rhs, "tensor add");
        Tensor r = *this;
        for (const auto& [k, c] : rhs.terms_) r.add_term(k, c);
        return r;
    }

    Tensor operator-(const Tensor& rhs) const {
        require_compatible(rhs, "tensor sub");
        Tensor r = *this;
        for (const auto& [k, c] : rhs.terms_) r.add_term(k, -c);
        return r;
    }

    Tensor operator*(const Scalar& s) const {
        Tensor r(chart_, degree_);
        for (const auto& [k, c] : terms_) r.add_term(k, c * s);
        return r;
    }

    Tensor operator*(const Rational& s) const {
        Tensor r(chart_, degree_);
        if (s == 0) return r;
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
        return r;
    }

    friend bool operator==(const Tensor& a, const Tensor& b) {
        return a.degree_ == b.degree_ && same_chart(a.chart_, b.chart_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

    /// Sorts the tuple in place, returning the permutation sign, or 0 if an
    /// index repeats.
    static int sort_key(Key& key) {
        int sign = 1;
        for (std::size_t i = 1; i < key.size(); ++i) { // insertion sort; tuples are short
            for (std::size_t j = i; j > 0 && key[j] < key[j - 1]; --j) {
                std::swap(key[j], key[j - 1]);
                sign = -sign;
            }
        }
        for (std::size_t i = 1; i < key.size(); ++i)
            if (key[i] == key[i - 1]) return 0;
        return sign;
    }

private:
    void require_compatible(const Tensor& rhs, const char* op) const {
        require_same_chart(chart_, rhs.chart_, op);
        if (degree_ != rhs.degree_) throw error(std::string(op) + ": degree mismatch");
    }

    ChartPtr chart_;
    int degree_;
    Terms terms_;
};

using Multivector = Tensor<Variance::Contra>;
using DiffForm = Tensor<Variance::Co>;

template <Variance V>
Tensor<V> operator*(const Scalar& s, const Tensor<V>& t) { return t * s; }
template <Variance V>
Tensor<V> operator*(const Rational& s, const Tensor<V>& t) { return t * s; }

} // namespace pj
