#pragma once

// Deterministic randomized-input generators shared by the property tests.
// The seed comes from PJCALC_SEED when set, so failures are reproducible.

#include "pjcalc/structures.hpp"

#include <cstdlib>
#include <random>
#include <vector>

namespace pjtest {

using namespace pj;

inline std::uint64_t test_seed() {
    if (const char* s = std::getenv("PJCALC_SEED")) return std::strtoull(s, nullptr, 10);
    return 0x5eed2026u;
}

using Rng = std::mt19937_64;

inline int rand_int(Rng& g, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline Rational rand_coeff(Rng& g) {
    int num = rand_int(g, -3, 3);
    if (num == 0) num = 1;
    return Rational(num, rand_int(g, 1, 3));
}

// Sparse Laurent scalar: total |exponent| weight <= 2, exponents in [-2, 2].
// skip_index freezes one variable (used to build slice-constant coefficients).
inline Scalar random_scalar(const ChartPtr& chart, Rng& g, int max_terms = 2,
                            int skip_index = -1) {
    Scalar s = Scalar::zero(chart);
    int terms = rand_int(g, 1, max_terms);
    for (int t = 0; t < terms; ++t) {
        Scalar::Expo e(chart->dim(), 0);
        int weight = rand_int(g, 0, 2);
        for (int w = 0; w < weight; ++w) {
            int v = rand_int(g, 0, static_cast<int>(chart->dim()) - 1);
            if (v == skip_index) continue;
            e[static_cast<std::size_t>(v)] += rand_int(g, 0, 1) ? 1 : -1;
        }
        s.add_term(e, rand_coeff(g));
    }
    return s;
}

template <Variance V>
Tensor<V> random_tensor(const ChartPtr& chart, int degree, Rng& g, int max_terms = 2) {
    Tensor<V> t(chart, degree);
    if (degree > static_cast<int>(chart->dim()) || degree < 0) return t;
    int terms = rand_int(g, 1, max_terms);
    for (int n = 0; n < terms; ++n) {
        std::vector<int> key;
        for (int i = 0; i < static_cast<int>(chart->dim()) && static_cast<int>(key.size()) < degree; ++i) {
            int remaining = static_cast<int>(chart->dim()) - i;
            int needed = degree - static_cast<int>(key.size());
            if (rand_int(g, 1, remaining) <= needed) key.push_back(i);
        }
        t.add_term(key, random_scalar(chart, g));
    }
    return t;
}

inline Multivector random_mv(const ChartPtr& chart, int degree, Rng& g, int max_terms = 2) {
    return random_tensor<Variance::Contra>(chart, degree, g, max_terms);
}
inline DiffForm random_form(const ChartPtr& chart, int degree, Rng& g, int max_terms = 2) {
    return random_tensor<Variance::Co>(chart, degree, g, max_terms);
}

inline FirstOrderOp random_op(const ChartPtr& chart, int degree, Rng& g) {
    if (degree == 0) return FirstOrderOp::embed(random_mv(chart, 0, g));
    return {random_mv(chart, degree, g), random_mv(chart, degree - 1, g)};
}

inline FormPair random_formpair(const ChartPtr& chart, int degree, Rng& g) {
    if (degree == 0) return FormPair::embed(random_form(chart, 0, g));
    return {random_form(chart, degree, g), random_form(chart, degree - 1, g)};
}

// Tensors with an exact eigenvalue under the Lie derivative along t @t: the
// t-exponent of each coefficient compensates the @t / dt factor of its key.
inline Multivector random_homog_mv(const HomogeneousSetup& setup, int degree, int target, Rng& g,
                                   int max_terms = 2) {
    const ChartPtr& chart = setup.chart;
    Multivector base = random_mv(chart, degree, g, max_terms);
    Multivector out(chart, degree);
    for (const auto& [key, coeff] : base.terms()) {
        bool has_t = false;
        for (int i : key) has_t = has_t || (i == setup.t_index);
        int m = target + (has_t ? 1 : 0);
        Scalar c = random_scalar(chart, g, 1, setup.t_index);
        // strip any accidental t-exponent, then install exactly t^m
        Scalar fixed = Scalar::zero(chart);
        for (const auto& [e, r] : c.terms()) {
            Scalar::Expo e2 = e;
            e2[static_cast<std::size_t>(setup.t_index)] = m;
            fixed.add_term(e2, r);
        }
        (void)coeff;
        out.add_term(key, fixed);
    }
    return out;
}

inline DiffForm random_homog_form(const HomogeneousSetup& setup, int degree, int target, Rng& g,
                                  int max_terms = 2) {
    const ChartPtr& chart = setup.chart;
    DiffForm base = random_form(chart, degree, g, max_terms);
    DiffForm out(chart, degree);
    for (const auto& [key, coeff] : base.terms()) {
        bool has_t = false;
        for (int i : key) has_t = has_t || (i == setup.t_index);
        int m = target - (has_t ? 1 : 0);
        Scalar c = random_scalar(chart, g, 1, setup.t_index);
        Scalar fixed = Scalar::zero(chart);
        for (const auto& [e, r] : c.terms()) {
            Scalar::Expo e2 = e;
            e2[static_cast<std::size_t>(setup.t_index)] = m;
            fixed.add_term(e2, r);
        }
        (void)coeff;
        out.add_term(key, fixed);
    }
    return out;
}

} // namespace pjtest
