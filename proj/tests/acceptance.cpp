// Acceptance suite: one pass/fail line per criterion, every comparison exact.
// PJCALC_SEED selects the deterministic RNG seed; --max-degree N caps the
// randomized tensor degree (default 3).

#include "oracles.hpp"
#include "random_support.hpp"

#include "pjcalc/frontend.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace pj;
using pjtest::Rng;

namespace {

int max_degree = 3;
std::vector<pj::frontend::Value> produced; // fed to the round-trip criterion

void note(pj::frontend::Value v) { produced.push_back(std::move(v)); }

Scalar var(const ChartPtr& c, const std::string& n, int pow = 1) {
    return Scalar::variable(c, n, pow);
}
Multivector bvec(const ChartPtr& c, const std::string& n) { return Multivector::basis(c, n); }
DiffForm bform(const ChartPtr& c, const std::string& n) { return DiffForm::basis(c, n); }

int rdeg(Rng& g, int lo, int hi) { return pjtest::rand_int(g, lo, std::min(hi, max_degree)); }

bool check(bool ok, int& bad) {
    if (!ok) ++bad;
    return ok;
}

// ---- 1: graded bracket axioms --------------------------------------------

bool criterion_bracket_axioms() {
    Rng g(pjtest::test_seed() + 101);
    ChartPtr chart = make_chart({"x", "y", "z", "t"}, std::string("t"));
    int bad = 0;
    auto sgn = [](int a, int b) { return (a * b) % 2 == 0 ? 1 : -1; };
    for (int i = 0; i < 200; ++i) {
        // multivector bracket: anchor on functions
        Multivector x = pjtest::random_mv(chart, 1, g);
        Scalar f = pjtest::random_scalar(chart, g);
        check(sn_bracket(x, Multivector::from_scalar(f)) ==
                  Multivector::from_scalar(apply_vector(x, f)),
              bad);

        int pd = rdeg(g, 1, 3), qd = rdeg(g, 1, 3), rd = rdeg(g, 0, 2);
        Multivector p = pjtest::random_mv(chart, pd, g);
        Multivector q = pjtest::random_mv(chart, qd, g);
        Multivector r = pjtest::random_mv(chart, rd, g);
        note(p);

        Multivector flip = sn_bracket(q, p);
        if ((pd - 1) * (qd - 1) % 2 == 0) flip = -flip;
        Multivector pq = sn_bracket(p, q);
        check(pq == flip, bad);
        note(pq);

        Multivector lhs = sn_bracket(p, wedge(q, r));
        Multivector rhs = wedge(pq, r);
        Multivector tail = wedge(q, sn_bracket(p, r));
        rhs = ((pd - 1) * qd % 2 == 0) ? rhs + tail : rhs - tail;
        check(lhs == rhs, bad);

        Multivector j1 = sn_bracket(pq, r) * Rational(sgn(pd - 1, rd - 1));
        Multivector j2 = sn_bracket(sn_bracket(q, r), p) * Rational(sgn(pd - 1, qd - 1));
        Multivector j3 = sn_bracket(sn_bracket(r, p), q) * Rational(sgn(qd - 1, rd - 1));
        check((j1 + j2 + j3).is_zero(), bad);

        // cross-check against the independent odd-coordinate realization
        check(pq == pjtest::oracle::sn_oracle(p, q), bad);

        // operator bracket: extends the first-order commutator
        Multivector y = pjtest::random_mv(chart, 1, g);
        Scalar h = pjtest::random_scalar(chart, g);
        FirstOrderOp commutator = sj_bracket({x, Multivector::from_scalar(f)},
                                             {y, Multivector::from_scalar(h)});
        check(commutator.d0 == sn_bracket(x, y), bad);
        check(commutator.d1 ==
                  Multivector::from_scalar(apply_vector(x, h) - apply_vector(y, f)),
              bad);
        // acts on a function as X(g) + f g
        FirstOrderOp act = sj_bracket({x, Multivector::from_scalar(f)},
                                      FirstOrderOp::from_scalar(h));
        check(act.d0 == Multivector::from_scalar(apply_vector(x, h) + f * h), bad);

        FirstOrderOp d = pjtest::random_op(chart, pd, g);
        FirstOrderOp e = pjtest::random_op(chart, qd, g);
        FirstOrderOp w = pjtest::random_op(chart, rd, g);
        note(d);

        FirstOrderOp oflip = sj_bracket(e, d);
        if ((pd - 1) * (qd - 1) % 2 == 0) oflip = -oflip;
        FirstOrderOp de = sj_bracket(d, e);
        check(de == oflip, bad);
        note(de);

        FirstOrderOp olhs = sj_bracket(d, op_wedge(e, w));
        FirstOrderOp orhs = op_wedge(de, w);
        FirstOrderOp otail = op_wedge(e, sj_bracket(d, w));
        orhs = ((pd - 1) * qd % 2 == 0) ? orhs + otail : orhs - otail;
        FirstOrderOp ocorr = op_wedge(FirstOrderOp::embed(d.i_phi()), op_wedge(e, w));
        orhs = (pd % 2 == 0) ? orhs + ocorr : orhs - ocorr;
        check(olhs == orhs, bad);

        FirstOrderOp k1 = sj_bracket(de, w) * Rational(sgn(pd - 1, rd - 1));
        FirstOrderOp k2 = sj_bracket(sj_bracket(e, w), d) * Rational(sgn(pd - 1, qd - 1));
        FirstOrderOp k3 = sj_bracket(sj_bracket(w, d), e) * Rational(sgn(qd - 1, rd - 1));
        check((k1 + k2 + k3).is_zero(), bad);

        // embedding is a bracket monomorphism
        FirstOrderOp embedded = sj_bracket(FirstOrderOp::embed(p), FirstOrderOp::embed(q));
        check(embedded.d0 == pq && embedded.d1.is_zero(), bad);
    }
    return bad == 0;
}

// ---- 2: the two differentials are cohomology operators --------------------

bool criterion_cohomology() {
    Rng g(pjtest::test_seed() + 102);
    ChartPtr chart = make_chart({"x", "y", "z", "t"}, std::string("t"));
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
        int pd = rdeg(g, 0, 3), qd = rdeg(g, 0, 2);
        DiffForm a = pjtest::random_form(chart, pd, g);
        DiffForm b = pjtest::random_form(chart, qd, g);
        note(a);
        check(exterior_derivative(exterior_derivative(a)).is_zero(), bad);
        DiffForm dw = exterior_derivative(wedge(a, b));
        DiffForm rhs = wedge(exterior_derivative(a), b);
        DiffForm tail = wedge(a, exterior_derivative(b));
        rhs = (pd % 2 == 0) ? rhs + tail : rhs - tail;
        check(dw == rhs, bad);

        FormPair fa = pjtest::random_formpair(chart, pd, g);
        FormPair fb = pjtest::random_formpair(chart, qd, g);
        note(fa);
        check(jacobi_differential(jacobi_differential(fa)).is_zero(), bad);
        FormPair w = pair_wedge(fa, fb);
        FormPair plhs = jacobi_differential(w);
        FormPair prhs = pair_wedge(jacobi_differential(fa), fb);
        FormPair ptail = pair_wedge(fa, jacobi_differential(fb));
        prhs = (pd % 2 == 0) ? prhs + ptail : prhs - ptail;
        prhs = prhs - FormPair(DiffForm::zero(chart, w.degree() + 1), w.a0);
        check(plhs == prhs, bad);
    }
    return bad == 0;
}

// ---- 3: the reduction intertwines actions and brackets --------------------

bool criterion_reduction_identities() {
    Rng g(pjtest::test_seed() + 103);
    int bad = 0;
    for (const ChartPtr& chart : {make_chart({"x", "t"}, std::string("t")),
                                  make_chart({"x", "y", "t"}, std::string("t"))}) {
        HomogeneousSetup setup = HomogeneousSetup::product(chart);
        std::vector<Scalar> family;
        family.push_back(setup.one_tilde);
        for (const auto& v : chart->variables())
            if (chart->index_of(v) != setup.t_index)
                family.push_back(setup.one_tilde * var(chart, v));
        std::vector<int> index_map;
        for (std::size_t v = 0; v < chart->dim(); ++v)
            index_map.push_back(static_cast<int>(v) == setup.t_index
                                    ? -1
                                    : setup.slice->index_of(chart->variables()[v]));
        for (int i = 0; i < 50; ++i) {
            int k = rdeg(g, 1, 3), r = rdeg(g, 1, 3);
            Multivector p = pjtest::random_homog_mv(setup, k, 1 - k, g);
            Multivector q = pjtest::random_homog_mv(setup, r, 1 - r, g);
            FirstOrderOp jp = reduce_J(p, setup).op;
            FirstOrderOp jq = reduce_J(q, setup).op;
            note(p);
            note(jp);

            std::vector<Scalar> fs;
            for (int a = 0; a < k; ++a)
                fs.push_back(family[static_cast<std::size_t>(
                    pjtest::rand_int(g, 0, static_cast<int>(family.size()) - 1))]);
            check(bracket_of_functions(p, fs) == op_on_functions(jp, fs), bad);
            check(sj_bracket(jp, jq) == reduce_J(sn_bracket(p, q), setup).op, bad);

            FirstOrderOp jnp = reduce_JN(p, setup).op;
            FirstOrderOp jnq = reduce_JN(q, setup).op;
            check(sj_bracket(jnp, jnq) == reduce_JN(sn_bracket(p, q), setup).op, bad);
            std::vector<Scalar> fs_n;
            for (const auto& f : fs)
                fs_n.push_back(f.specialize(setup.t_index, 1).transplant(setup.slice, index_map));
            Scalar lhs = bracket_of_functions(p, fs)
                             .specialize(setup.t_index, 1)
                             .transplant(setup.slice, index_map);
            check(lhs == op_on_functions(jnp, fs_n), bad);
        }
    }
    return bad == 0;
}

// ---- 4: reduction and lifting are mutually inverse ------------------------

bool criterion_bijectivity() {
    Rng g(pjtest::test_seed() + 104);
    ChartPtr chart = make_chart({"x", "y", "t"}, std::string("t"));
    HomogeneousSetup setup = HomogeneousSetup::product(chart);
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
        int k = i % 4;
        if (k > max_degree) k = max_degree;
        Multivector p = pjtest::random_homog_mv(setup, k, 1 - k, g);
        ReducedOp jn = reduce_JN(p, setup);
        check(jn.homogeneous, bad);
        check(poissonize(jn.op, setup) == p, bad);

        FirstOrderOp d = pjtest::random_op(setup.slice, k, g);
        Multivector lifted = poissonize(d, setup);
        note(lifted);
        DegreeResult dr = homogeneity_degree(lifted, setup.delta);
        check(dr.is(DegreeResult::Kind::ZeroTensor) ||
                  dr == DegreeResult::homogeneous(Rational(1 - k)),
              bad);
        check(reduce_JN(lifted, setup).op == d, bad);

        // degree-2 lifts match the exponential normal form t^{1-k}(P0 + t@t^P1)
        FirstOrderOp d2 = pjtest::random_op(setup.slice, 2, g);
        Multivector expected = (extend_to_product(d2.d0, setup) +
                                wedge(setup.delta, extend_to_product(d2.d1, setup))) *
                               var(chart, "t", -1);
        check(poissonize(d2, setup) == expected, bad);
    }
    return bad == 0;
}

// ---- 5: canonical bivector on the four-dimensional phase space -------------

bool criterion_canonical_example() {
    ChartPtr r4 = make_chart({"q1", "p1", "q2", "p2"});
    Multivector lambda =
        wedge(bvec(r4, "q1"), bvec(r4, "p1")) + wedge(bvec(r4, "q2"), bvec(r4, "p2"));
    Multivector delta = (bvec(r4, "q1") * var(r4, "q1") + bvec(r4, "p1") * var(r4, "p1") +
                         bvec(r4, "q2") * var(r4, "q2") + bvec(r4, "p2") * var(r4, "p2")) *
                        Rational(1, 2);
    Scalar h = (var(r4, "q1", 2) + var(r4, "p1", 2) + var(r4, "q2", 2) + var(r4, "p2", 2)) *
               Rational(1, 2);
    Multivector rotation = bvec(r4, "q1") * var(r4, "p1") - bvec(r4, "p1") * var(r4, "q1") +
                           bvec(r4, "q2") * var(r4, "p2") - bvec(r4, "p2") * var(r4, "q2");
    note(lambda);
    note(hamiltonian_poisson(lambda, h));
    return is_poisson(lambda).ok &&
           homogeneity_degree(lambda, delta) == DegreeResult::homogeneous(Rational(-1)) &&
           hamiltonian_poisson(lambda, h) == rotation;
}

// ---- 6: symplectic-to-contact reduction, both bracket routes ---------------

bool criterion_contact() {
    ChartPtr xt = make_chart({"x", "t"}, std::string("t"));
    HomogeneousSetup setup = HomogeneousSetup::product(xt);
    DiffForm omega = wedge(bform(xt, "t"), bform(xt, "x"));
    int bad = 0;
    check(homogeneity_degree(omega, setup.delta) == DegreeResult::homogeneous(Rational(1)),
          bad);
    Multivector lambda = invert_symplectic(omega);
    note(lambda);
    ContactData cd = contact_reduce(omega, setup);
    note(cd.eta);
    check(cd.eta == DiffForm::basis(setup.slice, "x"), bad);
    check(cd.d_eta == restrict_to_slice(omega, setup.t_index, setup.slice), bad);
    check(cd.reeb == Multivector::basis(setup.slice, "x"), bad);

    Rng g(pjtest::test_seed() + 106);
    ChartPtr line = setup.slice;
    for (int i = 0; i < 50; ++i) {
        Scalar f = pjtest::random_scalar(line, g), h = pjtest::random_scalar(line, g);
        Scalar contact_side = contact_bracket(cd, f, h);
        check(contact_side == f * h.derivative("x") - h * f.derivative("x"), bad);
        // the homogeneous route: lift with a degree-1 factor, bracket, restrict
        Scalar f_up = extend_to_product(f, setup) * setup.one_tilde;
        Scalar h_up = extend_to_product(h, setup) * setup.one_tilde;
        Scalar poisson_side = bracket_of_functions(lambda, {f_up, h_up})
                                  .specialize(setup.t_index, 1)
                                  .transplant(line, {0, -1});
        check(contact_side == poisson_side, bad);
    }
    return bad == 0;
}

// ---- 7: form-side reduction intertwines the differentials ------------------

bool criterion_form_naturality() {
    Rng g(pjtest::test_seed() + 107);
    ChartPtr chart = make_chart({"x", "y", "t"}, std::string("t"));
    HomogeneousSetup setup = HomogeneousSetup::product(chart);
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
        int k = rdeg(g, 0, 2);
        DiffForm a = pjtest::random_homog_form(setup, k, 1, g);
        ReducedPair ra = psi(a, setup);
        note(ra.pair);
        check(ra.homogeneous, bad);
        check(jacobi_differential(ra.pair) == psi(exterior_derivative(a), setup).pair, bad);
        check(jacobi_differential(psi_N(a, setup).pair) ==
                  psi_N(exterior_derivative(a), setup).pair,
              bad);
    }
    return bad == 0;
}

// ---- 8: iterated-bracket certification of decomposable tensors -------------

bool criterion_nambu() {
    int bad = 0;
    ChartPtr xyz = make_chart({"x", "y", "z"});
    Multivector p3 = wedge(wedge(bvec(xyz, "x"), bvec(xyz, "y")), bvec(xyz, "z"));
    check(nambu_check(p3).ok, bad);
    note(p3);

    ChartPtr six = make_chart({"x1", "x2", "x3", "x4", "x5", "x6"});
    Multivector sum = wedge(wedge(bvec(six, "x1"), bvec(six, "x2")), bvec(six, "x3")) +
                      wedge(wedge(bvec(six, "x4"), bvec(six, "x5")), bvec(six, "x6"));
    NambuReport bad_report = nambu_check(sum);
    check(!bad_report.ok && !bad_report.witness.empty(), bad);

    // the homogeneous passing tensor reduces to a passing operator
    ChartPtr chart = make_chart({"x", "y", "z", "t"}, std::string("t"));
    HomogeneousSetup setup = HomogeneousSetup::product(chart);
    Multivector hp = wedge(wedge(bvec(chart, "x"), bvec(chart, "y")), bvec(chart, "z")) *
                     var(chart, "t", -2);
    check(nambu_check(hp).ok, bad);
    ReducedOp jn = reduce_JN(hp, setup);
    check(jn.homogeneous && nambu_check(jn.op).ok, bad);
    note(jn.op);

    // validate the certifier against the raw Leibniz-form identity
    ChartPtr xy = make_chart({"x", "y"});
    for (const Multivector& candidate :
         {wedge(bvec(xy, "x"), bvec(xy, "y")),
          wedge(bvec(xy, "x"), bvec(xy, "y")) * (var(xy, "x") + Scalar::one(xy))}) {
        std::vector<Scalar> family = default_nambu_family(xy);
        bool fi = true;
        for (const auto& f : family)
            for (const auto& g1 : family)
                for (const auto& g2 : family)
                    fi = fi && pjtest::oracle::fundamental_identity_holds(candidate, {f},
                                                                          {g1, g2});
        check(nambu_check(candidate).ok == fi, bad);
    }
    return bad == 0;
}

// ---- 9: contact form on the circle at a rational point ---------------------

bool criterion_sphere_point() {
    ChartPtr qp = make_chart({"q", "p"});
    DiffForm eta =
        (bform(qp, "p") * var(qp, "q") - bform(qp, "q") * var(qp, "p")) * Rational(1, 2);
    note(eta);
    Point pt;
    pt.assignment = {{"q", Rational(3, 5)}, {"p", Rational(4, 5)}};
    Multivector tangent = bvec(qp, "q") * Rational(-4, 5) + bvec(qp, "p") * Rational(3, 5);
    return pairing(tangent, eval_at_point(eta, pt)) == Scalar::constant(qp, Rational(1, 2));
}

// ---- 10: surface syntax round trip and exit-code aggregation ---------------

std::string chart_decl_for(const ChartPtr& chart) {
    std::string s = "chart C (";
    for (std::size_t i = 0; i < chart->dim(); ++i) {
        if (i) s += ", ";
        s += chart->variables()[i];
    }
    s += ")";
    if (chart->homogeneity_variable()) s += " homog " + *chart->homogeneity_variable();
    return s + "\n";
}

ChartPtr chart_of(const pj::frontend::Value& v) {
    return std::visit(
        [](const auto& x) -> ChartPtr {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Scalar>) return x.chart();
            else return x.chart();
        },
        v);
}

bool criterion_frontend() {
    using namespace pj::frontend;
    int bad = 0;
    std::map<std::string, Session> sessions;
    for (const auto& v : produced) {
        std::string decl = chart_decl_for(chart_of(v));
        auto it = sessions.find(decl);
        if (it == sessions.end()) {
            Session s;
            for (const auto& st : parse_program(decl).statements) s.execute(st);
            it = sessions.emplace(decl, std::move(s)).first;
        }
        std::string text = print_canonical(v);
        check(print_canonical(it->second.eval_expression(text)) == text, bad);
    }

    auto read_file = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    std::string dir = PJ_GOLDEN_DIR;
    for (const std::string name : {"session_pass", "check_fail", "check_error"}) {
        std::string source = read_file(dir + "/" + name + ".pj");
        std::string expected = read_file(dir + "/" + name + ".out");
        int code = std::stoi(read_file(dir + "/" + name + ".code"));
        RunResult r = run_program(source, true);
        check(r.output == expected && r.exit_code == code, bad);
    }
    return bad == 0 && !produced.empty();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance suite"};
    app.add_option("--max-degree", max_degree, "cap on randomized tensor degree")
        ->check(CLI::Range(1, 4));
    CLI11_PARSE(app, argc, argv);

    struct Criterion {
        const char* name;
        std::function<bool()> run;
    };
    const Criterion criteria[] = {
        {"graded bracket axioms (multivector and operator variants)", criterion_bracket_axioms},
        {"exterior and deformed differentials square to zero", criterion_cohomology},
        {"reduction intertwines k-ary actions and brackets", criterion_reduction_identities},
        {"reduction and lifting are mutually inverse", criterion_bijectivity},
        {"canonical bivector: certificate, weight, rotation field", criterion_canonical_example},
        {"symplectic-to-contact reduction, both bracket routes", criterion_contact},
        {"form-side reduction intertwines the differentials", criterion_form_naturality},
        {"iterated-bracket certification and its reduction", criterion_nambu},
        {"circle contact form at a rational point", criterion_sphere_point},
        {"surface syntax round trip and exit codes", criterion_frontend},
    };

    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        bool ok = false;
        try {
            ok = c.run();
        } catch (const std::exception& e) {
            std::cout << "criterion " << (index + 1) << " threw: " << e.what() << "\n";
        }
        std::cout << (index + 1 < 10 ? " " : "") << (index + 1) << ". " << c.name << ": "
                  << (ok ? "pass" : "FAIL") << std::endl;
        if (!ok) ++failures;
        ++index;
    }
    return failures == 0 ? 0 : 1;
}
