// Acceptance run: one PASS/FAIL line per criterion. Every comparison is
// exact (residuals must normalize to zero); the only tolerances are the
// wall-clock budgets below.

#include "qub/error.hpp"
#include "qub/unbraid.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace qub;
using qub::testing::enumerate_model;
using qub::testing::space_spec;

namespace {

constexpr double kPerRunSeconds = 60.0;        // criteria 1-5, 7, 9, 10: each run
constexpr double kSingleStepSeconds = 300.0;   // criterion 6
constexpr double kRecursionSeconds = 900.0;    // criterion 8
constexpr int kConfluenceDegree = 3;
constexpr int kHilbertMaxDegree = 4;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void fail(const std::string& why)
    {
        pass = false;
        detail << " [" << why << "]";
    }
    void require(bool ok, const std::string& why)
    {
        if (!ok) fail(why);
    }
};

struct FamilyN {
    Family family;
    int n;
    std::string label() const { return to_string(family) + "(" + std::to_string(n) + ")"; }
};

const FamilyN kBasic[] = {{Family::sl, 2}, {Family::sl, 3}, {Family::so, 3}, {Family::so, 4}};

// ---------------------------------------------------------------- 1-3

void braid(Outcome& o)
{
    for (const auto& c : kBasic) {
        auto t0 = Clock::now();
        QContext ctx(c.n);
        auto r = build_rhat(IndexScheme::make(c.family, c.n), ctx);
        o.require(yang_baxter_residual(r).is_zero(), c.label() + " nonzero residual");
        double t = seconds_since(t0);
        o.require(t < kPerRunSeconds, c.label() + " over time");
        o.detail << " " << c.label() << " " << t << "s";
    }
}

void minimal_polynomial(Outcome& o)
{
    for (const auto& c : kBasic) {
        QContext ctx(c.n);
        auto scheme = IndexScheme::make(c.family, c.n);
        auto r = build_rhat(scheme, ctx);
        auto id = TensorOperator::identity(scheme);
        Scalar q = ctx.q();
        TensorOperator res(scheme);
        if (c.family == Family::sl) {
            TensorOperator rn = r.scaled(ctx.q_pow(1, c.n));
            res = (rn - id.scaled(q)) * (rn + id.scaled(q.inverse()));
        } else {
            res = (r - id.scaled(q)) * (r + id.scaled(q.inverse())) * (r - id.scaled(ctx.q_pow(1 - c.n)));
        }
        o.require(res.is_zero(), c.label() + " nonzero");
        o.detail << " " << c.label();
    }
}

void projectors(Outcome& o)
{
    for (int n : {3, 4}) {
        QContext ctx(n);
        auto scheme = IndexScheme::make(Family::so, n);
        auto r = build_rhat(scheme, ctx);
        auto p = build_projectors(r, ctx);
        std::string lab = "so(" + std::to_string(n) + ")";
        if (!p.trace || !p.lambda_trace) {
            o.fail(lab + " no trace projector");
            continue;
        }
        const TensorOperator* ps[] = {&p.sym, &p.antisym, &*p.trace};
        auto id = TensorOperator::identity(scheme);
        TensorOperator sum(scheme);
        for (int a = 0; a < 3; ++a) {
            sum = sum + *ps[a];
            for (int b = 0; b < 3; ++b) {
                TensorOperator prod = *ps[a] * *ps[b];
                if (a == b) o.require(prod == *ps[a], lab + " not idempotent");
                else o.require(prod.is_zero(), lab + " not orthogonal");
            }
        }
        o.require(sum == id, lab + " incomplete");
        // eigenvalues q, -1/q, q^{1-N} on S, A, T
        Scalar q = ctx.q();
        o.require(p.lambda_sym == q && p.lambda_antisym == -q.inverse() && *p.lambda_trace == ctx.q_pow(1 - n),
                  lab + " eigenvalues");
        TensorOperator rec = p.sym.scaled(q) + p.antisym.scaled(-q.inverse()) + p.trace->scaled(ctx.q_pow(1 - n));
        o.require(rec == r, lab + " reconstruction");
        o.require(trace_projector_from_metric(build_metric(scheme, ctx), ctx) == *p.trace, lab + " P_t from metric");
        o.detail << " " << lab;
    }
}

// ---------------------------------------------------------------- 4-5

struct AlgebraCase {
    std::string label;
    SpaceSpec spec;
    int free_letters, laurent, pairs;  // commutative model
};

std::vector<AlgebraCase> criterion4_algebras()
{
    std::vector<AlgebraCase> out;
    for (int m = 1; m <= 3; ++m) out.push_back({"R_q^3 M=" + std::to_string(m), space_spec(Family::so, 3, m), 3 * m, 0, 0});
    SpaceSpec e = space_spec(Family::so, 3);
    e.extended = true;
    out.push_back({"extended R_q^3", e, 0, 2, 1});
    SpaceSpec sph = e;
    sph.sphere = true;
    out.push_back({"S_q^2", sph, 0, 1, 1});
    for (int m = 1; m <= 2; ++m)
        for (int eps : {1, -1}) {
            SpaceSpec h = space_spec(Family::sl, 2, m);
            h.kind = AlgebraKind::heisenberg;
            h.epsilon = eps;
            out.push_back({"Heis sl(2) eps=" + std::to_string(eps) + " M=" + std::to_string(m), h, 4 * m, 0, 0});
        }
    return out;
}

void confluence(Outcome& o)
{
    for (const auto& c : criterion4_algebras()) {
        auto t0 = Clock::now();
        Space s = build_space(c.spec);
        auto rep = overlap_confluence_check(s.algebra, kConfluenceDegree);
        o.require(rep.pass(), c.label + " unresolved ambiguity");
        o.require(seconds_since(t0) < kPerRunSeconds, c.label + " over time");
        o.detail << " " << c.label << ":" << rep.ambiguities;
    }
    // negative control: x^- x^0 -> q x^0 x^- corrupted to q^2 x^0 x^-
    Space s = build_space(space_spec(Family::so, 3));
    auto rules = s.algebra.rules();
    Word target{encode({1, GenKind::x, -1}), encode({1, GenKind::x, 0})};
    for (auto& r : rules)
        if (r.lhs == target) r.rhs = r.rhs.scaled(s.ctx.q());
    AlgebraPresentation bad = s.algebra;
    bad.set_rules(rules);
    auto rep = overlap_confluence_check(bad, kConfluenceDegree);
    o.require(!rep.pass(), "corrupted coefficient not detected");
    o.detail << "; corrupted control: " << rep.residuals.size() << " nonzero residual(s)";
}

void hilbert(Outcome& o)
{
    for (const auto& c : criterion4_algebras()) {
        Space s = build_space(c.spec);
        for (int d = 0; d <= kHilbertMaxDegree; ++d) {
            std::uint64_t got = hilbert_count(s.algebra, d), want = enumerate_model(c.free_letters, c.laurent, c.pairs, d);
            if (got != want) o.fail(c.label + " d=" + std::to_string(d) + ": " + std::to_string(got) + " vs " +
                                    std::to_string(want));
        }
    }
    Space s = build_space(space_spec(Family::so, 3, 2));
    o.detail << " M=2 N=3: d=2 " << hilbert_count(s.algebra, 2) << ", d=3 " << hilbert_count(s.algebra, 3);
    o.require(hilbert_count(s.algebra, 2) == 21 && hilbert_count(s.algebra, 3) == 56, "M=2 N=3 counts");
}

// ---------------------------------------------------------------- 6-9

Space so3_extended(int copies, Sign sign = Sign::minus)
{
    SpaceSpec spec = space_spec(Family::so, 3, copies);
    spec.extended = true;
    spec.sign = sign;
    return build_quantum_space(spec);
}

void single_step(Outcome& o)
{
    auto t0 = Clock::now();
    Space s = so3_extended(2);
    PhiTable phi = build_phi_euclidean(s, Sign::minus);
    auto im = chi_images(phi, s, 2);
    Reducer red(s.algebra);
    int zero = 0;
    std::vector<NCPoly> y;
    for (int i : s.scheme.indices()) {
        y.push_back(im.of({2, GenKind::x, i}));
        for (int j : s.scheme.indices()) zero += red.commutator(y.back(), s.x(1, j)).is_zero() ? 1 : 0;
    }
    o.require(zero == 9, std::to_string(9 - zero) + " nonzero commutators");
    int anti = 0;
    for (const auto& rel : antisymmetrizer_relations(s, y)) {
        ++anti;
        o.require(red.normal_form(rel).is_zero(), "P_a y y nonzero");
    }
    auto rep = verify_unbraiding(phi, s);
    o.require(rep.pass(), "unbraiding checks");
    o.require(rep.injective, "not injective");
    double t = seconds_since(t0);
    o.require(t < kSingleStepSeconds, "over time");
    o.detail << " 9 commutators zero: " << zero << "/9, P_a yy: " << anti << " relations, injective, " << t << "s";
}

void golden(Outcome& o)
{
    Space s = so3_extended(2);
    PhiTable phi = build_phi_euclidean(s, Sign::minus);
    auto im = chi_images(phi, s, 2);
    Reducer red(s.algebra);
    Scalar q = s.ctx.q(), h = s.ctx.h(), one(1L), g1 = Scalar::param("gamma1");
    Scalar sq = s.ctx.sqrt_q();
    auto X = [&](int i) { return s.x(2, i); };
    auto Y = [&](int i) { return s.x(1, i); };
    NCPoly r = s.r(1, 1), ri = s.rinv(1, 1), x0i = s.x0inv(1);
    NCPoly gold[3] = {
        (r * x0i * X(-1)).scaled(-(q * h * g1)),
        X(0) + (x0i * Y(1) * X(-1)).scaled(sq * (q + one)),
        (ri * x0i * Y(1) * Y(1) * X(-1)).scaled(sq * (q + one) / (h * g1)) +
            (ri * Y(1) * X(0)).scaled((q.inverse() + one) / (h * g1)) - (ri * Y(0) * X(1)).scaled((q * h * g1).inverse()),
    };
    const char* names[3] = {"y^{2,-}", "y^{2,0}", "y^{2,+}"};
    int k = 0;
    for (int i : {-1, 0, 1}) {
        bool ok = red.normal_form(gold[k] - im.of({2, GenKind::x, i})).is_zero();
        o.require(ok, std::string(names[k]) + " differs");
        o.detail << " " << names[k] << (ok ? " ok" : " differs");
        ++k;
    }
}

void recursion(Outcome& o)
{
    auto t0 = Clock::now();
    SpaceSpec spec = space_spec(Family::so, 3, 3);
    auto res = unbraid_iterate(spec);
    o.require(res.steps.size() == 2, "expected two steps");
    for (const auto& st : res.steps) {
        o.require(st.report.pass(), "step " + std::to_string(st.step) + " failed");
        o.require(st.report.residual_braiding_failures.empty(), "residual braiding mismatch");
        o.require(st.radius_preserved, "radius changed");
        o.detail << " step " << st.step << " fixes copy " << st.fixed_copy << " (" << st.report.checks << " checks)";
    }
    double t = seconds_since(t0);
    o.require(t < kRecursionSeconds, "over time");
    o.detail << ", families: copy 1, decoupled copy 2, decoupled copy 3; " << t << "s";
}

void star(Outcome& o)
{
    Space s = so3_extended(2);
    auto st = verify_star_structure(s, BarTable{});
    o.require(st.involutive, "not involutive");
    o.require(st.relations_preserved, "relations not preserved");
    for (Sign sign : {Sign::minus, Sign::plus}) {
        Space sp = sign == Sign::minus ? s : so3_extended(2, Sign::plus);
        auto ok = verify_star_chi(build_phi_euclidean(sp, sign), sp);
        o.require(ok.pass(), "y not self-adjoint (" + to_string(sign) + ")");
        auto neg = verify_star_chi(build_phi_euclidean(sp, sign, {}, RealityChoice::trivial), sp);
        o.require(!neg.pass(), "violated declaration not detected (" + to_string(sign) + ")");
        o.detail << " " << to_string(sign) << ": self-adjoint, violated control " << neg.relation_failures.size()
                 << " failure(s);";
    }
    auto lit = verify_star_chi(build_phi_euclidean(s, Sign::minus, {}, RealityChoice::literal), s);
    o.detail << " bar(gamma)=-q^-2 gamma: " << (lit.pass() ? "passes" : "fails") << " (inconsistent with gamma products)";
}

// ---------------------------------------------------------------- 10

void classical(Outcome& o)
{
    for (const auto& c : kBasic) {
        QContext ctx(c.n);
        auto scheme = IndexScheme::make(c.family, c.n);
        auto r = build_rhat(scheme, ctx);
        for (int i : scheme.indices())
            for (int j : scheme.indices())
                for (int h : scheme.indices())
                    for (int k : scheme.indices()) {
                        auto v = eval_classical(r.at(i, j, h, k));
                        if (v.pole || v.value != Scalar((i == k && j == h) ? 1L : 0L))
                            o.fail(c.label() + " R-hat not the flip");
                    }
    }
    // every rule's classical value: commutative, with d_i x^i = x^i d_i + 1
    SpaceSpec sl_heis = space_spec(Family::sl, 2);
    sl_heis.kind = AlgebraKind::heisenberg;
    SpaceSpec so_heis = space_spec(Family::so, 3);
    so_heis.kind = AlgebraKind::heisenberg;
    std::vector<SpaceSpec> specs = {space_spec(Family::sl, 3, 2), space_spec(Family::so, 4), space_spec(Family::so, 3, 2),
                                    sl_heis, so_heis};
    int rules = 0, mixed = 0;
    for (const auto& sp : specs) {
        Space s = build_space(sp);
        for (const auto& rule : s.algebra.rules()) {
            std::map<Word, Scalar> diff;
            for (const auto& [w, cf] : rule.rhs.terms()) {
                auto v = eval_classical(cf);
                if (v.pole) o.fail("pole in a rule");
                Word key = w;
                std::sort(key.begin(), key.end());
                diff[key] += v.value;
            }
            Word key = rule.lhs;
            std::sort(key.begin(), key.end());
            diff[key] -= Scalar(1L);
            Generator a = decode(rule.lhs[0]), b = decode(rule.lhs[1]);
            if (a.kind == GenKind::d && b.kind == GenKind::x && a.copy == b.copy && a.index == b.index) {
                diff[Word{}] -= Scalar(1L);
                ++mixed;
            }
            ++rules;
            for (const auto& [w, v] : diff)
                if (!v.is_zero()) o.fail(s.algebra.info().label + " rule not classical");
        }
    }
    Scalar g0 = -(QContext(3).q_pow(-1, 2) * QContext(3).h().inverse());
    auto v = eval_classical(g0);
    o.require(v.pole, "gamma_0 has no pole");
    o.detail << " R-hat -> flip for 4 families; " << rules << " rules commutative (" << mixed
             << " of the form d x = 1 + x d); gamma_0: pole of order " << v.pole_order;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* title;
        std::function<void(Outcome&)> run;
    };
    const Criterion criteria[] = {
        {1, "braid relation, sl(2) sl(3) so(3) so(4)", braid},
        {2, "minimal polynomials", minimal_polynomial},
        {3, "projector suite so(3) so(4)", projectors},
        {4, "confluence to degree 3 with corrupted-coefficient control", confluence},
        {5, "normal words against the commutative count, d <= 4", hilbert},
        {6, "N=3 M=2 single step: commutators, P_a y y, injectivity", single_step},
        {7, "golden N=3 formulas", golden},
        {8, "N=3 M=3 full recursion", recursion},
        {9, "star structure and self-adjoint decoupled generators", star},
        {10, "classical limit", classical},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << ":" << o.detail.str() << "\n"
                  << std::flush;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
    return failed ? 1 : 0;
}
