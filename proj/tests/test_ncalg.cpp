#include "qub/error.hpp"
#include "qub/ncalg.hpp"
#include "qub/spaces.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace qub;
using qub::testing::Gen;

namespace {

// x y = q y x over one copy: generators x = x[1,1], y = x[1,2]
AlgebraPresentation quantum_plane(const Scalar& q)
{
    Generator x{1, GenKind::x, 1}, y{1, GenKind::x, 2};
    AlgebraPresentation a({x, y}, {"plane", 1, false});
    // y is larger than x in the order; the rule rewrites y x
    a.add_rules({{Word{encode(y), encode(x)}, NCPoly::word(Word{encode(x), encode(y)}, q.inverse())}});
    return a;
}

} // namespace

TEST_CASE("word encoding round trip")
{
    for (int c = 1; c <= 4; ++c)
        for (GenKind k : {GenKind::rad, GenKind::rinv, GenKind::xinv, GenKind::x, GenKind::d})
            for (int i = -3; i <= 3; ++i) {
                Generator g{c, k, i};
                CHECK(decode(encode(g)) == g);
            }
    CHECK(token({2, GenKind::x, -1}) == "x[2,-1]");
    CHECK(token({1, GenKind::rinv, 1}) == "rinv[1,1]");
}

TEST_CASE("quantum plane normal forms")
{
    QContext ctx(2);
    Scalar q = ctx.q();
    auto a = quantum_plane(q);
    Generator x{1, GenKind::x, 1}, y{1, GenKind::x, 2};
    Reducer red(a);
    // y^2 x = q^-2 x y^2
    Word w{encode(y), encode(y), encode(x)};
    CHECK(red.normal_form(w) == NCPoly::word(Word{encode(x), encode(y), encode(y)}, q.inverse() * q.inverse()));
    CHECK(red.commutator(NCPoly::gen(x), NCPoly::gen(y), q.inverse()).is_zero() == false);
    CHECK(red.commutator(NCPoly::gen(y), NCPoly::gen(x), q.inverse()).is_zero());
    CHECK(overlap_confluence_check(a, 4).pass());
    for (int d = 0; d <= 6; ++d) CHECK(hilbert_count(a, d) == static_cast<std::uint64_t>(d + 1));
}

TEST_CASE("rules must decrease")
{
    Generator x{1, GenKind::x, 1}, y{1, GenKind::x, 2};
    AlgebraPresentation a({x, y}, {"bad", 1, false});
    CHECK_THROWS_AS(a.add_rules({{Word{encode(x), encode(y)}, NCPoly::word(Word{encode(y), encode(x)})}}),
                    ConsistencyError);
}

TEST_CASE("relations forcing 1 = 0 are degenerate")
{
    Generator x{1, GenKind::x, 1};
    AlgebraPresentation a({x}, {"one", 1, false});
    CHECK_THROWS_AS(derive_rewrite_rules({NCPoly::constant(Scalar(1L))}, a), DegenerateError);
}

TEST_CASE("step budget is enforced")
{
    QContext ctx(2);
    auto a = quantum_plane(ctx.q());
    Generator x{1, GenKind::x, 1}, y{1, GenKind::x, 2};
    Reducer red(a, 3);
    Word w;
    for (int i = 0; i < 6; ++i) w.push_back(encode(y));
    for (int i = 0; i < 6; ++i) w.push_back(encode(x));
    CHECK_THROWS_AS(red.normal_form(w), BudgetExceeded);
}

TEST_CASE("corrupted coefficient breaks confluence")
{
    Space s = build_quantum_space(qub::testing::space_spec(Family::so, 3));
    REQUIRE(overlap_confluence_check(s.algebra, 3).pass());
    std::vector<Rule> rules = s.algebra.rules();
    // x^- x^0 -> q x^0 x^- becomes q^2 x^0 x^-; the overlap x^+ x^- x^0 then
    // leaves c (1 - q) (x^0)^3 behind
    Word target{encode({1, GenKind::x, -1}), encode({1, GenKind::x, 0})};
    bool changed = false;
    for (auto& r : rules) {
        if (r.lhs != target) continue;
        r.rhs = r.rhs.scaled(s.ctx.q());
        changed = true;
    }
    REQUIRE(changed);
    AlgebraPresentation bad = s.algebra;
    bad.set_rules(rules);
    auto rep = overlap_confluence_check(bad, 3);
    REQUIRE_FALSE(rep.pass());
    CHECK(rep.ambiguities > 0);
    CHECK_FALSE(rep.residuals.front().residual.is_zero());
}

TEST_CASE("normal form properties on random polynomials")
{
    SpaceSpec spec = qub::testing::space_spec(Family::so, 3, 2);
    spec.extended = true;
    Space s = build_quantum_space(spec);
    const auto& alphabet = s.algebra.generators();
    Reducer red(s.algebra);
    for (unsigned seed = 1; seed <= 25; ++seed) {
        CAPTURE(seed);
        Gen g(seed);
        NCPoly a = g.poly(alphabet, 3, 3), b = g.poly(alphabet, 2, 3), c = g.poly(alphabet, 2, 2);
        NCPoly na = red.normal_form(a);
        // idempotent and every word normal
        CHECK(red.normal_form(na) == na);
        for (const auto& [w, cf] : na.terms()) CHECK(red.is_normal(w));
        // linear
        Scalar t = g.scalar();
        CHECK(red.normal_form(a.scaled(t) + b) == na.scaled(t) + red.normal_form(b));
        // associative
        CHECK(red.multiply(red.multiply(a, b), c) == red.multiply(a, red.multiply(b, c)));
        // leading word is maximal
        if (!a.is_zero()) {
            Word lead = s.algebra.leading_word(a);
            for (const auto& [w, cf] : a.terms()) CHECK(s.algebra.compare(w, lead) <= 0);
        }
    }
}

TEST_CASE("word order is a total order compatible with concatenation")
{
    Space s = build_quantum_space(qub::testing::space_spec(Family::so, 3, 3));
    const auto& alphabet = s.algebra.generators();
    Gen g(7);
    for (int iter = 0; iter < 300; ++iter) {
        Word u = g.word(alphabet, 1, 4), v = g.word(alphabet, 1, 4), w = g.word(alphabet, 0, 3);
        int c = s.algebra.compare(u, v);
        CHECK(c == -s.algebra.compare(v, u));
        if (u.size() != v.size()) continue;
        Word wu = w, wv = w;
        wu.insert(wu.end(), u.begin(), u.end());
        wv.insert(wv.end(), v.begin(), v.end());
        CHECK(s.algebra.compare(wu, wv) == c);
        Word uw = u, vw = v;
        uw.insert(uw.end(), w.begin(), w.end());
        vw.insert(vw.end(), w.begin(), w.end());
        CHECK(s.algebra.compare(uw, vw) == c);
    }
}

TEST_CASE("triangular inverse of a monomial matrix")
{
    SpaceSpec spec = qub::testing::space_spec(Family::so, 3);
    spec.extended = true;
    Space s = build_quantum_space(spec);
    Reducer red(s.algebra);
    NCPoly x0 = s.x(1, 0), xm = s.x(1, -1);
    PolyMatrix t{{x0, NCPoly()}, {xm, s.r(1, 1)}};
    auto inv = triangular_inverse(t, red);
    CHECK(inv.shape == Triangularity::lower);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            NCPoly sum;
            for (int k = 0; k < 2; ++k) sum += red.multiply(t[i][k], inv.inverse[k][j]);
            CHECK(sum == (i == j ? NCPoly::constant(Scalar(1L)) : NCPoly()));
        }
    PolyMatrix singular{{xm, NCPoly()}, {x0, x0}};
    CHECK_THROWS_AS(triangular_inverse(singular, red), DegenerateError);
}
