#include "qub/error.hpp"
#include "qub/format.hpp"
#include "qub/unbraid.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace qub;

namespace {

Space so3(int copies, Sign sign = Sign::minus)
{
    SpaceSpec spec = qub::testing::space_spec(Family::so, 3, copies);
    spec.extended = true;
    spec.sign = sign;
    return build_quantum_space(spec);
}

const Space& so3_minus()
{
    static const Space s = so3(2);
    return s;
}

} // namespace

TEST_CASE("realization satisfies the exchange relation")
{
    const Space& s = so3_minus();
    PhiTable phi = build_phi_euclidean(s, Sign::minus);
    CHECK(phi.host_copy == 1);
    CHECK(phi.shape == Triangularity::lower);
    auto rep = verify_phi_exchange(phi, s);
    CHECK(rep.checks == 45);
    CHECK(rep.pass());
    // other readings of the coefficient tensor fail
    for (auto arr : {ExchangeArrangement::slice_transposed, ExchangeArrangement::slice_inverse_matrix,
                     ExchangeArrangement::slice_factor_swapped}) {
        CAPTURE(to_string(arr));
        CHECK_FALSE(verify_phi_exchange(phi, s, arr).pass());
    }
}

TEST_CASE("golden N = 3 formulas")
{
    const Space& s = so3_minus();
    PhiTable phi = build_phi_euclidean(s, Sign::minus);
    auto im = chi_images(phi, s, 2);
    Reducer red(s.algebra);
    Scalar q = s.ctx.q(), h = s.ctx.h(), sq = s.ctx.sqrt_q(), one(1L), g1 = Scalar::param("gamma1");
    auto X = [&](int i) { return s.x(2, i); };
    auto Y = [&](int i) { return s.x(1, i); };
    NCPoly gold_minus = (s.r(1, 1) * s.x0inv(1) * X(-1)).scaled(-(q * h * g1));
    NCPoly gold_zero = X(0) + (s.x0inv(1) * Y(1) * X(-1)).scaled(sq * (q + one));
    NCPoly gold_plus = (s.rinv(1, 1) * s.x0inv(1) * Y(1) * Y(1) * X(-1)).scaled(sq * (q + one) / (h * g1)) +
                       (s.rinv(1, 1) * Y(1) * X(0)).scaled((q.inverse() + one) / (h * g1)) -
                       (s.rinv(1, 1) * Y(0) * X(1)).scaled((q * h * g1).inverse());
    CHECK(red.normal_form(gold_minus - im.of({2, GenKind::x, -1})).is_zero());
    CHECK(red.normal_form(gold_zero - im.of({2, GenKind::x, 0})).is_zero());
    CHECK(red.normal_form(gold_plus - im.of({2, GenKind::x, 1})).is_zero());
    // a wrong coefficient is noticed
    CHECK_FALSE(red.normal_form(gold_minus.scaled(q) - im.of({2, GenKind::x, -1})).is_zero());
}

TEST_CASE("decoupled generators commute with the fixed copy")
{
    const Space& s = so3_minus();
    PhiTable phi = build_phi_euclidean(s, Sign::minus);
    auto im = chi_images(phi, s, 2);
    Reducer red(s.algebra);
    std::vector<NCPoly> y;
    for (int i : s.scheme.indices()) {
        y.push_back(im.of({2, GenKind::x, i}));
        for (int j : s.scheme.indices()) {
            CAPTURE(i);
            CAPTURE(j);
            CHECK(red.commutator(y.back(), s.x(1, j)).is_zero());
        }
    }
    for (const auto& rel : antisymmetrizer_relations(s, y)) CHECK(red.normal_form(rel).is_zero());
    auto rep = verify_unbraiding(phi, s);
    CHECK(rep.pass());
    CHECK(rep.injective);
}

TEST_CASE("plus braiding decouples with the host in the last copy")
{
    Space s = so3(2, Sign::plus);
    PhiTable phi = build_phi_euclidean(s, Sign::plus);
    CHECK(phi.host_copy == 2);
    CHECK(phi.shape == Triangularity::upper);
    CHECK(verify_phi_exchange(phi, s).pass());
    CHECK(verify_unbraiding(phi, s).pass());
    CHECK_THROWS_AS(chi_images(phi, s, 2), UsageError);
}

TEST_CASE("gamma assignment")
{
    const Space& s = so3_minus();
    std::map<std::string, Scalar> assign{{"gamma1", s.ctx.q_pow(-1, 2)}};
    PhiTable phi = build_phi_euclidean(s, Sign::minus, assign);
    CHECK(verify_unbraiding(phi, s).pass());
    CHECK_THROWS_AS(build_phi_euclidean(s, Sign::minus, {{"gamma7", Scalar(1L)}}), UsageError);
    CHECK_THROWS_AS(build_phi_euclidean(s, Sign::minus, {{"gamma1", Scalar(0L)}}), DegenerateError);
}

TEST_CASE("star structure and reality of the decoupled generators")
{
    const Space& s = so3_minus();
    CHECK(verify_star_structure(s, BarTable{}).pass());
    for (Sign sign : {Sign::minus, Sign::plus}) {
        Space sp = sign == Sign::minus ? so3_minus() : so3(2, Sign::plus);
        CAPTURE(to_string(sign));
        CHECK(verify_star_chi(build_phi_euclidean(sp, sign), sp).pass());
        CHECK_FALSE(verify_star_chi(build_phi_euclidean(sp, sign, {}, RealityChoice::trivial), sp).pass());
    }
    CHECK_FALSE(verify_star_chi(build_phi_euclidean(s, Sign::minus, {}, RealityChoice::literal), s).pass());
}

TEST_CASE("star on Heisenberg algebras picks the derivative sign")
{
    for (int eps : {1, -1}) {
        SpaceSpec spec = qub::testing::space_spec(Family::so, 3);
        spec.kind = AlgebraKind::heisenberg;
        spec.epsilon = eps;
        Space s = build_space(spec);
        auto rep = verify_star_structure(s, BarTable{});
        CHECK(rep.pass());
        CHECK(rep.derivative_sign == eps);
    }
    SpaceSpec sl = qub::testing::space_spec(Family::sl, 2);
    sl.kind = AlgebraKind::heisenberg;
    CHECK_THROWS_AS(verify_star_structure(build_space(sl), BarTable{}), UsageError);
}

TEST_CASE("star is an involutive antihomomorphism on random elements")
{
    const Space& s = so3_minus();
    BarTable bar = reality_declarations(Sign::minus, 3, s.ctx, RealityChoice::consistent);
    StarStructure star{&s, bar, 1};
    Reducer red(s.algebra);
    qub::testing::Gen g(11);
    for (int it = 0; it < 20; ++it) {
        NCPoly a = g.poly(s.algebra.generators(), 2, 3), b = g.poly(s.algebra.generators(), 2, 2);
        CHECK(red.normal_form(star.apply(star.apply(a)) - a).is_zero());
        CHECK(red.normal_form(star.apply(red.multiply(a, b)) - red.multiply(star.apply(b), star.apply(a))).is_zero());
    }
}

TEST_CASE("three-copy recursion")
{
    for (Sign sign : {Sign::minus, Sign::plus}) {
        CAPTURE(to_string(sign));
        SpaceSpec spec = qub::testing::space_spec(Family::so, 3, 3);
        spec.sign = sign;
        auto res = unbraid_iterate(spec);
        REQUIRE(res.steps.size() == 2);
        CHECK(res.report.pass());
        for (const auto& st : res.steps) CHECK(st.radius_preserved);
        CHECK(res.steps[0].fixed_copy == (sign == Sign::minus ? 1 : 3));
        CHECK(res.steps[1].fixed_copy == 2);
    }
    SpaceSpec one = qub::testing::space_spec(Family::so, 3, 1);
    CHECK(unbraid_iterate(one).steps.empty());
}

TEST_CASE("even N has no realization")
{
    SpaceSpec spec = qub::testing::space_spec(Family::so, 4, 2);
    Space s = build_quantum_space(spec);
    CHECK_THROWS_AS(build_phi_euclidean(s, Sign::minus), UsageError);
}

TEST_CASE("phi table text round trip")
{
    const Space& s = so3_minus();
    PhiTable phi = build_phi_euclidean(s, Sign::minus);
    std::string text = write_phi_table(phi, s);
    PhiTable back = parse_phi_table(text, s);
    CHECK(back.host_copy == phi.host_copy);
    CHECK(back.shape == phi.shape);
    for (int i : s.scheme.indices())
        for (int j : s.scheme.indices()) {
            CAPTURE(i);
            CAPTURE(j);
            CHECK(normal_form(back.image(i, j) - phi.image(i, j), s.algebra).is_zero());
            CHECK(normal_form(back.antipode_image(i, j) - phi.antipode_image(i, j), s.algebra).is_zero());
        }
    CHECK(write_phi_table(back, s) == text);
    CHECK(verify_unbraiding(back, s).pass());
}

TEST_CASE("phi table parse errors")
{
    const Space& s = so3_minus();
    CHECK_THROWS_AS(parse_phi_table("sign minus\nfamily so\nn 3\nhost 1\nimage 0 0 = 1 + gamma9\n", s), UsageError);
    CHECK_THROWS_AS(parse_phi_table("sign minus\nfamily so\nn 3\nhost 7\n", s), UsageError);
    CHECK_THROWS_AS(parse_phi_table("sign minus\nfamily so\nn 3\nhost 1\nimage 0 0 = 1\nimage 0 0 = 1\n", s),
                    UsageError);
    CHECK_THROWS_AS(parse_expression("x[1,0]*/2", s), UsageError);
    CHECK_THROWS_AS(parse_expression("x[1,0]/x[1,1]", s), UsageError);
}

TEST_CASE("expression parser on random polynomials")
{
    const Space& s = so3_minus();
    qub::testing::Gen g(5);
    for (int it = 0; it < 30; ++it) {
        NCPoly p = g.poly(s.algebra.generators(), 3, 3);
        CHECK(parse_expression(format_text(p, s.algebra, s.ctx), s) == p);
    }
    CHECK(parse_expression("q^(1/2)*r[1,1]*x0inv", s) == (s.r(1, 1) * s.x0inv(1)).scaled(s.ctx.sqrt_q()));
    CHECK(parse_expression("x[2,-]*x[2,+]", s) == s.x(2, -1) * s.x(2, 1));
}
