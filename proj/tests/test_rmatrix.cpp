#include "qub/error.hpp"
#include "qub/rmatrix.hpp"

#include <doctest.h>

using namespace qub;

namespace {

struct Case {
    Family family;
    int n;
};

const Case kCases[] = {{Family::sl, 2}, {Family::sl, 3}, {Family::so, 3}, {Family::so, 4}};

long rank_of(const TensorOperator& p)
{
    auto r = p.matrix().trace().as_rational();
    REQUIRE(r.has_value());
    REQUIRE(r->get_den() == 1);
    return r->get_num().get_si();
}

} // namespace

TEST_CASE("braid relation and minimal polynomial")
{
    for (const auto& c : kCases) {
        CAPTURE(c.n);
        QContext ctx(c.n);
        auto scheme = IndexScheme::make(c.family, c.n);
        auto r = build_rhat(scheme, ctx);
        CHECK(yang_baxter_residual(r).is_zero());
        CHECK(minimal_polynomial_residual(r, ctx).is_zero());
    }
}

TEST_CASE("projector algebra")
{
    for (const auto& c : kCases) {
        CAPTURE(c.n);
        QContext ctx(c.n);
        auto scheme = IndexScheme::make(c.family, c.n);
        auto r = build_rhat(scheme, ctx);
        auto p = build_projectors(r, ctx);
        std::vector<TensorOperator> ps{p.sym, p.antisym};
        if (p.trace) ps.push_back(*p.trace);
        auto id = TensorOperator::identity(scheme);
        TensorOperator sum(scheme);
        for (std::size_t a = 0; a < ps.size(); ++a) {
            sum = sum + ps[a];
            for (std::size_t b = 0; b < ps.size(); ++b) {
                if (a == b) CHECK(ps[a] * ps[b] == ps[a]);
                else CHECK((ps[a] * ps[b]).is_zero());
            }
        }
        CHECK(sum == id);
        TensorOperator rec = p.sym.scaled(p.lambda_sym) + p.antisym.scaled(p.lambda_antisym);
        if (p.trace) rec = rec + p.trace->scaled(*p.lambda_trace);
        CHECK(rec == normalized_rhat(r, ctx));
    }
}

TEST_CASE("projector ranks")
{
    QContext c2(2);
    auto p2 = build_projectors(build_rhat(IndexScheme::make(Family::sl, 2), c2), c2);
    CHECK(rank_of(p2.antisym) == 1);
    CHECK(rank_of(p2.sym) == 3);

    QContext c3(3);
    auto p3 = build_projectors(build_rhat(IndexScheme::make(Family::so, 3), c3), c3);
    CHECK(rank_of(p3.sym) == 5);
    CHECK(rank_of(p3.antisym) == 3);
    CHECK(rank_of(*p3.trace) == 1);

    QContext c4(4);
    auto p4 = build_projectors(build_rhat(IndexScheme::make(Family::so, 4), c4), c4);
    CHECK(rank_of(p4.sym) == 9);
    CHECK(rank_of(p4.antisym) == 6);
    CHECK(rank_of(*p4.trace) == 1);
}

TEST_CASE("metric")
{
    QContext ctx(3);
    auto scheme = IndexScheme::make(Family::so, 3);
    auto g = build_metric(scheme, ctx);
    CHECK(g.g_lower(-1, 1) == ctx.q_pow(-1, 2));
    CHECK(g.g_lower(0, 0) == Scalar(1L));
    CHECK(g.g_lower(1, -1) == ctx.q_pow(1, 2));
    CHECK(g.trace_norm() == ctx.q() + Scalar(1L) + ctx.q_pow(-1));
    for (int i : scheme.indices())
        for (int j : scheme.indices()) {
            auto v = eval_classical(g.g_lower(i, j));
            CHECK(v.value == Scalar(i == -j ? 1L : 0L));
        }
    CHECK_THROWS_AS(build_metric(IndexScheme::make(Family::sl, 2), QContext(2)), UsageError);
}

TEST_CASE("trace projector from the metric equals the spectral one")
{
    for (int n : {3, 4}) {
        QContext ctx(n);
        auto scheme = IndexScheme::make(Family::so, n);
        auto p = build_projectors(build_rhat(scheme, ctx), ctx);
        auto pt = trace_projector_from_metric(build_metric(scheme, ctx), ctx);
        CHECK(pt == *p.trace);
        CHECK(pt * pt == pt);
    }
}

TEST_CASE("classical limit of R-hat is the flip")
{
    for (const auto& c : kCases) {
        QContext ctx(c.n);
        auto scheme = IndexScheme::make(c.family, c.n);
        auto r = build_rhat(scheme, ctx);
        for (int i : scheme.indices())
            for (int j : scheme.indices())
                for (int h : scheme.indices())
                    for (int k : scheme.indices()) {
                        auto v = eval_classical(r.at(i, j, h, k));
                        CHECK_FALSE(v.pole);
                        CHECK(v.value == Scalar((i == k && j == h) ? 1L : 0L));
                    }
    }
}

TEST_CASE("L slices")
{
    QContext ctx(2);
    auto scheme = IndexScheme::make(Family::sl, 2);
    auto r = build_rhat(scheme, ctx);
    LSlices lp(r, Sign::plus), lm(r, Sign::minus);
    // exactly one triangular orientation
    bool upper_zero = true, lower_zero = true;
    for (int a : scheme.indices())
        for (int b : scheme.indices())
            for (int i : scheme.indices())
                for (int j : scheme.indices()) {
                    if (lp.rho(a, b, i, j).is_zero()) continue;
                    if (a > b) upper_zero = false;
                    if (a < b) lower_zero = false;
                }
    CHECK(upper_zero != lower_zero);

    // classical limit: rho(L^a_l) -> delta^a_l * 1
    for (const auto* l : {&lp, &lm})
        for (int a : scheme.indices())
            for (int b : scheme.indices())
                for (int i : scheme.indices())
                    for (int j : scheme.indices())
                        CHECK(eval_classical(l->rho(a, b, i, j)).value == Scalar((a == b && i == j) ? 1L : 0L));

    // rho(L^+a_m) rho(S L^+m_l) = delta, S taken as the inverse block
    auto blk = lp.block();
    CHECK(blk * blk.inverse() == SparseMatrix::identity(blk.dim()));
}

TEST_CASE("bar of R-hat against its inverse")
{
    for (const auto& c : kCases) {
        CAPTURE(c.n);
        QContext ctx(c.n);
        auto r = build_rhat(IndexScheme::make(c.family, c.n), ctx);
        auto a = bar_vs_inverse(r);
        CHECK((a.identity || a.factor_swap || a.transpose || a.swap_transpose));
        MESSAGE("bar arrangement " << c.n << ": id=" << a.identity << " swap=" << a.factor_swap
                                   << " transpose=" << a.transpose << " swap_transpose=" << a.swap_transpose);
    }
}
