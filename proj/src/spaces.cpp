#include "qub/spaces.hpp"

#include "qub/error.hpp"

#include <algorithm>

namespace qub {

void SpaceSpec::validate() const
{
    if (n < 2) throw UsageError("N must be at least 2");
    if (copies < 1) throw UsageError("the number of copies must be at least 1");
    if (epsilon != 1 && epsilon != -1) throw UsageError("epsilon must be +1 or -1");
    if (sphere && !extended) throw UsageError("a sphere build requires the extended generators");
    if (extended) {
        if (family != Family::so) throw UsageError("radius extensions exist only for so(N)");
        if (n % 2 == 0)
            throw UsageError("extended builds for even N are not supported: they need L^{+-1}_1 among the generators "
                             "and their relations with x^i are not available");
        if (kind != AlgebraKind::quantum_space) throw UsageError("extended builds are quantum spaces only");
        if (copies > 1 && n > 3)
            throw UsageError("multi-copy extended builds are supported for N = 3 only (r_a with a < n is not invariant)");
    }
}

Rational QCommExponent::e() const
{
    Rational r(s_exponent, s_per_q);
    r.canonicalize();
    return r;
}

std::vector<int> index_order(const IndexScheme& scheme)
{
    if (scheme.family() == Family::sl) return scheme.indices();
    std::vector<int> out;
    if (scheme.has_index(0)) out.push_back(0);
    for (int a = 1; a <= scheme.n() / 2; ++a) {
        out.push_back(-a);
        out.push_back(a);
    }
    return out;
}

// ---------------------------------------------------------------- Space helpers

NCPoly Space::x(int copy, int i) const
{
    return NCPoly::gen({copy, GenKind::x, i});
}

NCPoly Space::d(int copy, int i) const
{
    return NCPoly::gen({copy, GenKind::d, i});
}

NCPoly Space::r(int copy, int a) const
{
    if (a == 0) return x(copy, 0);
    return NCPoly::gen({copy, GenKind::rad, a});
}

NCPoly Space::rinv(int copy, int a) const
{
    if (a == 0) return x0inv(copy);
    return NCPoly::gen({copy, GenKind::rinv, a});
}

NCPoly Space::x0inv(int copy) const
{
    return NCPoly::gen({copy, GenKind::xinv, 0});
}

NCPoly Space::radius_square(int copy, int a) const
{
    if (!metric) throw UsageError("radius needs the so(N) metric");
    NCPoly out;
    for (int h : scheme.indices()) {
        if (std::abs(h) > a) continue;
        out += (x(copy, h) * x(copy, -h)).scaled(metric->g_lower(h, -h));
    }
    return out;
}

std::vector<Generator> Space::copy_generators(int copy) const
{
    std::vector<Generator> out;
    for (const auto& g : algebra.generators())
        if (g.copy == copy) out.push_back(g);
    return out;
}

std::vector<Generator> Space::coordinate_generators() const
{
    std::vector<Generator> out;
    for (const auto& g : algebra.generators())
        if (g.kind == GenKind::x) out.push_back(g);
    return out;
}

std::vector<NCPoly> antisymmetrizer_relations(const Space& s, const std::vector<NCPoly>& v)
{
    std::vector<NCPoly> out;
    const auto& idx = s.scheme.indices();
    for (int i : idx)
        for (int j : idx) {
            NCPoly rel;
            for (int h : idx)
                for (int k : idx) {
                    Scalar c = s.proj.antisym.at(i, j, h, k);
                    if (c.is_zero()) continue;
                    rel += (v[static_cast<std::size_t>(s.scheme.pos(h))] * v[static_cast<std::size_t>(s.scheme.pos(k))]).scaled(c);
                }
            if (!rel.is_zero()) out.push_back(rel);
        }
    return out;
}

// ---------------------------------------------------------------- construction

namespace {

Space prepare(const SpaceSpec& spec)
{
    spec.validate();
    Space s;
    s.spec = spec;
    s.ctx = QContext(spec.n);
    s.scheme = IndexScheme::make(spec.family, spec.n);
    s.rhat = build_rhat(s.scheme, s.ctx, spec.layout);
    s.rhat_inv = s.rhat.inverse();
    s.proj = build_projectors(s.rhat, s.ctx);
    if (spec.family == Family::so) s.metric = build_metric(s.scheme, s.ctx);
    if (spec.extended) s.extended_copy = spec.sign == Sign::minus ? 1 : spec.copies;
    return s;
}

PresentationInfo info_for(const SpaceSpec& spec, const std::string& what)
{
    PresentationInfo info;
    info.label = what;
    info.copies = spec.copies;
    info.reversed_levels = spec.sign == Sign::plus;
    return info;
}

// The matrices used by the cross relations between a lower copy a and a
// higher copy b. For the + braiding the realization lives in copy M, which
// then plays the first tensor factor; written for a < b the relations come
// out with the same matrices as for the - braiding, only the word order
// (reversed levels) differs.
const TensorOperator& cross_r(const Space& s)
{
    return s.rhat;
}

const TensorOperator& cross_rinv(const Space& s)
{
    return s.rhat_inv;
}

void add_x_cross(const Space& s, int a, int b, std::vector<NCPoly>& rels)
{
    const auto& R = cross_r(s);
    const auto& idx = s.scheme.indices();
    for (int i : idx)
        for (int j : idx) {
            NCPoly rel = s.x(a, i) * s.x(b, j);
            for (int h : idx)
                for (int k : idx) {
                    Scalar c = R.at(i, j, h, k);
                    if (!c.is_zero()) rel -= (s.x(b, h) * s.x(a, k)).scaled(c);
                }
            rels.push_back(rel);
        }
}

// If nf(p1) = lambda nf(p2) return lambda.
std::optional<Scalar> proportionality(Reducer& red, const NCPoly& p1, const NCPoly& p2)
{
    NCPoly n1 = red.normal_form(p1), n2 = red.normal_form(p2);
    if (n2.is_zero()) return std::nullopt;
    const auto& [w, c] = *n2.terms().begin();
    Scalar lambda = n1.coeff(w) / c;
    if (n1 != n2.scaled(lambda)) return std::nullopt;
    return lambda;
}

int s_exponent_of(const Scalar& lambda, const char* what)
{
    auto m = lambda.as_s_monomial();
    if (!m || m->first != 1) throw ConsistencyError(std::string("extension inconsistent: ") + what + " is not a pure power of q");
    return m->second;
}

void add_extension(Space& s, std::vector<NCPoly>& rels)
{
    int c = s.extended_copy;
    int rank = s.scheme.n() / 2;
    const auto& idx = s.scheme.indices();
    // presentation without the extension relations, to read off exponents
    AlgebraPresentation p0 = derive_rewrite_rules(rels, s.algebra);
    Reducer red0(p0);
    NCPoly one = NCPoly::constant(Scalar(1L));

    // inverses
    rels.push_back(s.x(c, 0) * s.x0inv(c) - one);
    rels.push_back(s.x0inv(c) * s.x(c, 0) - one);
    for (int a = 1; a <= rank; ++a) {
        rels.push_back(s.r(c, a) * s.rinv(c, a) - one);
        rels.push_back(s.rinv(c, a) * s.r(c, a) - one);
        rels.push_back(s.r(c, a) * s.r(c, a) - s.radius_square(c, a));
    }
    // (x^0)^{-1}: inherits the q-commutation of x^0
    std::map<int, int> x0_exp;  // x^0 x^i = q^(e) x^i x^0, e in s units
    for (int i : idx) {
        if (i == 0) continue;
        auto lam = proportionality(red0, s.x(c, 0) * s.x(c, i), s.x(c, i) * s.x(c, 0));
        if (!lam) throw ConsistencyError("extension inconsistent: x^0 does not q-commute with x^" + std::to_string(i));
        int e = s_exponent_of(*lam, "x^0 commutation factor");
        x0_exp[i] = e;
        rels.push_back(s.x0inv(c) * s.x(c, i) - (s.x(c, i) * s.x0inv(c)).scaled(Scalar::s_power(-e)));
    }
    // radii
    std::map<int, std::map<int, int>> r_exp;
    for (int a = 1; a <= rank; ++a) {
        NCPoly sq = s.radius_square(c, a);
        for (int i : idx) {
            auto e = derive_qcomm_exponent(p0, s.ctx, sq, s.x(c, i));
            r_exp[a][i] = e.s_exponent;
            rels.push_back(s.r(c, a) * s.x(c, i) - (s.x(c, i) * s.r(c, a)).scaled(Scalar::s_power(e.s_exponent)));
            rels.push_back(s.rinv(c, a) * s.x(c, i) - (s.x(c, i) * s.rinv(c, a)).scaled(Scalar::s_power(-e.s_exponent)));
        }
        // r_a with (x^0)^{-1}
        int e0 = r_exp[a][0];
        rels.push_back(s.r(c, a) * s.x0inv(c) - (s.x0inv(c) * s.r(c, a)).scaled(Scalar::s_power(-e0)));
        rels.push_back(s.rinv(c, a) * s.x0inv(c) - (s.x0inv(c) * s.rinv(c, a)).scaled(Scalar::s_power(e0)));
        for (int b = 1; b < a; ++b) {
            NCPoly sa = s.radius_square(c, a), sb = s.radius_square(c, b);
            if (red0.normal_form(sa * sb - sb * sa) != NCPoly())
                throw ConsistencyError("extension inconsistent: radius squares do not commute");
            for (const auto& [u, v] : {std::pair{s.r(c, a), s.r(c, b)}, {s.r(c, a), s.rinv(c, b)},
                                      {s.rinv(c, a), s.r(c, b)}, {s.rinv(c, a), s.rinv(c, b)}})
                rels.push_back(u * v - v * u);
        }
    }

    if (s.spec.copies == 1) return;
    // other copies: r = r_n is invariant and commutes with them
    for (int b = 1; b <= s.spec.copies; ++b) {
        if (b == c) continue;
        for (int i : idx) {
            NCPoly sq = s.radius_square(c, rank);
            if (red0.normal_form(sq * s.x(b, i) - s.x(b, i) * sq) != NCPoly())
                throw ConsistencyError("extension inconsistent: r^2 is not central across copies");
            rels.push_back(s.x(b, i) * s.r(c, rank) - s.r(c, rank) * s.x(b, i));
            rels.push_back(s.x(b, i) * s.rinv(c, rank) - s.rinv(c, rank) * s.x(b, i));
        }
    }
    // (x^{c,0})^{-1} against other copies: from x^{b,j} x^{c,0} = sum_k T_{jk} x^{b,k}
    // follows x^{b,j} u = sum_k (T^{-1})_{jk} x^{b,k} u... solved as
    // x^{b,h} u = sum_j B_{hj} x^{b,j} with B T = 1 over copy c.
    AlgebraPresentation p1 = derive_rewrite_rules(rels, s.algebra);
    Reducer red1(p1);
    std::size_t n = idx.size();
    for (int b = 1; b <= s.spec.copies; ++b) {
        if (b == c) continue;
        PolyMatrix t(n, std::vector<NCPoly>(n));
        for (std::size_t j = 0; j < n; ++j) {
            NCPoly nf = red1.normal_form(s.x(b, idx[j]) * s.x(c, 0));
            for (const auto& [w, coef] : nf.terms()) {
                if (w.empty()) throw ConsistencyError("unexpected constant in a cross product");
                Generator last = decode(w.back());
                if (last.copy != b || last.kind != GenKind::x)
                    throw ConsistencyError("cross product x^b x^c does not end in copy b");
                Word head(w.begin(), w.end() - 1);
                for (GenId g : head)
                    if (decode(g).copy != c) throw ConsistencyError("cross product mixes copies");
                t[j][static_cast<std::size_t>(s.scheme.pos(last.index))].add_term(head, coef);
            }
        }
        auto inv = triangular_inverse(t, red1);
        for (std::size_t h = 0; h < n; ++h) {
            NCPoly rel = s.x(b, idx[h]) * s.x0inv(c);
            for (std::size_t j = 0; j < n; ++j)
                if (!inv.inverse[h][j].is_zero()) rel -= inv.inverse[h][j] * s.x(b, idx[j]);
            rels.push_back(rel);
        }
    }
}

void finish(Space& s, std::vector<NCPoly> rels)
{
    s.relations = rels;
    s.algebra = derive_rewrite_rules(rels, s.algebra);
}

} // namespace

QCommExponent derive_qcomm_exponent(const AlgebraPresentation& a, const QContext& ctx, const NCPoly& square,
                                    const NCPoly& target)
{
    Reducer red(a);
    auto lam = proportionality(red, square * target, target * square);
    if (!lam) throw ConsistencyError("extension inconsistent: square and target do not q-commute");
    int m = s_exponent_of(*lam, "q-commutation factor");
    if (m % 2 != 0) throw ConsistencyError("extension inconsistent: q-commutation exponent is off the grid");
    return {m / 2, ctx.s_per_q()};
}

Space build_quantum_space(const SpaceSpec& spec_in)
{
    SpaceSpec spec = spec_in;
    spec.kind = AlgebraKind::quantum_space;
    Space s = prepare(spec);
    std::vector<Generator> gens;
    for (int c = 1; c <= spec.copies; ++c) {
        if (c == s.extended_copy) {
            // each radius next to its inverse, so that r_a ... r_a^{-1} cancels
            for (int a = 1; a <= s.scheme.n() / 2; ++a) {
                gens.push_back({c, GenKind::rad, a});
                gens.push_back({c, GenKind::rinv, a});
            }
            gens.push_back({c, GenKind::xinv, 0});
        }
        for (int i : index_order(s.scheme)) gens.push_back({c, GenKind::x, i});
    }
    s.algebra = AlgebraPresentation(gens, info_for(spec, "quantum space " + s.scheme.label()));
    if (s.extended_copy) s.algebra.declare_inverse({s.extended_copy, GenKind::x, 0}, {s.extended_copy, GenKind::xinv, 0});
    for (int a = 1; s.extended_copy && a <= s.scheme.n() / 2; ++a)
        s.algebra.declare_inverse({s.extended_copy, GenKind::rad, a}, {s.extended_copy, GenKind::rinv, a});

    std::vector<NCPoly> rels;
    for (int c = 1; c <= spec.copies; ++c) {
        std::vector<NCPoly> v;
        for (int i : s.scheme.indices()) v.push_back(s.x(c, i));
        for (auto& r : antisymmetrizer_relations(s, v)) rels.push_back(std::move(r));
    }
    for (int a = 1; a <= spec.copies; ++a)
        for (int b = a + 1; b <= spec.copies; ++b) add_x_cross(s, a, b, rels);
    if (spec.extended) add_extension(s, rels);
    finish(s, rels);
    if (spec.sphere) return sphere_quotient(s);
    return s;
}

Space build_heisenberg(const SpaceSpec& spec_in)
{
    SpaceSpec spec = spec_in;
    spec.kind = AlgebraKind::heisenberg;
    Space s = prepare(spec);
    std::vector<Generator> gens;
    for (int c = 1; c <= spec.copies; ++c) {
        for (int i : index_order(s.scheme)) gens.push_back({c, GenKind::x, i});
        for (int i : index_order(s.scheme)) gens.push_back({c, GenKind::d, i});
    }
    s.algebra = AlgebraPresentation(gens, info_for(spec, "Heisenberg algebra " + s.scheme.label()));

    const auto& idx = s.scheme.indices();
    // (q gamma R-hat)^epsilon
    Scalar gamma = spec.family == Family::sl ? s.ctx.q_pow(1, spec.n) : Scalar(1L);
    TensorOperator m = s.rhat.scaled(s.ctx.q() * gamma);
    if (spec.epsilon == -1) m = m.inverse();
    const auto& pa = s.proj.antisym;

    std::vector<NCPoly> rels;
    for (int c = 1; c <= spec.copies; ++c) {
        std::vector<NCPoly> v;
        for (int i : idx) v.push_back(s.x(c, i));
        for (auto& r : antisymmetrizer_relations(s, v)) rels.push_back(std::move(r));
        for (int h : idx)
            for (int k : idx) {
                NCPoly rel;
                for (int i : idx)
                    for (int j : idx) {
                        Scalar coef = pa.at(i, j, h, k);
                        if (!coef.is_zero()) rel += (s.d(c, j) * s.d(c, i)).scaled(coef);
                    }
                if (!rel.is_zero()) rels.push_back(rel);
            }
        for (int i : idx)
            for (int j : idx) {
                NCPoly rel = s.d(c, i) * s.x(c, j);
                if (i == j) rel -= NCPoly::constant(Scalar(1L));
                for (int h : idx)
                    for (int k : idx) {
                        Scalar coef = m.at(j, k, i, h);
                        if (!coef.is_zero()) rel -= (s.x(c, h) * s.d(c, k)).scaled(coef);
                    }
                rels.push_back(rel);
            }
    }
    const auto& R = cross_r(s);
    const auto& Ri = cross_rinv(s);
    for (int a = 1; a <= spec.copies; ++a)
        for (int b = a + 1; b <= spec.copies; ++b) {
            add_x_cross(s, a, b, rels);
            for (int i : idx)
                for (int j : idx) {
                    NCPoly dd = s.d(a, i) * s.d(b, j);
                    NCPoly dx = s.d(a, i) * s.x(b, j);
                    NCPoly xd = s.d(b, i) * s.x(a, j);
                    for (int h : idx)
                        for (int k : idx) {
                            if (Scalar c = R.at(k, h, j, i); !c.is_zero()) dd -= (s.d(b, h) * s.d(a, k)).scaled(c);
                            if (Scalar c = Ri.at(j, h, i, k); !c.is_zero()) dx -= (s.x(b, k) * s.d(a, h)).scaled(c);
                            if (Scalar c = R.at(j, h, i, k); !c.is_zero()) xd -= (s.x(a, k) * s.d(b, h)).scaled(c);
                        }
                    rels.push_back(dd);
                    rels.push_back(dx);
                    rels.push_back(xd);
                }
        }
    finish(s, rels);
    return s;
}

Space build_space(const SpaceSpec& spec)
{
    switch (spec.kind) {
    case AlgebraKind::quantum_space: return build_quantum_space(spec);
    case AlgebraKind::heisenberg: return build_heisenberg(spec);
    case AlgebraKind::free: {
        if (spec.extended || spec.sphere) throw UsageError("the free algebra has no extension");
        Space s = prepare(spec);
        std::vector<Generator> gens;
        for (int c = 1; c <= spec.copies; ++c)
            for (int i : index_order(s.scheme)) gens.push_back({c, GenKind::x, i});
        s.algebra = AlgebraPresentation(gens, info_for(spec, "free algebra"));
        return s;
    }
    }
    throw UsageError("unknown algebra kind");
}

Space sphere_quotient(const Space& e)
{
    if (!e.extended_copy) throw UsageError("sphere quotient needs an extended build");
    int c = e.extended_copy;
    int rank = e.scheme.n() / 2;
    GenId r = encode({c, GenKind::rad, rank});
    GenId ri = encode({c, GenKind::rinv, rank});
    // r_n central: r x^i = x^i r for every coordinate
    {
        Reducer red(e.algebra);
        for (const auto& g : e.algebra.generators()) {
            NCPoly t = NCPoly::gen(g);
            if (red.normal_form(e.r(c, rank) * t - t * e.r(c, rank)) != NCPoly())
                throw UsageError("r is not central; the sphere quotient is undefined");
        }
    }
    auto drop = [&](const NCPoly& p) {
        NCPoly out;
        for (const auto& [w, coef] : p.terms()) {
            Word w2;
            for (GenId g : w)
                if (g != r && g != ri) w2.push_back(g);
            out.add_term(w2, coef);
        }
        return out;
    };
    Space s = e;
    s.spec.sphere = true;
    std::vector<Generator> gens;
    for (const auto& g : e.algebra.generators())
        if (encode(g) != r && encode(g) != ri) gens.push_back(g);
    PresentationInfo info = e.algebra.info();
    info.label = "quantum sphere " + e.scheme.label();
    s.algebra = AlgebraPresentation(gens, info);
    s.algebra.declare_inverse({c, GenKind::x, 0}, {c, GenKind::xinv, 0});
    for (int a = 1; a < rank; ++a) s.algebra.declare_inverse({c, GenKind::rad, a}, {c, GenKind::rinv, a});
    std::vector<NCPoly> rels;
    for (const auto& rel : e.relations) {
        NCPoly d = drop(rel);
        if (!d.is_zero()) rels.push_back(d);
    }
    finish(s, rels);
    return s;
}

} // namespace qub
