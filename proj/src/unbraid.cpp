#include "qub/unbraid.hpp"

#include "qub/error.hpp"

#include <random>
#include <set>

namespace qub {

namespace {

std::size_t at(const IndexScheme& s, int i)
{
    return static_cast<std::size_t>(s.pos(i));
}

std::string idx_label(const IndexScheme& s, int i)
{
    return s.index_name(i);
}

} // namespace

const NCPoly& PhiTable::image(int i, int j) const
{
    return images[at(scheme, i)][at(scheme, j)];
}

const NCPoly& PhiTable::antipode_image(int i, int j) const
{
    if (antipode.empty()) throw UsageError("antipode images have not been computed");
    return antipode[at(scheme, i)][at(scheme, j)];
}

std::string gamma_name(Sign sign, int a)
{
    return (sign == Sign::minus ? "gamma" : "gammabar") + std::to_string(a);
}

void UnbraidReport::merge(const UnbraidReport& o)
{
    checks += o.checks;
    commutation_failures.insert(commutation_failures.end(), o.commutation_failures.begin(), o.commutation_failures.end());
    relation_failures.insert(relation_failures.end(), o.relation_failures.begin(), o.relation_failures.end());
    residual_braiding_failures.insert(residual_braiding_failures.end(), o.residual_braiding_failures.begin(),
                                      o.residual_braiding_failures.end());
    notes.insert(notes.end(), o.notes.begin(), o.notes.end());
    injective = injective && o.injective;
}

std::string to_string(ExchangeArrangement a)
{
    switch (a) {
    case ExchangeArrangement::slice: return "slice";
    case ExchangeArrangement::slice_transposed: return "slice-transposed";
    case ExchangeArrangement::slice_inverse_matrix: return "slice-of-inverse";
    case ExchangeArrangement::slice_factor_swapped: return "slice-factor-swapped";
    }
    return "?";
}

const NCPoly& GeneratorImages::of(const Generator& g) const
{
    auto it = image.find(encode(g));
    if (it == image.end()) throw UsageError("no image for " + token(g));
    return it->second;
}

// ---------------------------------------------------------------- phi

std::string to_string(RealityChoice c)
{
    switch (c) {
    case RealityChoice::consistent: return "consistent";
    case RealityChoice::literal: return "literal";
    case RealityChoice::trivial: return "trivial";
    }
    return "?";
}

BarTable reality_declarations(Sign sign, int n, const QContext& ctx, RealityChoice choice)
{
    BarTable t;
    for (int a = 1; a <= n / 2; ++a) {
        std::string name = gamma_name(sign, a);
        Scalar g = Scalar::param(name);
        switch (choice) {
        case RealityChoice::consistent: t.declare(name, sign == Sign::minus ? -(ctx.q_pow(2) * g) : -g); break;
        case RealityChoice::literal: t.declare(name, -(ctx.q_pow(-2) * g)); break;
        case RealityChoice::trivial: t.declare(name, g); break;
        }
    }
    return t;
}

PhiTable build_phi_euclidean(const Space& space, Sign sign, const std::map<std::string, Scalar>& assign,
                             RealityChoice reality)
{
    const auto& sch = space.scheme;
    if (sch.family() != Family::so || sch.n() % 2 == 0)
        throw UsageError("the built-in realization exists for odd N only; even N needs L^{+-1}_1 inside the algebra");
    if (sch.n() != 3 && sch.n() != 5) throw UsageError("the built-in realization is provided for N = 3 and N = 5");
    if (!space.extended_copy) throw UsageError("the realization needs the extended generators r_a, r_a^{-1}, (x^0)^{-1}");
    if (space.spec.copies > 1 && sign != space.spec.sign)
        throw UsageError("the realization sign must match the braiding sign of the tensor product");

    const QContext& ctx = space.ctx;
    const Metric& g = *space.metric;
    int c = space.extended_copy;
    int rank = sch.n() / 2;
    Scalar h = ctx.h(), k = ctx.k();
    Scalar qs = sign == Sign::minus ? ctx.q() : ctx.q_pow(-1);  // q^{+-1} in the commutator and in gamma products

    PhiTable phi;
    phi.sign = sign;
    phi.scheme = sch;
    phi.host_copy = c;
    phi.gamma[0] = sign == Sign::minus ? -(ctx.q_pow(-1, 2) * h.inverse()) : ctx.q_pow(1, 2) * h.inverse();
    for (int a = 1; a <= rank; ++a) {
        std::string name = gamma_name(sign, a);
        auto it = assign.find(name);
        Scalar ga = it != assign.end() ? it->second : Scalar::param(name);
        if (ga.is_zero()) throw DegenerateError(name + " must be nonzero");
        Scalar prod = a == 1 ? -(qs.inverse() * h.pow(-2))
                             : -(qs.inverse() * k.pow(-2) * ctx.omega_half(sch.twice_rho(a)) *
                                 ctx.omega_half(sch.twice_rho(a - 1)));
        phi.gamma[a] = ga;
        phi.gamma[-a] = prod * ga.inverse();
    }
    BarTable all = reality_declarations(sign, sch.n(), ctx, reality);
    for (const auto& [id, image] : all.images())
        if (!assign.count(ParameterRegistry::name(id))) phi.bar.declare(ParameterRegistry::name(id), image);
    for (const auto& [name, value] : assign) {
        bool known = false;
        for (int a = 1; a <= rank; ++a) known = known || name == gamma_name(sign, a);
        if (!known) throw UsageError("unknown parameter assignment '" + name + "'");
    }

    auto mu = [&](int a) -> NCPoly {
        if (a == 0) return space.x0inv(c).scaled(phi.gamma[0]);
        int b = std::abs(a);
        return (space.rinv(c, b) * space.rinv(c, b - 1) * space.x(c, -a)).scaled(phi.gamma[a]);
    };

    Reducer red(space.algebra);
    std::size_t n = static_cast<std::size_t>(sch.size());
    phi.images.assign(n, std::vector<NCPoly>(n));
    for (int i : sch.indices())
        for (int j : sch.indices()) {
            // g^{ih} [mu_h, x^k]_q g_{kj}, h = -i and k = -j
            Scalar coef = g.g_upper(i, -i) * g.g_lower(-j, j);
            NCPoly comm = red.commutator(mu(-i), space.x(c, -j), qs);
            phi.images[at(sch, i)][at(sch, j)] = comm.scaled(coef);
        }
    compute_antipode(phi, space);
    return phi;
}

void compute_antipode(PhiTable& phi, const Space& space)
{
    Reducer red(space.algebra);
    auto inv = triangular_inverse(phi.images, red);
    phi.antipode = std::move(inv.inverse);
    phi.shape = inv.shape;
}

// ---------------------------------------------------------------- exchange

UnbraidReport verify_phi_exchange(const PhiTable& phi, const Space& space, ExchangeArrangement arrangement)
{
    const auto& sch = phi.scheme;
    int c = phi.host_copy;
    Sign slice_sign = phi.sign;
    if (arrangement == ExchangeArrangement::slice_inverse_matrix)
        slice_sign = phi.sign == Sign::minus ? Sign::plus : Sign::minus;
    LSlices sl(space.rhat, slice_sign);
    auto coef = [&](int m, int kk, int l, int j) -> Scalar {
        switch (arrangement) {
        case ExchangeArrangement::slice:
        case ExchangeArrangement::slice_inverse_matrix: return sl.rho(m, j, kk, l);
        case ExchangeArrangement::slice_transposed: return sl.rho(m, j, l, kk);
        case ExchangeArrangement::slice_factor_swapped: return sl.rho(j, m, kk, l);
        }
        return {};
    };

    Reducer red(space.algebra);
    UnbraidReport rep;
    for (int i : sch.indices())
        for (int j : sch.indices())
            for (int kk : sch.indices()) {
                NCPoly lhs = red.multiply(space.x(c, kk), phi.image(i, j));
                NCPoly rhs;
                for (int m : sch.indices())
                    for (int l : sch.indices()) {
                        Scalar cf = coef(m, kk, l, j);
                        if (cf.is_zero() || phi.image(i, m).is_zero()) continue;
                        rhs += red.multiply(phi.image(i, m), space.x(c, l)).scaled(cf);
                    }
                ++rep.checks;
                NCPoly res = lhs - rhs;
                if (!res.is_zero())
                    rep.relation_failures.push_back({"exchange x^" + idx_label(sch, kk) + " phi(L^" + idx_label(sch, i) +
                                                         "_" + idx_label(sch, j) + ")",
                                                     res});
            }
    if (!phi.antipode.empty()) {
        for (int i : sch.indices())
            for (int j : sch.indices()) {
                NCPoly left, right;
                for (int m : sch.indices()) {
                    left += red.multiply(phi.image(i, m), phi.antipode_image(m, j));
                    right += red.multiply(phi.antipode_image(i, m), phi.image(m, j));
                }
                NCPoly delta = i == j ? NCPoly::constant(Scalar(1L)) : NCPoly();
                rep.checks += 2;
                if (left != delta)
                    rep.relation_failures.push_back(
                        {"phi(L) phi(SL) entry " + idx_label(sch, i) + "," + idx_label(sch, j), left - delta});
                if (right != delta)
                    rep.relation_failures.push_back(
                        {"phi(SL) phi(L) entry " + idx_label(sch, i) + "," + idx_label(sch, j), right - delta});
            }
    }
    return rep;
}

// ---------------------------------------------------------------- chi

GeneratorImages chi_images(const PhiTable& phi, const Space& space, int copy)
{
    if (copy == phi.host_copy)
        throw UsageError("copy " + std::to_string(copy) + " hosts the realization and is left fixed by chi");
    if (copy < 1 || copy > space.spec.copies) throw UsageError("copy out of range");
    const auto& sch = phi.scheme;
    Reducer red(space.algebra);
    GeneratorImages out;
    for (int i : sch.indices()) {
        NCPoly y;
        for (int j : sch.indices()) {
            const NCPoly& f = phi.image(i, j);
            if (!f.is_zero()) y += red.multiply(f, space.x(copy, j));
        }
        out.image[encode({copy, GenKind::x, i})] = y;
    }
    if (space.algebra.has_generator(Generator{copy, GenKind::d, sch.index_at(0)})) {
        if (phi.antipode.empty()) throw UsageError("derivative images need the antipode images");
        for (int a : sch.indices()) {
            NCPoly y;
            for (int d : sch.indices()) {
                const NCPoly& f = phi.antipode_image(d, a);
                if (!f.is_zero()) y += red.multiply(f, space.d(copy, d));
            }
            out.image[encode({copy, GenKind::d, a})] = y;
        }
    }
    return out;
}

namespace {

NCPoly substitute(const NCPoly& p, const std::map<GenId, NCPoly>& images, Reducer& red, int host)
{
    NCPoly out;
    for (const auto& [w, c] : p.terms()) {
        NCPoly acc = NCPoly::constant(c);
        for (GenId g : w) {
            auto it = images.find(g);
            if (it == images.end()) {
                Generator gen = decode(g);
                if (gen.copy == host) throw UsageError("chi is not applied to the host copy (" + token(gen) + ")");
                throw UsageError("no image for " + token(gen));
            }
            acc = red.multiply(acc, it->second);
        }
        out += acc;
    }
    return out;
}

bool mentions_copy(const NCPoly& p, int copy)
{
    for (const auto& [w, c] : p.terms())
        for (GenId g : w)
            if (decode(g).copy == copy) return true;
    return false;
}

std::set<int> copies_of(const NCPoly& p)
{
    std::set<int> out;
    for (const auto& [w, c] : p.terms())
        for (GenId g : w) out.insert(decode(g).copy);
    return out;
}

} // namespace

NCPoly chi_apply(const PhiTable& phi, const Space& space, const NCPoly& target)
{
    std::map<GenId, NCPoly> images;
    for (int c : copies_of(target)) {
        auto im = chi_images(phi, space, c);
        images.insert(im.image.begin(), im.image.end());
    }
    Reducer red(space.algebra);
    return substitute(target, images, red, phi.host_copy);
}

UnbraidReport verify_unbraiding(const PhiTable& phi, const Space& space)
{
    UnbraidReport rep;
    const auto& sch = phi.scheme;
    int host = phi.host_copy;
    Reducer red(space.algebra);
    std::map<GenId, NCPoly> images;
    for (int c = 1; c <= space.spec.copies; ++c) {
        if (c == host) continue;
        auto im = chi_images(phi, space, c);
        images.insert(im.image.begin(), im.image.end());
    }
    auto name = [&](GenId id) {
        Generator g = decode(id);
        std::string base = g.kind == GenKind::d ? "dy" : "y";
        return base + "^{" + std::to_string(g.copy) + "," + idx_label(sch, g.index) + "}";
    };

    // (1) commutation with the host copy
    for (const auto& [id, y] : images)
        for (const auto& hg : space.copy_generators(host)) {
            NCPoly t = NCPoly::gen(hg);
            NCPoly res = red.multiply(y, t) - red.multiply(t, y);
            ++rep.checks;
            if (!res.is_zero()) rep.commutation_failures.push_back({"[" + name(id) + ", " + token(hg) + "]", res});
        }
    // (2), (3) relations of the non-host copies
    for (const auto& rel : space.relations) {
        if (mentions_copy(rel, host)) continue;
        auto cs = copies_of(rel);
        NCPoly res = substitute(rel, images, red, host);
        ++rep.checks;
        if (res.is_zero()) continue;
        if (cs.size() <= 1) rep.relation_failures.push_back({"relation of copy " + std::to_string(*cs.begin()), res});
        else rep.residual_braiding_failures.push_back({"cross relation of copies " + std::to_string(*cs.begin()) + "," +
                                                           std::to_string(*cs.rbegin()),
                                                       res});
    }
    // generator-level injectivity: distinct leading words in each copy
    std::map<int, std::set<Word>> leads;
    for (const auto& [id, y] : images) {
        if (y.is_zero()) {
            rep.injective = false;
            rep.notes.push_back(name(id) + " is zero");
            continue;
        }
        if (!leads[decode(id).copy].insert(space.algebra.leading_word(y)).second) {
            rep.injective = false;
            rep.notes.push_back(name(id) + " shares its leading word with another image");
        }
    }
    return rep;
}

// ---------------------------------------------------------------- recursion

UnbraidResult unbraid_iterate(const SpaceSpec& spec_in, const std::map<std::string, Scalar>& assign)
{
    SpaceSpec spec = spec_in;
    spec.kind = AlgebraKind::quantum_space;
    spec.extended = true;
    spec.sphere = false;
    UnbraidResult result;
    int m = spec.copies;
    for (int k = 1; k < m; ++k) {
        SpaceSpec local = spec;
        local.copies = m - k + 1;
        Space space = build_quantum_space(local);
        PhiTable phi = build_phi_euclidean(space, spec.sign, assign);
        UnbraidStep step;
        step.step = k;
        for (int c = 1; c <= local.copies; ++c)
            step.copies.push_back(spec.sign == Sign::minus ? c + k - 1 : c);
        step.fixed_copy = step.copies[static_cast<std::size_t>(phi.host_copy - 1)];
        step.report = verify_unbraiding(phi, space);
        Reducer red(space.algebra);
        for (int c = 1; c <= local.copies; ++c) {
            if (c == phi.host_copy) continue;
            step.images[c] = chi_images(phi, space, c);
            // the radius of a decoupled copy is unchanged: sum g y y = sum g x x
            NCPoly ry, rx = space.radius_square(c, space.scheme.n() / 2);
            for (int h : space.scheme.indices()) {
                Scalar gh = space.metric->g_lower(h, -h);
                ry += red.multiply(step.images[c].of({c, GenKind::x, h}), step.images[c].of({c, GenKind::x, -h})).scaled(gh);
            }
            if (red.normal_form(rx) != ry) step.radius_preserved = false;
        }
        if (!step.radius_preserved) {
            step.report.notes.push_back("radius of a decoupled copy is not preserved; the next step's relabeling is not justified");
            step.report.injective = false;
        }
        result.report.merge(step.report);
        result.steps.push_back(std::move(step));
    }
    return result;
}

// ---------------------------------------------------------------- star

NCPoly StarStructure::apply(const NCPoly& p) const
{
    const Space& s = *space;
    std::map<GenId, NCPoly> cache;
    auto star_letter = [&](GenId id) -> const NCPoly& {
        auto it = cache.find(id);
        if (it != cache.end()) return it->second;
        Generator g = decode(id);
        NCPoly img;
        if (g.kind == GenKind::d) {
            if (!s.metric) throw UsageError("the derivative star structure needs the so(N) metric");
            Scalar pref = -s.ctx.q_pow(static_cast<long>(derivative_sign) * s.scheme.n());
            for (int h : s.scheme.indices()) {
                Scalar cf;
                for (int k : s.scheme.indices()) cf += s.metric->g_upper(k, h) * s.metric->g_lower(k, g.index);
                if (!cf.is_zero()) img += s.d(g.copy, h).scaled(pref * cf);
            }
        } else {
            img = NCPoly::word({id});
        }
        return cache.emplace(id, img).first->second;
    };
    NCPoly out;
    for (const auto& [w, c] : p.terms()) {
        NCPoly acc = NCPoly::constant(qub::bar(c, bar));
        for (auto it = w.rbegin(); it != w.rend(); ++it) acc = acc * star_letter(*it);
        out += acc;
    }
    return out;
}

namespace {

StarReport check_star(const Space& space, const BarTable& bar, int derivative_sign, unsigned seed)
{
    StarStructure star{&space, bar, derivative_sign};
    StarReport rep;
    rep.derivative_sign = derivative_sign;
    const auto& gens = space.algebra.generators();
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> len(1, 4), pick(0, static_cast<int>(gens.size()) - 1), coef(-3, 3), sexp(-4, 4);
    for (int t = 0; t < 40; ++t) {
        NCPoly p;
        for (int term = 0; term < 3; ++term) {
            Word w;
            int l = len(rng);
            for (int i = 0; i < l; ++i) w.push_back(encode(gens[static_cast<std::size_t>(pick(rng))]));
            int c = coef(rng);
            if (c == 0) c = 1;
            p.add_term(w, Scalar(static_cast<long>(c)) * Scalar::s_power(sexp(rng)));
        }
        NCPoly back = star.apply(star.apply(p));
        if (back != p) {
            rep.involutive = false;
            rep.failures.push_back({"star(star(p)) != p on a random polynomial", back - p});
        }
    }
    Reducer red(space.algebra);
    for (const auto& rel : space.relations) {
        NCPoly res = red.normal_form(star.apply(rel));
        if (!res.is_zero()) {
            rep.relations_preserved = false;
            rep.failures.push_back({"star of a defining relation", res});
        }
    }
    return rep;
}

bool has_derivatives(const Space& space)
{
    for (const auto& g : space.algebra.generators())
        if (g.kind == GenKind::d) return true;
    return false;
}

} // namespace

StarReport verify_star_structure(const Space& space, const BarTable& bar, unsigned seed)
{
    if (!has_derivatives(space)) {
        StarReport rep = check_star(space, bar, 1, seed);
        rep.derivative_sign = 0;
        return rep;
    }
    if (!space.metric) throw UsageError("the derivative star structure needs the so(N) metric");
    StarReport plus = check_star(space, bar, 1, seed);
    if (plus.pass()) return plus;
    StarReport minus = check_star(space, bar, -1, seed);
    if (minus.pass()) return minus;
    // neither works: report the sign with fewer failures
    return minus.failures.size() < plus.failures.size() ? minus : plus;
}

UnbraidReport verify_star_chi(const PhiTable& phi, const Space& space)
{
    UnbraidReport rep;
    StarStructure star{&space, phi.bar, 1};
    Reducer red(space.algebra);
    int host = phi.host_copy;
    for (const auto& g : space.copy_generators(host)) {
        if (g.kind == GenKind::d) continue;
        NCPoly img = star.apply(NCPoly::gen(g));
        ++rep.checks;
        if (copies_of(img) != std::set<int>{host})
            rep.relation_failures.push_back({"star of " + token(g) + " leaves the host copy", img});
    }
    for (int c = 1; c <= space.spec.copies; ++c) {
        if (c == host) continue;
        auto im = chi_images(phi, space, c);
        for (const auto& [id, y] : im.image) {
            Generator g = decode(id);
            if (g.kind != GenKind::x) continue;
            NCPoly res;
            try {
                res = red.normal_form(star.apply(y)) - y;
            } catch (const UsageError& e) {
                rep.notes.push_back(e.what());
                rep.relation_failures.push_back({"star of y^{" + std::to_string(c) + "," + idx_label(phi.scheme, g.index) + "}", y});
                continue;
            }
            ++rep.checks;
            if (!res.is_zero())
                rep.relation_failures.push_back(
                    {"y^{" + std::to_string(c) + "," + idx_label(phi.scheme, g.index) + "} is not self-adjoint", res});
        }
    }
    return rep;
}

} // namespace qub
