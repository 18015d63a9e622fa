#include "qub/runner.hpp"

#include "qub/error.hpp"
#include "qub/format.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qub {

using nlohmann::json;

std::string to_string(OutputFormat f)
{
    switch (f) {
    case OutputFormat::text: return "text";
    case OutputFormat::json: return "json";
    case OutputFormat::latex: return "latex";
    }
    return "?";
}

OutputFormat parse_format(const std::string& s)
{
    if (s == "text") return OutputFormat::text;
    if (s == "json") return OutputFormat::json;
    if (s == "latex") return OutputFormat::latex;
    throw UsageError("unknown format '" + s + "' (expected text, json or latex)");
}

std::string to_string(AlgebraKind k)
{
    switch (k) {
    case AlgebraKind::quantum_space: return "space";
    case AlgebraKind::heisenberg: return "heisenberg";
    case AlgebraKind::free: return "free";
    }
    return "?";
}

AlgebraKind parse_kind(const std::string& s)
{
    if (s == "space" || s == "quantum_space") return AlgebraKind::quantum_space;
    if (s == "heisenberg") return AlgebraKind::heisenberg;
    if (s == "free") return AlgebraKind::free;
    throw UsageError("unknown algebra kind '" + s + "' (expected space, heisenberg or free)");
}

namespace {

RealityChoice parse_reality(const std::string& s)
{
    if (s == "consistent") return RealityChoice::consistent;
    if (s == "literal") return RealityChoice::literal;
    if (s == "trivial") return RealityChoice::trivial;
    throw UsageError("unknown reality choice '" + s + "' (expected consistent, literal or trivial)");
}

const std::vector<std::string> kAllSuites = {"ybe",        "minpoly", "projectors", "metric", "confluence",
                                              "hilbert",    "classical", "star",     "exchange"};

} // namespace

void RunConfig::validate() const
{
    spec.validate();
    if (max_degree < 2) throw UsageError("the maximal check degree must be at least 2");
    for (const auto& s : suites)
        if (std::find(kAllSuites.begin(), kAllSuites.end(), s) == kAllSuites.end())
            throw UsageError("unknown suite '" + s + "'");
}

RunConfig RunConfig::from_json(const json& j)
{
    RunConfig c;
    try {
        if (j.contains("family")) c.spec.family = parse_family(j.at("family").get<std::string>());
        if (j.contains("n")) c.spec.n = j.at("n").get<int>();
        if (j.contains("m")) c.spec.copies = j.at("m").get<int>();
        if (j.contains("sign")) c.spec.sign = parse_sign(j.at("sign").get<std::string>());
        if (j.contains("epsilon")) c.spec.epsilon = j.at("epsilon").get<int>();
        if (j.contains("kind")) c.spec.kind = parse_kind(j.at("kind").get<std::string>());
        if (j.contains("extended")) c.spec.extended = j.at("extended").get<bool>();
        if (j.contains("sphere")) c.spec.sphere = j.at("sphere").get<bool>();
        if (c.spec.sphere) c.spec.extended = true;
        if (j.contains("max_degree")) c.max_degree = j.at("max_degree").get<int>();
        if (j.contains("format")) c.format = parse_format(j.at("format").get<std::string>());
        if (j.contains("params"))
            for (const auto& [k, v] : j.at("params").items()) c.params[k] = v.get<std::string>();
        if (j.contains("suites")) c.suites = j.at("suites").get<std::vector<std::string>>();
        if (j.contains("star")) c.star = j.at("star").get<bool>();
        if (j.contains("metric")) c.metric = j.at("metric").get<bool>();
        if (j.contains("reality")) c.reality = parse_reality(j.at("reality").get<std::string>());
        if (j.contains("phi")) c.phi_text = j.at("phi").get<std::string>();
        if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("bad configuration: ") + e.what());
    }
    return c;
}

json RunConfig::to_json() const
{
    json j;
    j["family"] = to_string(spec.family);
    j["n"] = spec.n;
    j["m"] = spec.copies;
    j["sign"] = to_string(spec.sign);
    j["epsilon"] = spec.epsilon;
    j["kind"] = to_string(spec.kind);
    j["extended"] = spec.extended;
    j["sphere"] = spec.sphere;
    j["max_degree"] = max_degree;
    j["format"] = to_string(format);
    j["params"] = params;
    j["suites"] = suites;
    j["star"] = star;
    j["metric"] = metric;
    j["reality"] = to_string(reality);
    if (!phi_text.empty()) j["phi"] = phi_text;
    return j;
}

// ---------------------------------------------------------------- oracle

std::uint64_t commutative_hilbert_count(const SpaceSpec& spec, int d)
{
    if (d < 0) return 0;
    std::size_t dd = static_cast<std::size_t>(d);
    // series truncated at degree d
    std::vector<std::uint64_t> series(dd + 1, 0);
    series[0] = 1;
    auto times = [&](const std::vector<std::uint64_t>& f) {
        std::vector<std::uint64_t> out(dd + 1, 0);
        for (std::size_t a = 0; a <= dd; ++a)
            for (std::size_t b = 0; a + b <= dd; ++b) out[a + b] += series[a] * f[b];
        series = out;
    };
    std::vector<std::uint64_t> free_letter(dd + 1, 1);
    // a Laurent letter and an exclusive pair have the same count: 1, 2, 2, ...
    std::vector<std::uint64_t> two(dd + 1, 2);
    two[0] = 1;
    IndexScheme sch = IndexScheme::make(spec.family, spec.n);
    int per_copy = sch.size() * (spec.kind == AlgebraKind::heisenberg ? 2 : 1);
    if (spec.kind == AlgebraKind::free) {
        std::uint64_t g = static_cast<std::uint64_t>(per_copy) * static_cast<std::uint64_t>(spec.copies), v = 1;
        for (int k = 0; k < d; ++k) v *= g;
        return v;
    }
    for (int c = 1; c <= spec.copies; ++c) {
        bool ext = spec.extended && c == (spec.sign == Sign::minus ? 1 : spec.copies);
        if (!ext) {
            for (int k = 0; k < per_copy; ++k) times(free_letter);
            continue;
        }
        int rank = spec.n / 2;
        int laurent = 1 + rank - (spec.sphere ? 1 : 0);
        for (int k = 0; k < laurent + rank; ++k) times(two);
    }
    return series[dd];
}

namespace {

// ---------------------------------------------------------------- checks

struct Check {
    Check(std::string s, std::string n) : suite(std::move(s)), name(std::move(n)) {}

    std::string suite;
    std::string name;
    bool pass = true;
    bool skipped = false;
    std::string detail;
    json residuals = json::array();
};

json residual_json(const std::string& label, const NCPoly& p, const Space& s)
{
    return {{"label", label}, {"residual", format_exact(p, s.algebra)}, {"text", format_text(p, s.algebra, s.ctx)}};
}

json check_json(const Check& c)
{
    json j{{"suite", c.suite}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"residuals", c.residuals}};
    if (c.skipped) j["skipped"] = true;
    return j;
}

void add_residuals(Check& c, const std::vector<Residual>& rs, const Space& s)
{
    for (const auto& r : rs) c.residuals.push_back(residual_json(r.label, r.residual, s));
}

std::map<std::string, Scalar> parse_assignments(const RunConfig& cfg, const Space& s)
{
    std::map<std::string, Scalar> out;
    for (const auto& [name, text] : cfg.params) {
        NCPoly p = parse_expression(text, s);
        if (p.max_length() > 0) throw UsageError("parameter '" + name + "' must be a scalar");
        Scalar v = p.constant_term();
        if (v.has_params()) throw UsageError("parameter '" + name + "' must not depend on other parameters");
        out[name] = v;
    }
    return out;
}

std::string matrix_detail(const SparseMatrix& m)
{
    return m.is_zero() ? "zero residual" : std::to_string(m.nonzeros()) + " nonzero residual entries";
}

Check matrix_check(const std::string& suite, const std::string& name, const SparseMatrix& residual)
{
    Check c{suite, name};
    c.pass = residual.is_zero();
    c.detail = matrix_detail(residual);
    return c;
}

void suite_ybe(const Space& s, std::vector<Check>& out)
{
    out.push_back(matrix_check("ybe", "braid relation for " + s.scheme.label(), yang_baxter_residual(s.rhat)));
}

void suite_minpoly(const Space& s, std::vector<Check>& out)
{
    out.push_back(
        matrix_check("minpoly", "minimal polynomial of " + s.scheme.label(), minimal_polynomial_residual(s.rhat, s.ctx).matrix()));
}

void suite_projectors(const Space& s, std::vector<Check>& out)
{
    std::vector<std::pair<std::string, const TensorOperator*>> ps = {{"P_s", &s.proj.sym}, {"P_a", &s.proj.antisym}};
    if (s.proj.trace) ps.push_back({"P_t", &*s.proj.trace});
    TensorOperator sum(s.scheme), recon(s.scheme);
    std::vector<Scalar> lambdas = {s.proj.lambda_sym, s.proj.lambda_antisym};
    if (s.proj.lambda_trace) lambdas.push_back(*s.proj.lambda_trace);
    for (std::size_t a = 0; a < ps.size(); ++a) {
        const auto& pa = *ps[a].second;
        out.push_back(matrix_check("projectors", ps[a].first + " idempotent", (pa * pa - pa).matrix()));
        for (std::size_t b = a + 1; b < ps.size(); ++b)
            out.push_back(matrix_check("projectors", ps[a].first + " " + ps[b].first + " orthogonal",
                                       (pa * *ps[b].second).matrix() + (*ps[b].second * pa).matrix()));
        sum = sum + pa;
        recon = recon + pa.scaled(lambdas[a]);
    }
    out.push_back(matrix_check("projectors", "completeness", (sum - TensorOperator::identity(s.scheme)).matrix()));
    out.push_back(matrix_check("projectors", "eigenvalue reconstruction",
                               (recon - normalized_rhat(s.rhat, s.ctx)).matrix()));
    if (s.metric)
        out.push_back(matrix_check("projectors", "P_t from the metric equals the spectral P_t",
                                   (trace_projector_from_metric(*s.metric, s.ctx) - *s.proj.trace).matrix()));
}

void suite_metric(const Space& s, std::vector<Check>& out)
{
    if (!s.metric) throw UsageError(s.scheme.label() + " has no invariant metric; the metric suite needs so(N)");
    const Metric& g = *s.metric;
    SparseMatrix prod(s.scheme.size());
    for (int i : s.scheme.indices())
        for (int k : s.scheme.indices()) {
            Scalar v;
            for (int j : s.scheme.indices()) v += g.g_lower(i, j) * g.g_upper(j, k);
            if (i == k) v -= Scalar(1L);
            if (!v.is_zero()) prod.set(s.scheme.pos(i), s.scheme.pos(k), v);
        }
    out.push_back(matrix_check("metric", "g_{ij} g^{jk} = delta", prod));
    Check c{"metric", "trace norm g^{sm} g_{sm}"};
    c.detail = s.ctx.format(g.trace_norm());
    out.push_back(c);
    out.push_back(matrix_check("metric", "P_t from the metric equals the spectral P_t",
                               (trace_projector_from_metric(g, s.ctx) - *s.proj.trace).matrix()));
}

void suite_confluence(const Space& s, const RunConfig& cfg, std::vector<Check>& out)
{
    int degree = std::max(cfg.max_degree, 3);
    auto rep = overlap_confluence_check(s.algebra, degree, cfg.threads);
    Check c{"confluence", "overlap ambiguities up to degree " + std::to_string(degree)};
    c.pass = rep.pass();
    c.detail = std::to_string(rep.ambiguities) + " ambiguities, " + std::to_string(rep.residuals.size()) + " unresolved";
    for (const auto& r : rep.residuals) {
        std::string w;
        for (GenId g : r.overlap) w += (w.empty() ? "" : "*") + token(decode(g));
        c.residuals.push_back(residual_json(w, r.residual, s));
    }
    out.push_back(c);
}

void suite_hilbert(const Space& s, const RunConfig& cfg, std::vector<Check>& out)
{
    for (int d = 0; d <= cfg.max_degree + 1; ++d) {
        std::uint64_t got = hilbert_count(s.algebra, d), want = commutative_hilbert_count(s.spec, d);
        Check c{"hilbert", "normal words of degree " + std::to_string(d)};
        c.pass = got == want;
        c.detail = std::to_string(got) + " (commutative model " + std::to_string(want) + ")";
        out.push_back(c);
    }
}

bool coordinate_letter(GenId g)
{
    GenKind k = decode(g).kind;
    return k == GenKind::x || k == GenKind::d;
}

void suite_classical(const Space& s, std::vector<Check>& out)
{
    // R-hat tends to the flip
    {
        Check c{"classical", "R-hat at q = 1 is the permutation"};
        int bad = 0;
        for (int i : s.scheme.indices())
            for (int j : s.scheme.indices())
                for (int h : s.scheme.indices())
                    for (int k : s.scheme.indices()) {
                        ClassicalValue v = eval_classical(s.rhat.at(i, j, h, k));
                        Scalar want((i == k && j == h) ? 1L : 0L);
                        if (v.pole || v.value != want) ++bad;
                    }
        c.pass = bad == 0;
        c.detail = std::to_string(bad) + " mismatching entries";
        out.push_back(c);
    }
    // coordinate rules become commutativity (and d x = 1 + x d); on the
    // sphere, up to a multiple of the classical relation r^2 - 1
    std::map<Word, Scalar> sphere_rel;
    if (s.spec.sphere) {
        NCPoly rsq = s.radius_square(s.extended_copy, s.scheme.n() / 2);
        for (const auto& [w, cf] : rsq.terms()) {
            Word key = w;
            std::sort(key.begin(), key.end());
            sphere_rel[key] += eval_classical(cf).value;
        }
        sphere_rel[Word{}] -= Scalar(1L);
    }
    int checked = 0, skipped = 0, bad = 0;
    Check c{"classical", "rules at q = 1"};
    for (const auto& rule : s.algebra.rules()) {
        bool coords = std::all_of(rule.lhs.begin(), rule.lhs.end(), coordinate_letter);
        for (const auto& [w, cf] : rule.rhs.terms())
            coords = coords && std::all_of(w.begin(), w.end(), coordinate_letter);
        if (!coords) continue;
        std::map<Word, Scalar> diff;
        bool pole = false;
        for (const auto& [w, cf] : rule.rhs.terms()) {
            ClassicalValue v = eval_classical(cf);
            if (v.pole) pole = true;
            Word key = w;
            std::sort(key.begin(), key.end());
            diff[key] += v.value;
        }
        if (pole) {
            ++skipped;
            continue;
        }
        ++checked;
        Word key = rule.lhs;
        std::sort(key.begin(), key.end());
        diff[key] -= Scalar(1L);
        if (rule.lhs.size() == 2) {
            Generator a = decode(rule.lhs[0]), b = decode(rule.lhs[1]);
            if (a.copy == b.copy && a.index == b.index) {
                if (a.kind == GenKind::d && b.kind == GenKind::x) diff[Word{}] -= Scalar(1L);
                if (a.kind == GenKind::x && b.kind == GenKind::d) diff[Word{}] += Scalar(1L);
            }
        }
        if (!sphere_rel.empty() && !diff[Word{}].is_zero()) {
            Scalar lambda = -diff[Word{}];
            for (const auto& [w, v] : sphere_rel) diff[w] -= lambda * v;
        }
        bool ok = std::all_of(diff.begin(), diff.end(), [](const auto& kv) { return kv.second.is_zero(); });
        if (!ok) {
            ++bad;
            std::string lhs;
            for (GenId g : rule.lhs) lhs += (lhs.empty() ? "" : "*") + token(decode(g));
            c.residuals.push_back(residual_json(lhs, rule.rhs, s));
        }
    }
    c.pass = bad == 0;
    c.detail = std::to_string(checked) + " rules checked, " + std::to_string(skipped) + " with poles skipped";
    out.push_back(c);
    if (s.scheme.family() == Family::so && s.scheme.n() % 2 == 1) {
        Check g{"classical", "gamma_0 at q = 1"};
        Scalar g0 = -(s.ctx.q_pow(-1, 2) * s.ctx.h().inverse());
        ClassicalValue v = eval_classical(g0);
        g.pass = v.pole;
        g.detail = v.pole ? "pole of order " + std::to_string(v.pole_order) + " (no undeformed analog)" : "finite";
        out.push_back(g);
    }
}

void suite_star(const Space& s, std::vector<Check>& out)
{
    StarReport rep = verify_star_structure(s, BarTable{});
    Check c{"star", "star structure on " + s.algebra.info().label};
    c.pass = rep.pass();
    c.detail = std::string(rep.involutive ? "involutive" : "not involutive") + ", " +
               (rep.relations_preserved ? "relations preserved" : "relations not preserved");
    if (rep.derivative_sign != 0) c.detail += ", derivative sign q^(" + std::string(rep.derivative_sign > 0 ? "+" : "-") + "N)";
    add_residuals(c, rep.failures, s);
    out.push_back(c);
}

void suite_exchange(const Space& s, const RunConfig& cfg, std::vector<Check>& out)
{
    if (!s.extended_copy) throw UsageError("the exchange suite needs an extended so(N) build (N = 3 or 5)");
    PhiTable phi = build_phi_euclidean(s, s.spec.sign, parse_assignments(cfg, s), cfg.reality);
    UnbraidReport rep = verify_phi_exchange(phi, s);
    Check c{"exchange", "exchange relation and antipode of the realization"};
    c.pass = rep.pass();
    c.detail = std::to_string(rep.checks) + " identities, orientation " + to_string(phi.shape);
    add_residuals(c, rep.relation_failures, s);
    out.push_back(c);
}

std::string render_checks(const std::string& title, const std::vector<Check>& checks, bool pass)
{
    std::ostringstream os;
    os << title << "\n";
    for (const auto& c : checks) {
        os << (c.skipped ? "SKIP" : c.pass ? "PASS" : "FAIL") << "  " << c.suite << ": " << c.name;
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        os << "\n";
        for (const auto& r : c.residuals)
            os << "      " << r.at("label").get<std::string>() << ": " << r.at("text").get<std::string>() << "\n";
    }
    os << (pass ? "all checks passed" : "some checks failed") << "\n";
    return os.str();
}

std::string latex_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '_' || c == '&' || c == '%' || c == '#') out += '\\';
        out += c;
    }
    return out;
}

std::string render_checks_latex(const std::string& title, const std::vector<Check>& checks)
{
    std::ostringstream os;
    os << "% " << title << "\n\\begin{tabular}{lll}\n";
    for (const auto& c : checks)
        os << latex_escape(c.suite) << " & " << latex_escape(c.name) << " & " << (c.pass ? "pass" : "fail") << " \\\\\n";
    os << "\\end{tabular}\n";
    return os.str();
}

RunOutput finish_checks(const RunConfig& cfg, const std::string& command, const std::string& title,
                        const std::vector<Check>& checks)
{
    RunOutput out;
    out.pass = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass || c.skipped; });
    out.report = {{"command", command}, {"config", cfg.to_json()}, {"pass", out.pass}, {"checks", json::array()}};
    for (const auto& c : checks) out.report["checks"].push_back(check_json(c));
    switch (cfg.format) {
    case OutputFormat::json: out.rendered = out.report.dump(2) + "\n"; break;
    case OutputFormat::text: out.rendered = render_checks(title, checks, out.pass); break;
    case OutputFormat::latex: out.rendered = render_checks_latex(title, checks); break;
    }
    return out;
}

std::string space_title(const Space& s)
{
    std::ostringstream os;
    os << s.algebra.info().label << ", M = " << s.spec.copies << ", braiding " << to_string(s.spec.sign);
    if (s.spec.kind == AlgebraKind::heisenberg) os << ", epsilon = " << s.spec.epsilon;
    return os.str();
}

} // namespace

RunOutput run_verify(const RunConfig& cfg)
{
    cfg.validate();
    Space s = build_space(cfg.spec);
    std::vector<std::string> suites = cfg.suites;
    if (suites.empty()) {
        suites = {"ybe", "minpoly", "projectors", "confluence", "hilbert", "classical"};
        if (cfg.spec.extended && !cfg.spec.sphere)
            suites.push_back("exchange");
    }
    if (cfg.metric && std::find(suites.begin(), suites.end(), "metric") == suites.end()) suites.push_back("metric");
    if (cfg.star && std::find(suites.begin(), suites.end(), "star") == suites.end()) suites.push_back("star");
    std::vector<Check> checks;
    for (const auto& su : suites) {
        if (su == "ybe") suite_ybe(s, checks);
        else if (su == "minpoly") suite_minpoly(s, checks);
        else if (su == "projectors") suite_projectors(s, checks);
        else if (su == "metric") suite_metric(s, checks);
        else if (su == "confluence") suite_confluence(s, cfg, checks);
        else if (su == "hilbert") suite_hilbert(s, cfg, checks);
        else if (su == "classical") suite_classical(s, checks);
        else if (su == "star") suite_star(s, checks);
        else if (su == "exchange") suite_exchange(s, cfg, checks);
    }
    return finish_checks(cfg, "verify", "verify: " + space_title(s), checks);
}

// ---------------------------------------------------------------- unbraid

namespace {

struct Family_ {
    int step = 0;
    int host = 0;                   // original label
    std::vector<int> copies;        // original labels, local order
    std::vector<std::pair<std::string, NCPoly>> gens;  // name, image
    const Space* space = nullptr;
};

std::string y_name(int copy, int index, const IndexScheme& sch)
{
    return "y^{" + std::to_string(copy) + "," + sch.index_name(index) + "}";
}

void check_unbraid_spec(const RunConfig& cfg)
{
    const SpaceSpec& sp = cfg.spec;
    if (sp.family != Family::so) throw UsageError("unbraiding is provided for so(N) quantum Euclidean spaces");
    if (sp.n % 2 == 0)
        throw UsageError("even N is not supported: the realization needs L^{+-1}_1 among the generators of the algebra");
    if (sp.copies < 2) throw UsageError("unbraiding needs at least two copies (M >= 2)");
    if (cfg.phi_text.empty()) {
        if (sp.kind != AlgebraKind::quantum_space)
            throw UsageError("the built-in realization covers quantum Euclidean spaces; supply a realization table for other algebras");
        if (sp.n > 3) throw UsageError("multi-copy extended builds are supported for N = 3 only");
        if (sp.sphere) throw UsageError("the built-in unbraiding runs on the extended space (the sphere quotient is not iterated)");
    }
}

} // namespace

RunOutput run_unbraid(const RunConfig& cfg)
{
    check_unbraid_spec(cfg);
    RunConfig c2 = cfg;
    std::vector<Check> checks;
    std::vector<Family_> families;
    std::vector<Space> spaces;  // keeps the step spaces alive for rendering
    spaces.reserve(static_cast<std::size_t>(cfg.spec.copies));

    if (!cfg.phi_text.empty()) {
        // realizations use the radii and (x^0)^{-1} of the host copy
        if (c2.spec.kind == AlgebraKind::quantum_space) c2.spec.extended = true;
        c2.validate();
        spaces.push_back(build_space(c2.spec));
        const Space& s = spaces.back();
        PhiTable phi = parse_phi_table(cfg.phi_text, s);
        UnbraidReport ex = verify_phi_exchange(phi, s);
        Check ce{"exchange", "exchange relation and antipode of the supplied realization"};
        ce.pass = ex.pass();
        ce.detail = std::to_string(ex.checks) + " identities, orientation " + to_string(phi.shape);
        add_residuals(ce, ex.relation_failures, s);
        checks.push_back(ce);
        UnbraidReport ur = verify_unbraiding(phi, s);
        Check cu{"unbraid", "decoupled generators (host copy " + std::to_string(phi.host_copy) + ")"};
        cu.pass = ur.pass();
        cu.detail = std::to_string(ur.checks) + " identities";
        add_residuals(cu, ur.commutation_failures, s);
        add_residuals(cu, ur.relation_failures, s);
        add_residuals(cu, ur.residual_braiding_failures, s);
        checks.push_back(cu);
        Family_ f;
        f.step = 1;
        f.host = phi.host_copy;
        f.space = &s;
        for (int c = 1; c <= s.spec.copies; ++c) f.copies.push_back(c);
        for (int c = 1; c <= s.spec.copies; ++c) {
            if (c == phi.host_copy) continue;
            auto im = chi_images(phi, s, c);
            for (int i : s.scheme.indices()) f.gens.push_back({y_name(c, i, s.scheme), im.of({c, GenKind::x, i})});
        }
        families.push_back(std::move(f));
        if (cfg.star) {
            UnbraidReport sr = verify_star_chi(phi, s);
            Check cs{"star", "decoupled generators are self-adjoint"};
            cs.pass = sr.pass();
            add_residuals(cs, sr.relation_failures, s);
            checks.push_back(cs);
        }
    } else {
        SpaceSpec spec = cfg.spec;
        spec.extended = true;
        c2.spec = spec;
        c2.validate();
        int m = spec.copies;
        for (int k = 1; k < m; ++k) {
            SpaceSpec local = spec;
            local.copies = m - k + 1;
            spaces.push_back(build_quantum_space(local));
            const Space& s = spaces.back();
            auto assign = parse_assignments(cfg, s);
            PhiTable phi = build_phi_euclidean(s, spec.sign, assign, cfg.reality);
            std::vector<int> labels;
            for (int c = 1; c <= local.copies; ++c) labels.push_back(spec.sign == Sign::minus ? c + k - 1 : c);
            auto label = [&](int local_copy) { return labels[static_cast<std::size_t>(local_copy - 1)]; };
            std::string step = "step " + std::to_string(k);

            UnbraidReport ex = verify_phi_exchange(phi, s);
            Check ce{"exchange", step + ": exchange relation and antipode"};
            ce.pass = ex.pass();
            ce.detail = std::to_string(ex.checks) + " identities, orientation " + to_string(phi.shape);
            add_residuals(ce, ex.relation_failures, s);
            checks.push_back(ce);

            UnbraidReport ur = verify_unbraiding(phi, s);
            Check cc{"unbraid", step + ": commutation with copy " + std::to_string(label(phi.host_copy))};
            cc.pass = ur.commutation_failures.empty();
            add_residuals(cc, ur.commutation_failures, s);
            Check cr{"unbraid", step + ": copy relations of the decoupled generators"};
            cr.pass = ur.relation_failures.empty();
            add_residuals(cr, ur.relation_failures, s);
            Check cb{"unbraid", step + ": residual braiding among the remaining copies"};
            cb.pass = ur.residual_braiding_failures.empty();
            cb.detail = local.copies > 2 ? "cross relations hold for the decoupled generators" : "single remaining copy";
            add_residuals(cb, ur.residual_braiding_failures, s);
            Check ci{"unbraid", step + ": generator-level injectivity"};
            ci.pass = ur.injective;
            for (const auto& n : ur.notes) ci.detail += (ci.detail.empty() ? "" : "; ") + n;
            checks.insert(checks.end(), {cc, cr, cb, ci});

            Family_ f;
            f.step = k;
            f.host = label(phi.host_copy);
            f.copies = labels;
            f.space = &s;
            Reducer red(s.algebra);
            bool radius_ok = true;
            for (int c = 1; c <= local.copies; ++c) {
                if (c == phi.host_copy) continue;
                auto im = chi_images(phi, s, c);
                for (int i : s.scheme.indices())
                    f.gens.push_back({y_name(label(c), i, s.scheme), im.of({c, GenKind::x, i})});
                NCPoly ry;
                for (int h : s.scheme.indices())
                    ry += red.multiply(im.of({c, GenKind::x, h}), im.of({c, GenKind::x, -h})).scaled(s.metric->g_lower(h, -h));
                if (ry != red.normal_form(s.radius_square(c, s.scheme.n() / 2))) radius_ok = false;
            }
            Check cradius{"unbraid", step + ": radius of the decoupled copies is unchanged"};
            cradius.pass = radius_ok;
            checks.push_back(cradius);
            if (cfg.star) {
                UnbraidReport sr = verify_star_chi(phi, s);
                Check cs{"star", step + ": decoupled generators are self-adjoint (" + to_string(cfg.reality) + " reality)"};
                cs.pass = sr.pass();
                for (const auto& n : sr.notes) cs.detail += (cs.detail.empty() ? "" : "; ") + n;
                add_residuals(cs, sr.relation_failures, s);
                checks.push_back(cs);
            }
            families.push_back(std::move(f));
        }
    }

    RunOutput out;
    out.pass = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    out.report = {{"command", "unbraid"}, {"config", cfg.to_json()}, {"pass", out.pass}, {"checks", json::array()},
                  {"families", json::array()}};
    for (const auto& c : checks) out.report["checks"].push_back(check_json(c));
    for (const auto& f : families) {
        json jf{{"step", f.step}, {"host_copy", f.host}, {"copies", f.copies}, {"generators", json::array()}};
        for (const auto& [name, p] : f.gens)
            jf["generators"].push_back({{"name", name},
                                        {"text", format_text(p, f.space->algebra, f.space->ctx)},
                                        {"exact", format_exact(p, f.space->algebra)},
                                        {"latex", format_latex(p, f.space->algebra, f.space->ctx, f.space->scheme)}});
        out.report["families"].push_back(jf);
    }

    std::ostringstream os;
    switch (cfg.format) {
    case OutputFormat::json: os << out.report.dump(2) << "\n"; break;
    case OutputFormat::text:
        for (const auto& f : families) {
            os << "step " << f.step << ": copy " << f.host << " fixed";
            if (f.step > 1) os << " (generators of copies";
            if (f.step > 1)
                for (std::size_t i = 0; i < f.copies.size(); ++i) os << " " << f.copies[i] << "<-x[" << i + 1 << ",.]";
            if (f.step > 1) os << ")";
            os << "\n";
            for (const auto& [name, p] : f.gens) os << "  " << name << " = " << format_text(p, f.space->algebra, f.space->ctx) << "\n";
        }
        os << render_checks("checks:", checks, out.pass);
        break;
    case OutputFormat::latex:
        for (const auto& f : families) {
            os << "% step " << f.step << ": copy " << f.host << " fixed\n\\begin{eqnarray}\n";
            for (std::size_t i = 0; i < f.gens.size(); ++i) {
                const auto& [name, p] = f.gens[i];
                os << "&&" << name << " = " << format_latex(p, f.space->algebra, f.space->ctx, f.space->scheme)
                   << (i + 1 < f.gens.size() ? " \\nonumber \\\\" : "") << "\n";
            }
            os << "\\end{eqnarray}\n";
        }
        break;
    }
    out.rendered = os.str();
    return out;
}

// ---------------------------------------------------------------- relations

RunOutput run_relations(const RunConfig& cfg)
{
    cfg.validate();
    Space s = build_space(cfg.spec);
    std::vector<Rule> rules = s.algebra.rules();
    std::sort(rules.begin(), rules.end(),
              [&](const Rule& a, const Rule& b) { return s.algebra.compare(a.lhs, b.lhs) < 0; });
    std::map<std::string, int> counts;
    auto classify = [](const Rule& r) {
        std::set<GenKind> kinds;
        for (GenId g : r.lhs) kinds.insert(decode(g).kind);
        std::set<int> copies;
        for (GenId g : r.lhs) copies.insert(decode(g).copy);
        std::string base;
        if (kinds == std::set<GenKind>{GenKind::x}) base = "x";
        else if (kinds == std::set<GenKind>{GenKind::d}) base = "d";
        else if (kinds == std::set<GenKind>{GenKind::x, GenKind::d}) base = "mixed";
        else base = "extension";
        return copies.size() > 1 ? "cross-" + base : base;
    };
    RunOutput out;
    out.report = {{"command", "relations"}, {"config", cfg.to_json()}, {"pass", true}, {"rules", json::array()}};
    std::ostringstream text, latex;
    text << "relations: " << space_title(s) << "\n";
    latex << "% " << space_title(s) << "\n\\begin{eqnarray}\n";
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const Rule& r = rules[i];
        std::string lhs, lhs_tex;
        for (GenId g : r.lhs) {
            lhs += (lhs.empty() ? "" : "*") + token(decode(g));
            lhs_tex += (lhs_tex.empty() ? "" : " ") + latex_generator(decode(g), s.scheme);
        }
        std::string kind = classify(r);
        ++counts[kind];
        out.report["rules"].push_back({{"lhs", lhs},
                                       {"kind", kind},
                                       {"rhs", format_exact(r.rhs, s.algebra)},
                                       {"text", format_text(r.rhs, s.algebra, s.ctx)}});
        text << "  " << lhs << " -> " << format_text(r.rhs, s.algebra, s.ctx) << "\n";
        latex << lhs_tex << " &=& " << format_latex(r.rhs, s.algebra, s.ctx, s.scheme)
              << (i + 1 < rules.size() ? " \\\\" : "") << "\n";
    }
    out.report["counts"] = counts;
    text << rules.size() << " rules";
    for (const auto& [k, n] : counts) text << ", " << n << " " << k;
    text << "\n";
    latex << "\\end{eqnarray}\n";
    switch (cfg.format) {
    case OutputFormat::json: out.rendered = out.report.dump(2) + "\n"; break;
    case OutputFormat::text: out.rendered = text.str(); break;
    case OutputFormat::latex: out.rendered = latex.str(); break;
    }
    return out;
}

} // namespace qub
