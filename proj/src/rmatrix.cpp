#include "qub/rmatrix.hpp"

#include "qub/error.hpp"

#include <algorithm>

namespace qub {

std::string to_string(Family f)
{
    return f == Family::sl ? "sl" : "so";
}

Family parse_family(const std::string& s)
{
    if (s == "sl") return Family::sl;
    if (s == "so") return Family::so;
    throw UsageError("unknown family '" + s + "' (expected sl or so)");
}

std::string to_string(Sign s)
{
    return s == Sign::plus ? "plus" : "minus";
}

Sign parse_sign(const std::string& s)
{
    if (s == "plus" || s == "+") return Sign::plus;
    if (s == "minus" || s == "-") return Sign::minus;
    throw UsageError("unknown sign '" + s + "' (expected plus or minus)");
}

// ---------------------------------------------------------------- scheme

IndexScheme IndexScheme::make(Family family, int n)
{
    if (n < 2) throw UsageError("N must be at least 2");
    if (family == Family::so && n < 3) throw UsageError("so(N) requires N >= 3");
    IndexScheme s;
    s.family_ = family;
    s.n_ = n;
    if (family == Family::sl) {
        for (int i = 1; i <= n; ++i) s.indices_.push_back(i);
    } else {
        int r = n / 2;
        for (int i = -r; i <= r; ++i) {
            if (i == 0 && n % 2 == 0) continue;
            s.indices_.push_back(i);
        }
    }
    return s;
}

int IndexScheme::pos(int index) const
{
    auto it = std::find(indices_.begin(), indices_.end(), index);
    if (it == indices_.end()) throw UsageError("index " + std::to_string(index) + " not in " + label());
    return static_cast<int>(it - indices_.begin());
}

bool IndexScheme::has_index(int index) const
{
    return std::find(indices_.begin(), indices_.end(), index) != indices_.end();
}

int IndexScheme::twice_rho(int index) const
{
    if (family_ == Family::sl || index == 0) return 0;
    int sign = index > 0 ? 1 : -1;
    int a = std::abs(index);
    // odd: rho_{-a} = a - 1/2 ; even: rho_{-a} = a - 1
    int twice_abs = n_ % 2 == 1 ? 2 * a - 1 : 2 * (a - 1);
    return -sign * twice_abs;
}

std::string IndexScheme::index_name(int index) const
{
    // so(3) is written with -, 0, +
    if (family_ == Family::so && n_ == 3 && index != 0) return index < 0 ? "-" : "+";
    return std::to_string(index);
}

std::string IndexScheme::label() const
{
    return to_string(family_) + "(" + std::to_string(n_) + ")";
}

// ---------------------------------------------------------------- TensorOperator

TensorOperator::TensorOperator(IndexScheme scheme)
    : scheme_(std::move(scheme)), m_(scheme_.size() * scheme_.size())
{
}

TensorOperator::TensorOperator(IndexScheme scheme, SparseMatrix m) : scheme_(std::move(scheme)), m_(std::move(m)) {}

TensorOperator TensorOperator::identity(const IndexScheme& scheme)
{
    return {scheme, SparseMatrix::identity(scheme.size() * scheme.size())};
}

int TensorOperator::row_of(int i, int j) const
{
    return scheme_.pos(i) * scheme_.size() + scheme_.pos(j);
}

Scalar TensorOperator::at(int i, int j, int h, int k) const
{
    return m_.get(row_of(i, j), row_of(h, k));
}

void TensorOperator::set(int i, int j, int h, int k, const Scalar& v)
{
    m_.set(row_of(i, j), row_of(h, k), v);
}

void TensorOperator::add(int i, int j, int h, int k, const Scalar& v)
{
    m_.add(row_of(i, j), row_of(h, k), v);
}

TensorOperator TensorOperator::operator*(const TensorOperator& o) const
{
    return {scheme_, m_ * o.m_};
}

TensorOperator TensorOperator::operator+(const TensorOperator& o) const
{
    return {scheme_, m_ + o.m_};
}

TensorOperator TensorOperator::operator-(const TensorOperator& o) const
{
    return {scheme_, m_ - o.m_};
}

TensorOperator TensorOperator::scaled(const Scalar& s) const
{
    return {scheme_, m_.scaled(s)};
}

TensorOperator TensorOperator::inverse() const
{
    return {scheme_, m_.inverse()};
}

TensorOperator TensorOperator::factor_swapped() const
{
    TensorOperator out(scheme_);
    for (int i : scheme_.indices())
        for (int j : scheme_.indices())
            for (int h : scheme_.indices())
                for (int k : scheme_.indices()) out.set(j, i, k, h, at(i, j, h, k));
    return out;
}

TensorOperator TensorOperator::transposed() const
{
    return {scheme_, m_.transposed()};
}

TensorOperator TensorOperator::map_entries(const std::function<Scalar(const Scalar&)>& fn) const
{
    SparseMatrix out(m_.dim());
    for (int r = 0; r < m_.dim(); ++r)
        for (const auto& [c, v] : m_.row(r)) out.set(r, c, fn(v));
    return {scheme_, out};
}

// ---------------------------------------------------------------- R-hat

namespace {

// e^a_b has its single 1 in column a and row b.
void add_term(TensorOperator& r, RLayout layout, const Scalar& c, int a, int b, int cc, int d)
{
    // A = e^a_b : A^{row b}_{col a};  B = e^cc_d : B^{row d}_{col cc}
    if (layout == RLayout::first_factor_outer) r.add(b, d, a, cc, c);
    else r.add(d, b, cc, a, c);
}

} // namespace

TensorOperator build_rhat(const IndexScheme& scheme, const QContext& ctx, RLayout layout)
{
    if (ctx.n() != scheme.n()) throw UsageError("QContext N does not match the index scheme");
    TensorOperator r(scheme);
    const auto& idx = scheme.indices();
    Scalar one(1L);
    Scalar q = ctx.q();
    Scalar k = ctx.k();
    if (scheme.family() == Family::sl) {
        Scalar pref = ctx.q_pow(-1, scheme.n());
        for (int i : idx) add_term(r, layout, pref * q, i, i, i, i);
        for (int i : idx)
            for (int j : idx)
                if (i != j) add_term(r, layout, pref, j, i, i, j);
        for (int i : idx)
            for (int j : idx)
                if (i < j) add_term(r, layout, pref * k, i, i, j, j);
        return r;
    }
    Scalar qinv = ctx.q_pow(-1);
    for (int i : idx)
        if (i != 0) add_term(r, layout, q, i, i, i, i);
    for (int i : idx)
        for (int j : idx)
            if ((i != j && i != -j) || (i == 0 && j == 0)) add_term(r, layout, one, j, i, i, j);
    for (int i : idx)
        if (i != 0) add_term(r, layout, qinv, -i, i, i, -i);
    for (int i : idx)
        for (int j : idx) {
            if (!(i < j)) continue;
            add_term(r, layout, k, i, i, j, j);
            long twice = -scheme.twice_rho(i) + scheme.twice_rho(j);
            add_term(r, layout, -(k * ctx.q_pow(twice, 2)), -j, i, j, -i);
        }
    return r;
}

TensorOperator normalized_rhat(const TensorOperator& rhat, const QContext& ctx)
{
    if (rhat.scheme().family() == Family::sl) return rhat.scaled(ctx.q_pow(1, rhat.scheme().n()));
    return rhat;
}

std::vector<Scalar> rhat_eigenvalues(const IndexScheme& scheme, const QContext& ctx)
{
    std::vector<Scalar> ev{ctx.q(), -ctx.q_pow(-1)};
    if (scheme.family() == Family::so) ev.push_back(ctx.q_pow(1 - scheme.n()));
    return ev;
}

Metric build_metric(const IndexScheme& scheme, const QContext& ctx)
{
    if (scheme.family() != Family::so) throw UsageError("the metric exists only for so(N); " + scheme.label() + " has none");
    Metric g;
    g.scheme = scheme;
    auto n = static_cast<std::size_t>(scheme.size());
    g.lower.assign(n, std::vector<Scalar>(n));
    g.upper.assign(n, std::vector<Scalar>(n));
    for (int i : scheme.indices()) {
        Scalar v = ctx.q_pow(-scheme.twice_rho(i), 2);
        auto p = static_cast<std::size_t>(scheme.pos(i));
        auto m = static_cast<std::size_t>(scheme.pos(-i));
        g.lower[p][m] = v;
        g.upper[p][m] = v;
    }
    // g^{ij} g_{jk} = delta^i_k
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t kk = 0; kk < n; ++kk) {
            Scalar acc;
            for (std::size_t j = 0; j < n; ++j) acc += g.upper[i][j] * g.lower[j][kk];
            if (acc != Scalar(i == kk ? 1L : 0L)) throw ConsistencyError("metric is not invertible as stated");
        }
    return g;
}

Scalar Metric::g_lower(int i, int j) const
{
    return lower[static_cast<std::size_t>(scheme.pos(i))][static_cast<std::size_t>(scheme.pos(j))];
}

Scalar Metric::g_upper(int i, int j) const
{
    return upper[static_cast<std::size_t>(scheme.pos(i))][static_cast<std::size_t>(scheme.pos(j))];
}

Scalar Metric::trace_norm() const
{
    Scalar acc;
    for (int s : scheme.indices())
        for (int m : scheme.indices()) acc += g_upper(s, m) * g_lower(s, m);
    return acc;
}

Projectors build_projectors(const TensorOperator& rhat, const QContext& ctx)
{
    TensorOperator r = normalized_rhat(rhat, ctx);
    auto ev = rhat_eigenvalues(rhat.scheme(), ctx);
    TensorOperator id = TensorOperator::identity(rhat.scheme());
    auto spectral = [&](std::size_t which) {
        TensorOperator p = id;
        for (std::size_t o = 0; o < ev.size(); ++o) {
            if (o == which) continue;
            p = p * (r - id.scaled(ev[o])).scaled((ev[which] - ev[o]).inverse());
        }
        return p;
    };
    Projectors out;
    out.lambda_sym = ev[0];
    out.lambda_antisym = ev[1];
    out.sym = spectral(0);
    out.antisym = spectral(1);
    if (ev.size() == 3) {
        out.lambda_trace = ev[2];
        out.trace = spectral(2);
    }
    return out;
}

TensorOperator trace_projector_from_metric(const Metric& g, const QContext& /*ctx*/)
{
    TensorOperator p(g.scheme);
    Scalar norm = g.trace_norm().inverse();
    for (int i : g.scheme.indices())
        for (int j : g.scheme.indices())
            for (int k : g.scheme.indices())
                for (int l : g.scheme.indices()) {
                    Scalar v = g.g_upper(i, j) * g.g_lower(k, l);
                    if (!v.is_zero()) p.set(i, j, k, l, norm * v);
                }
    return p;
}

// ---------------------------------------------------------------- slices

LSlices::LSlices(const TensorOperator& rhat, Sign sign)
    : sign_(sign), m_(sign == Sign::plus ? rhat : rhat.inverse())
{
}

SparseMatrix LSlices::block() const
{
    const auto& s = scheme();
    int n = s.size();
    SparseMatrix b(n * n);
    for (int a : s.indices())
        for (int l : s.indices())
            for (int i : s.indices())
                for (int j : s.indices()) {
                    Scalar v = rho(a, l, i, j);
                    if (!v.is_zero()) b.set(s.pos(a) * n + s.pos(i), s.pos(l) * n + s.pos(j), v);
                }
    return b;
}

// ---------------------------------------------------------------- checks

SparseMatrix yang_baxter_residual(const TensorOperator& rhat)
{
    int n = rhat.scheme().size();
    int d = n * n * n;
    const SparseMatrix& m = rhat.matrix();
    SparseMatrix r12(d), r23(d);
    for (int row = 0; row < n * n; ++row)
        for (const auto& [col, v] : m.row(row))
            for (int c = 0; c < n; ++c) {
                r12.set(row * n + c, col * n + c, v);
                r23.set(c * n * n + row, c * n * n + col, v);
            }
    return r12 * r23 * r12 - r23 * r12 * r23;
}

TensorOperator minimal_polynomial_residual(const TensorOperator& rhat, const QContext& ctx)
{
    TensorOperator r = normalized_rhat(rhat, ctx);
    TensorOperator id = TensorOperator::identity(rhat.scheme());
    TensorOperator acc = id;
    for (const auto& lambda : rhat_eigenvalues(rhat.scheme(), ctx)) acc = acc * (r - id.scaled(lambda));
    return acc;
}

BarArrangement bar_vs_inverse(const TensorOperator& rhat)
{
    BarTable none;
    TensorOperator b = rhat.map_entries([&](const Scalar& x) { return bar(x, none); });
    TensorOperator inv = rhat.inverse();
    BarArrangement a;
    a.identity = b == inv;
    a.factor_swap = b.factor_swapped() == inv;
    a.transpose = b.transposed() == inv;
    a.swap_transpose = b.factor_swapped().transposed() == inv;
    return a;
}

} // namespace qub
