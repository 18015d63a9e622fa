#include "qub/ncalg.hpp"

#include "qub/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <thread>

namespace qub {

// ---------------------------------------------------------------- letters

GenId encode(const Generator& g)
{
    if (g.copy < 0 || g.copy > 0xffff || g.index < -2048 || g.index > 2047)
        throw UsageError("generator out of encodable range");
    return (static_cast<GenId>(g.copy) << 16) | (static_cast<GenId>(g.kind) << 12) |
           static_cast<GenId>(g.index + 2048);
}

Generator decode(GenId id)
{
    Generator g;
    g.copy = static_cast<int>(id >> 16);
    g.kind = static_cast<GenKind>((id >> 12) & 0xf);
    g.index = static_cast<int>(id & 0xfff) - 2048;
    return g;
}

std::string token(const Generator& g)
{
    std::ostringstream os;
    switch (g.kind) {
    case GenKind::x: os << "x[" << g.copy << "," << g.index << "]"; break;
    case GenKind::d: os << "d[" << g.copy << "," << g.index << "]"; break;
    case GenKind::rad: os << "r[" << g.copy << "," << g.index << "]"; break;
    case GenKind::rinv: os << "rinv[" << g.copy << "," << g.index << "]"; break;
    case GenKind::xinv: os << "xinv[" << g.copy << "," << g.index << "]"; break;
    }
    return os.str();
}

std::size_t WordHash::operator()(const Word& w) const noexcept
{
    std::size_t h = 0xcbf29ce484222325ULL;
    for (GenId g : w) {
        h ^= g;
        h *= 0x100000001b3ULL;
    }
    return h ^ w.size();
}

// ---------------------------------------------------------------- NCPoly

NCPoly NCPoly::constant(const Scalar& c)
{
    NCPoly p;
    p.add_term({}, c);
    return p;
}

NCPoly NCPoly::gen(const Generator& g, const Scalar& c)
{
    NCPoly p;
    p.add_term({encode(g)}, c);
    return p;
}

NCPoly NCPoly::word(Word w, const Scalar& c)
{
    NCPoly p;
    p.add_term(w, c);
    return p;
}

Scalar NCPoly::constant_term() const
{
    return coeff({});
}

Scalar NCPoly::coeff(const Word& w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar() : it->second;
}

std::size_t NCPoly::max_length() const
{
    std::size_t m = 0;
    for (const auto& [w, c] : terms_) m = std::max(m, w.size());
    return m;
}

void NCPoly::add_term(const Word& w, const Scalar& c)
{
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

NCPoly& NCPoly::operator+=(const NCPoly& o)
{
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o)
{
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

NCPoly NCPoly::operator-() const
{
    NCPoly p;
    for (const auto& [w, c] : terms_) p.terms_.emplace(w, -c);
    return p;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b)
{
    NCPoly p;
    for (const auto& [wa, ca] : a.terms_)
        for (const auto& [wb, cb] : b.terms_) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            p.add_term(w, ca * cb);
        }
    return p;
}

NCPoly NCPoly::scaled(const Scalar& s) const
{
    NCPoly p;
    if (s.is_zero()) return p;
    for (const auto& [w, c] : terms_) p.terms_.emplace(w, c * s);
    return p;
}

NCPoly NCPoly::map_coeffs(const std::function<Scalar(const Scalar&)>& fn) const
{
    NCPoly p;
    for (const auto& [w, c] : terms_) p.add_term(w, fn(c));
    return p;
}

// ---------------------------------------------------------------- presentation

AlgebraPresentation::AlgebraPresentation(std::vector<Generator> generators, PresentationInfo info)
    : gens_(std::move(generators)), info_(std::move(info))
{
    std::map<int, int> next_rank;
    for (const auto& g : gens_) {
        GenId id = encode(g);
        if (key_.count(id)) throw UsageError("duplicate generator " + token(g));
        int level = info_.reversed_levels ? info_.copies + 1 - g.copy : g.copy;
        if (level < 1) throw UsageError("generator copy outside 1.." + std::to_string(info_.copies));
        key_.emplace(id, std::make_pair(level, next_rank[g.copy]++));
    }
}

bool AlgebraPresentation::has_generator(const Generator& g) const
{
    return key_.count(encode(g)) != 0;
}

int AlgebraPresentation::compare_level(std::span<const GenId> a, std::span<const GenId> b, int level) const
{
    if (a.empty() && b.empty()) return 0;
    auto lvl = [&](GenId g) { return key_.at(g).first; };
    std::vector<std::size_t> pa, pb;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (lvl(a[i]) == level) pa.push_back(i);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (lvl(b[i]) == level) pb.push_back(i);
    if (pa.size() != pb.size()) return pa.size() < pb.size() ? -1 : 1;
    if (level <= 0) return 0;
    if (pa.empty()) return compare_level(a, b, level - 1);
    // segments between top-level letters, right to left
    for (std::size_t s = pa.size() + 1; s-- > 0;) {
        std::size_t a0 = s == 0 ? 0 : pa[s - 1] + 1, a1 = s == pa.size() ? a.size() : pa[s];
        std::size_t b0 = s == 0 ? 0 : pb[s - 1] + 1, b1 = s == pb.size() ? b.size() : pb[s];
        int c = compare_level(a.subspan(a0, a1 - a0), b.subspan(b0, b1 - b0), level - 1);
        if (c != 0) return c;
    }
    for (std::size_t i = 0; i < pa.size(); ++i) {
        int ra = key_.at(a[pa[i]]).second, rb = key_.at(b[pb[i]]).second;
        if (ra != rb) return ra < rb ? -1 : 1;
    }
    return 0;
}

int AlgebraPresentation::compare(std::span<const GenId> a, std::span<const GenId> b) const
{
    int top = 0;
    for (GenId g : a) {
        auto it = key_.find(g);
        if (it == key_.end()) throw UsageError("letter " + token(decode(g)) + " is not a generator of this algebra");
        top = std::max(top, it->second.first);
    }
    for (GenId g : b) {
        auto it = key_.find(g);
        if (it == key_.end()) throw UsageError("letter " + token(decode(g)) + " is not a generator of this algebra");
        top = std::max(top, it->second.first);
    }
    return compare_level(a, b, top);
}

Word AlgebraPresentation::leading_word(const NCPoly& p) const
{
    if (p.is_zero()) throw UsageError("zero polynomial has no leading word");
    const Word* best = nullptr;
    for (const auto& [w, c] : p.terms())
        if (!best || compare(w, *best) > 0) best = &w;
    return *best;
}

void AlgebraPresentation::declare_inverse(const Generator& u, const Generator& u_inv)
{
    inverse_[encode(u)] = encode(u_inv);
    inverse_[encode(u_inv)] = encode(u);
}

std::optional<GenId> AlgebraPresentation::inverse_of(GenId g) const
{
    auto it = inverse_.find(g);
    if (it == inverse_.end()) return std::nullopt;
    return it->second;
}

void AlgebraPresentation::add_rules(const std::vector<Rule>& rules)
{
    for (const auto& r : rules) {
        for (const auto& [w, c] : r.rhs.terms())
            if (compare(w, r.lhs) >= 0) throw ConsistencyError("rule right-hand side is not smaller than its leading word");
        if (find_rule(r.lhs)) throw ConsistencyError("duplicate leading word");
        rules_.push_back(r);
    }
}

void AlgebraPresentation::set_rules(std::vector<Rule> rules)
{
    rules_.clear();
    add_rules(rules);
}

std::optional<std::size_t> AlgebraPresentation::find_rule(const Word& lhs) const
{
    for (std::size_t i = 0; i < rules_.size(); ++i)
        if (rules_[i].lhs == lhs) return i;
    return std::nullopt;
}

std::vector<std::pair<Word, Scalar>> AlgebraPresentation::sorted_terms(const NCPoly& p) const
{
    std::vector<std::pair<Word, Scalar>> out(p.terms().begin(), p.terms().end());
    std::stable_sort(out.begin(), out.end(), [&](const auto& x, const auto& y) { return compare(x.first, y.first) > 0; });
    return out;
}

// ---------------------------------------------------------------- reducer

std::size_t default_step_budget()
{
    if (const char* env = std::getenv("QUB_STEP_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return 1000000;
}

namespace {
std::uint64_t pair_key(GenId a, GenId b)
{
    return (static_cast<std::uint64_t>(a) << 32) | b;
}
} // namespace

Reducer::Reducer(const AlgebraPresentation& a, std::size_t budget) : a_(a), budget_(budget)
{
    const auto& rules = a_.rules();
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const Word& l = rules[i].lhs;
        if (l.size() == 1) rule1_[l[0]] = i;
        else if (l.size() == 2) rule2_[pair_key(l[0], l[1])] = i;
        else throw UsageError("only leading words of length 1 or 2 are supported");
    }
}

void Reducer::tick(const Word& w)
{
    if (++steps_ > budget_) {
        std::string s;
        for (GenId g : w) s += (s.empty() ? "" : " ") + token(decode(g));
        throw BudgetExceeded("rewrite budget of " + std::to_string(budget_) + " steps exceeded while reducing " + s);
    }
}

bool Reducer::is_normal(const Word& w) const
{
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (rule1_.count(w[i])) return false;
        if (i + 1 < w.size() && rule2_.count(pair_key(w[i], w[i + 1]))) return false;
    }
    return true;
}

NCPoly Reducer::prepend_word(std::span<const GenId> u, const NCPoly& v)
{
    NCPoly cur = v;
    for (std::size_t i = u.size(); i-- > 0;) {
        NCPoly next;
        for (const auto& [w, c] : cur.terms()) {
            const NCPoly& r = prepend(u[i], w);
            for (const auto& [w2, c2] : r.terms()) next.add_term(w2, c * c2);
        }
        cur = std::move(next);
    }
    return cur;
}

const NCPoly& Reducer::prepend(GenId a, const Word& w)
{
    Word key;
    key.reserve(w.size() + 1);
    key.push_back(a);
    key.insert(key.end(), w.begin(), w.end());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    NCPoly result;
    if (auto r1 = rule1_.find(a); r1 != rule1_.end()) {
        tick(key);
        const NCPoly& rhs = a_.rules()[r1->second].rhs;
        NCPoly tail = NCPoly::word(w);
        for (const auto& [u, c] : rhs.terms()) result += prepend_word(u, tail).scaled(c);
    } else if (auto r2 = w.empty() ? rule2_.end() : rule2_.find(pair_key(a, w[0])); r2 != rule2_.end()) {
        tick(key);
        const NCPoly& rhs = a_.rules()[r2->second].rhs;
        NCPoly tail = NCPoly::word(Word(w.begin() + 1, w.end()));
        for (const auto& [u, c] : rhs.terms()) result += prepend_word(u, tail).scaled(c);
    } else {
        result = NCPoly::word(key);
    }
    return memo_.emplace(std::move(key), std::move(result)).first->second;
}

NCPoly Reducer::normal_form(const Word& w)
{
    steps_ = 0;
    return prepend_word(w, NCPoly::constant(Scalar(1L)));
}

NCPoly Reducer::normal_form(const NCPoly& p)
{
    steps_ = 0;
    NCPoly out;
    NCPoly one = NCPoly::constant(Scalar(1L));
    for (const auto& [w, c] : p.terms()) out += prepend_word(w, one).scaled(c);
    return out;
}

NCPoly Reducer::multiply(const NCPoly& a, const NCPoly& b)
{
    NCPoly na = normal_form(a), nb = normal_form(b);
    steps_ = 0;
    NCPoly out;
    for (const auto& [w, c] : na.terms()) out += prepend_word(w, nb).scaled(c);
    return out;
}

NCPoly Reducer::commutator(const NCPoly& a, const NCPoly& b, const Scalar& x)
{
    return multiply(a, b) - multiply(b, a).scaled(x);
}

NCPoly normal_form(const NCPoly& p, const AlgebraPresentation& a)
{
    Reducer r(a);
    return r.normal_form(p);
}

// ---------------------------------------------------------------- inversion

NCPoly monomial_inverse(const NCPoly& m, const AlgebraPresentation& a)
{
    if (m.size() != 1) throw DegenerateError("not a monomial");
    const auto& [w, c] = *m.terms().begin();
    Word inv;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        auto g = a.inverse_of(*it);
        if (!g) throw DegenerateError("letter " + token(decode(*it)) + " has no inverse in this algebra");
        inv.push_back(*g);
    }
    return NCPoly::word(inv, c.inverse());
}

std::string to_string(Triangularity t)
{
    switch (t) {
    case Triangularity::diagonal: return "diagonal";
    case Triangularity::lower: return "lower";
    case Triangularity::upper: return "upper";
    }
    return "?";
}

TriangularInverse triangular_inverse(const PolyMatrix& t, Reducer& red)
{
    std::size_t n = t.size();
    bool lower = true, upper = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (t[i][j].is_zero()) continue;
            if (j > i) lower = false;
            if (j < i) upper = false;
        }
    if (!lower && !upper) throw DegenerateError("matrix is not triangular");
    TriangularInverse out;
    out.shape = lower && upper ? Triangularity::diagonal : lower ? Triangularity::lower : Triangularity::upper;
    const auto& a = red.presentation();
    std::vector<NCPoly> dinv(n);
    for (std::size_t i = 0; i < n; ++i) dinv[i] = monomial_inverse(red.normal_form(t[i][i]), a);

    PolyMatrix b(n, std::vector<NCPoly>(n));
    for (std::size_t j = 0; j < n; ++j) {
        b[j][j] = red.normal_form(dinv[j]);
        // B T = 1 row by row: B_{jl} T_{ll} = -sum_{k strictly between} B_{jk} T_{kl}
        if (lower) {
            for (std::size_t l = j; l-- > 0;) {
                NCPoly acc;
                for (std::size_t k = l + 1; k <= j; ++k)
                    if (!b[j][k].is_zero() && !t[k][l].is_zero()) acc += red.multiply(b[j][k], t[k][l]);
                if (!acc.is_zero()) b[j][l] = red.multiply(-acc, dinv[l]);
            }
        } else {
            for (std::size_t l = j + 1; l < n; ++l) {
                NCPoly acc;
                for (std::size_t k = j; k < l; ++k)
                    if (!b[j][k].is_zero() && !t[k][l].is_zero()) acc += red.multiply(b[j][k], t[k][l]);
                if (!acc.is_zero()) b[j][l] = red.multiply(-acc, dinv[l]);
            }
        }
    }
    // two-sided check
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            NCPoly left, right;
            for (std::size_t k = 0; k < n; ++k) {
                if (!b[i][k].is_zero() && !t[k][j].is_zero()) left += red.multiply(b[i][k], t[k][j]);
                if (!t[i][k].is_zero() && !b[k][j].is_zero()) right += red.multiply(t[i][k], b[k][j]);
            }
            NCPoly delta = i == j ? NCPoly::constant(Scalar(1L)) : NCPoly();
            if (left != delta || right != delta) throw DegenerateError("triangular inverse is not two-sided");
        }
    out.inverse = std::move(b);
    return out;
}

// ---------------------------------------------------------------- rule derivation

AlgebraPresentation derive_rewrite_rules(const std::vector<NCPoly>& relations, const AlgebraPresentation& base)
{
    std::vector<NCPoly> all;
    for (const auto& r : base.rules()) all.push_back(NCPoly::word(r.lhs) - r.rhs);
    for (const auto& r : relations)
        if (!r.is_zero()) all.push_back(r);

    std::vector<Word> cols;
    {
        std::map<Word, int> seen;
        for (const auto& p : all)
            for (const auto& [w, c] : p.terms())
                if (seen.emplace(w, 0).second) cols.push_back(w);
    }
    std::sort(cols.begin(), cols.end(), [&](const Word& x, const Word& y) { return base.compare(x, y) > 0; });
    std::map<Word, int> col_of;
    for (std::size_t i = 0; i < cols.size(); ++i) col_of[cols[i]] = static_cast<int>(i);

    using Row = std::map<int, Scalar>;
    std::map<int, Row> pivots;  // pivot column -> row with leading 1
    for (const auto& p : all) {
        Row row;
        for (const auto& [w, c] : p.terms()) row[col_of.at(w)] = c;
        // reduce by existing pivots, largest words first
        for (auto it = row.begin(); it != row.end();) {
            auto pv = pivots.find(it->first);
            if (pv == pivots.end()) {
                ++it;
                continue;
            }
            Scalar f = it->second;
            int col = it->first;
            for (const auto& [c, v] : pv->second) {
                Scalar& dst = row[c];
                dst -= f * v;
            }
            for (auto jt = row.begin(); jt != row.end();) {
                if (jt->second.is_zero()) jt = row.erase(jt);
                else ++jt;
            }
            it = row.upper_bound(col);
        }
        if (row.empty()) continue;
        int lead = row.begin()->first;
        Scalar inv = row.begin()->second.inverse();
        for (auto& [c, v] : row) v *= inv;
        // back-substitute into earlier pivot rows
        for (auto& [pc, prow] : pivots) {
            auto it = prow.find(lead);
            if (it == prow.end()) continue;
            Scalar f = it->second;
            for (const auto& [c, v] : row) prow[c] -= f * v;
            for (auto jt = prow.begin(); jt != prow.end();) {
                if (jt->second.is_zero()) jt = prow.erase(jt);
                else ++jt;
            }
        }
        pivots.emplace(lead, std::move(row));
    }

    std::vector<Rule> rules;
    for (const auto& [pc, row] : pivots) {
        const Word& lhs = cols[static_cast<std::size_t>(pc)];
        if (lhs.empty()) throw DegenerateError("relations imply 1 = 0");
        if (lhs.size() == 1)
            throw DegenerateError("relations express generator " + token(decode(lhs[0])) + " through lower terms");
        NCPoly rhs;
        for (const auto& [c, v] : row)
            if (c != pc) rhs.add_term(cols[static_cast<std::size_t>(c)], -v);
        rules.push_back({lhs, std::move(rhs)});
    }
    std::sort(rules.begin(), rules.end(), [&](const Rule& x, const Rule& y) { return base.compare(x.lhs, y.lhs) < 0; });

    AlgebraPresentation out = base;
    out.set_rules(rules);
    // inter-reduce: longer right-hand-side words may still contain leading words
    bool changed = true;
    while (changed) {
        changed = false;
        Reducer red(out);
        std::vector<Rule> next = out.rules();
        for (auto& r : next) {
            bool normal = true;
            for (const auto& [w, c] : r.rhs.terms())
                if (!red.is_normal(w)) normal = false;
            if (normal) continue;
            r.rhs = red.normal_form(r.rhs);
            changed = true;
        }
        if (changed) out.set_rules(next);
    }
    return out;
}

// ---------------------------------------------------------------- confluence

namespace {

struct Ambiguity {
    Word word;
    std::size_t a, b;
    // word = left_a * lhs_a * right_a = left_b * lhs_b * right_b
    Word left_a, right_a, left_b, right_b;
};

std::vector<Ambiguity> ambiguities(const AlgebraPresentation& a, int max_degree)
{
    std::vector<Ambiguity> out;
    const auto& rules = a.rules();
    for (std::size_t i = 0; i < rules.size(); ++i)
        for (std::size_t j = 0; j < rules.size(); ++j) {
            const Word& l1 = rules[i].lhs;
            const Word& l2 = rules[j].lhs;
            // overlaps: suffix of l1 == prefix of l2
            for (std::size_t k = 1; k < l1.size() && k < l2.size(); ++k) {
                if (!std::equal(l1.end() - static_cast<long>(k), l1.end(), l2.begin())) continue;
                Word w = l1;
                w.insert(w.end(), l2.begin() + static_cast<long>(k), l2.end());
                if (static_cast<int>(w.size()) > max_degree) continue;
                Ambiguity amb{w, i, j, {}, Word(l2.begin() + static_cast<long>(k), l2.end()),
                              Word(l1.begin(), l1.end() - static_cast<long>(k)), {}};
                out.push_back(std::move(amb));
            }
            // inclusions: l2 strictly inside l1
            if (i != j && l2.size() < l1.size() && static_cast<int>(l1.size()) <= max_degree) {
                for (std::size_t p = 0; p + l2.size() <= l1.size(); ++p) {
                    if (!std::equal(l2.begin(), l2.end(), l1.begin() + static_cast<long>(p))) continue;
                    Ambiguity amb{l1, i, j, {}, {}, Word(l1.begin(), l1.begin() + static_cast<long>(p)),
                                  Word(l1.begin() + static_cast<long>(p + l2.size()), l1.end())};
                    out.push_back(std::move(amb));
                }
            }
        }
    return out;
}

NCPoly sandwich(const Word& l, const NCPoly& mid, const Word& r)
{
    return NCPoly::word(l) * mid * NCPoly::word(r);
}

} // namespace

ConfluenceReport overlap_confluence_check(const AlgebraPresentation& a, int max_degree, unsigned threads)
{
    auto amb = ambiguities(a, max_degree);
    ConfluenceReport rep;
    rep.ambiguities = amb.size();
    if (amb.empty()) return rep;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(amb.size()));

    std::vector<NCPoly> residual(amb.size());
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned t) {
        try {
            Reducer red(a);
            for (std::size_t i = t; i < amb.size(); i += threads) {
                const auto& m = amb[i];
                NCPoly pa = red.normal_form(sandwich(m.left_a, a.rules()[m.a].rhs, m.right_a));
                NCPoly pb = red.normal_form(sandwich(m.left_b, a.rules()[m.b].rhs, m.right_b));
                residual[i] = pa - pb;
            }
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (std::size_t i = 0; i < amb.size(); ++i)
        if (!residual[i].is_zero()) rep.residuals.push_back({amb[i].word, amb[i].a, amb[i].b, residual[i]});
    return rep;
}

// ---------------------------------------------------------------- counting

std::uint64_t hilbert_count(const AlgebraPresentation& a, int d, const std::vector<Generator>* alphabet)
{
    if (d < 0) return 0;
    if (d == 0) return 1;
    std::vector<GenId> letters;
    if (alphabet) {
        for (const auto& g : *alphabet) letters.push_back(encode(g));
    } else {
        for (const auto& g : a.generators()) letters.push_back(encode(g));
    }
    std::set<GenId> banned1;
    std::set<std::pair<GenId, GenId>> banned2;
    bool short_rules = true;
    for (const auto& r : a.rules()) {
        if (r.lhs.size() == 1) banned1.insert(r.lhs[0]);
        else if (r.lhs.size() == 2) banned2.insert({r.lhs[0], r.lhs[1]});
        else short_rules = false;
    }
    letters.erase(std::remove_if(letters.begin(), letters.end(), [&](GenId g) { return banned1.count(g) != 0; }),
                  letters.end());

    if (short_rules) {
        std::vector<std::uint64_t> cur(letters.size(), 1), next(letters.size());
        for (int len = 2; len <= d; ++len) {
            for (std::size_t j = 0; j < letters.size(); ++j) {
                std::uint64_t s = 0;
                for (std::size_t i = 0; i < letters.size(); ++i)
                    if (!banned2.count({letters[i], letters[j]})) s += cur[i];
                next[j] = s;
            }
            cur.swap(next);
        }
        std::uint64_t total = 0;
        for (auto v : cur) total += v;
        return total;
    }

    std::vector<Word> lhs;
    for (const auto& r : a.rules()) lhs.push_back(r.lhs);
    std::uint64_t total = 0;
    Word w;
    std::function<void()> dfs = [&]() {
        if (static_cast<int>(w.size()) == d) {
            ++total;
            return;
        }
        for (GenId g : letters) {
            w.push_back(g);
            bool ok = true;
            for (const auto& l : lhs)
                if (l.size() <= w.size() && std::equal(l.begin(), l.end(), w.end() - static_cast<long>(l.size()))) ok = false;
            if (ok) dfs();
            w.pop_back();
        }
    };
    dfs();
    return total;
}

} // namespace qub
