#include "qub/scalar.hpp"

#include "qub/error.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace qub {

namespace {

std::strong_ordering cmp_rational(const Rational& a, const Rational& b)
{
    int c = cmp(a, b);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

ParamMonomial mono_mul(const ParamMonomial& a, const ParamMonomial& b)
{
    ParamMonomial out;
    out.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->first < j->first)) {
            out.push_back(*i++);
        } else if (i == a.end() || j->first < i->first) {
            out.push_back(*j++);
        } else {
            int e = i->second + j->second;
            if (e != 0) out.emplace_back(i->first, e);
            ++i;
            ++j;
        }
    }
    return out;
}

ParamMonomial mono_inv(const ParamMonomial& a)
{
    ParamMonomial out = a;
    for (auto& [id, e] : out) e = -e;
    return out;
}

} // namespace

// ---------------------------------------------------------------- SPoly

SPoly::SPoly(Rational c)
{
    if (c != 0) c_.push_back(std::move(c));
}

SPoly SPoly::monomial(Rational c, int exponent)
{
    SPoly p(std::move(c));
    if (!p.is_zero()) p.low_ = exponent;
    return p;
}

SPoly SPoly::from_coeffs(int low, std::vector<Rational> coeffs)
{
    SPoly p;
    p.low_ = low;
    p.c_ = std::move(coeffs);
    p.trim();
    return p;
}

void SPoly::trim()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
        low_ += static_cast<int>(lead);
    }
    if (c_.empty()) low_ = 0;
}

Rational SPoly::coeff(int exponent) const
{
    if (is_zero() || exponent < low_ || exponent > high()) return 0;
    return c_[static_cast<std::size_t>(exponent - low_)];
}

SPoly SPoly::operator-() const
{
    SPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

SPoly& SPoly::operator+=(const SPoly& o)
{
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    int lo = std::min(low_, o.low_);
    int hi = std::max(high(), o.high());
    if (lo < low_) {
        c_.insert(c_.begin(), static_cast<std::size_t>(low_ - lo), Rational(0));
        low_ = lo;
    }
    if (static_cast<int>(c_.size()) < hi - lo + 1) c_.resize(static_cast<std::size_t>(hi - lo + 1), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[static_cast<std::size_t>(o.low_ - low_) + i] += o.c_[i];
    trim();
    return *this;
}

SPoly& SPoly::operator-=(const SPoly& o)
{
    return *this += -o;
}

SPoly operator*(const SPoly& a, const SPoly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return SPoly::from_coeffs(a.low_ + b.low_, std::move(c));
}

SPoly SPoly::scaled(const Rational& r) const
{
    if (r == 0) return {};
    SPoly p = *this;
    for (auto& c : p.c_) c *= r;
    return p;
}

SPoly SPoly::shifted(int by) const
{
    SPoly p = *this;
    if (!p.is_zero()) p.low_ += by;
    return p;
}

SPoly SPoly::reflected() const
{
    if (is_zero()) return {};
    std::vector<Rational> c(c_.rbegin(), c_.rend());
    return from_coeffs(-high(), std::move(c));
}

Rational SPoly::eval(const Rational& s) const
{
    if (is_zero()) return 0;
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
    if (low_ >= 0) {
        for (int i = 0; i < low_; ++i) acc *= s;
    } else {
        for (int i = 0; i < -low_; ++i) acc /= s;
    }
    return acc;
}

int SPoly::order_at_one() const
{
    if (is_zero()) return 0;
    std::vector<Rational> c = c_;
    int order = 0;
    while (c.size() > 1) {
        Rational sum = std::accumulate(c.begin(), c.end(), Rational(0));
        if (sum != 0) break;
        // synthetic division by (s - 1), highest coefficient first
        std::vector<Rational> q(c.size() - 1);
        Rational carry = 0;
        for (std::size_t i = c.size() - 1; i >= 1; --i) {
            carry += c[i];
            q[i - 1] = carry;
        }
        c = std::move(q);
        ++order;
    }
    return order;
}

std::strong_ordering SPoly::operator<=>(const SPoly& o) const
{
    if (auto c = c_.size() <=> o.c_.size(); c != 0) return c;
    if (auto c = low_ <=> o.low_; c != 0) return c;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (auto c = cmp_rational(c_[i], o.c_[i]); c != 0) return c;
    }
    return std::strong_ordering::equal;
}

namespace poly {

SPoly strip(const SPoly& p)
{
    return p.is_zero() ? p : p.shifted(-p.low());
}

std::pair<SPoly, SPoly> divmod(const SPoly& a_in, const SPoly& b_in)
{
    SPoly a = strip(a_in);
    SPoly b = strip(b_in);
    if (b.is_zero()) throw DegenerateError("polynomial division by zero");
    if (a.is_zero() || a.high() < b.high()) return {SPoly(), a};
    std::vector<Rational> r = a.coeffs();
    const auto& bc = b.coeffs();
    std::size_t db = bc.size() - 1;
    std::vector<Rational> q(r.size() - db, Rational(0));
    for (std::size_t i = r.size(); i-- > db;) {
        if (r[i] == 0) continue;
        Rational f = r[i] / bc.back();
        q[i - db] = f;
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] -= f * bc[j];
    }
    r.resize(db);
    return {SPoly::from_coeffs(0, std::move(q)), SPoly::from_coeffs(0, std::move(r))};
}

SPoly monic(const SPoly& p)
{
    if (p.is_zero()) return p;
    Rational inv = 1 / p.leading();
    return p.scaled(inv);
}

SPoly gcd(const SPoly& a_in, const SPoly& b_in)
{
    SPoly a = strip(a_in);
    SPoly b = strip(b_in);
    while (!b.is_zero()) {
        if (b.high() == 0) return SPoly(Rational(1));
        SPoly r = divmod(a, b).second;
        a = std::move(b);
        b = monic(r);
    }
    return monic(a);
}

SPoly exact_div(const SPoly& a, const SPoly& b)
{
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw ConsistencyError("inexact polynomial division");
    return q;
}

} // namespace poly

// ---------------------------------------------------------------- registry

namespace {
struct RegistryState {
    std::mutex mu;
    std::vector<std::string> names;
    std::unordered_map<std::string, int> ids;
};
RegistryState& registry()
{
    static RegistryState r;
    return r;
}
} // namespace

int ParameterRegistry::intern(std::string_view name)
{
    auto& r = registry();
    std::lock_guard lock(r.mu);
    std::string key(name);
    if (auto it = r.ids.find(key); it != r.ids.end()) return it->second;
    int id = static_cast<int>(r.names.size());
    r.names.push_back(key);
    r.ids.emplace(key, id);
    return id;
}

std::string ParameterRegistry::name(int id)
{
    auto& r = registry();
    std::lock_guard lock(r.mu);
    return r.names.at(static_cast<std::size_t>(id));
}

std::optional<int> ParameterRegistry::find(std::string_view name)
{
    auto& r = registry();
    std::lock_guard lock(r.mu);
    if (auto it = r.ids.find(std::string(name)); it != r.ids.end()) return it->second;
    return std::nullopt;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(long v) : Scalar(Rational(v)) {}

Scalar::Scalar(const Rational& r)
{
    if (r != 0) num_.push_back({{}, SPoly(r)});
}

Scalar Scalar::s_power(int e)
{
    Scalar x;
    x.num_.push_back({{}, SPoly::monomial(1, e)});
    return x;
}

Scalar Scalar::param(std::string_view name, int exponent)
{
    return param(ParameterRegistry::intern(name), exponent);
}

Scalar Scalar::param(int id, int exponent)
{
    Scalar x;
    ParamMonomial m;
    if (exponent != 0) m.emplace_back(id, exponent);
    x.num_.push_back({std::move(m), SPoly(Rational(1))});
    return x;
}

Scalar Scalar::fraction(std::vector<Term> numerator, SPoly denominator)
{
    if (denominator.is_zero()) throw DegenerateError("zero denominator");
    Scalar x;
    std::map<ParamMonomial, SPoly> acc;
    for (auto& t : numerator) acc[t.params] += t.poly;
    for (auto& [m, p] : acc) {
        if (!p.is_zero()) x.num_.push_back({m, std::move(p)});
    }
    x.den_ = std::move(denominator);
    x.normalize();
    return x;
}

void Scalar::normalize()
{
    std::erase_if(num_, [](const Term& t) { return t.poly.is_zero(); });
    if (num_.empty()) {
        den_ = SPoly(Rational(1));
        return;
    }
    if (den_.low() != 0) {
        int shift = -den_.low();
        den_ = den_.shifted(shift);
        for (auto& t : num_) t.poly = t.poly.shifted(shift);
    }
    if (den_.high() > 0) {
        SPoly g = den_;
        for (const auto& t : num_) {
            g = poly::gcd(g, t.poly);
            if (g.high() == 0) break;
        }
        if (g.high() > 0) {
            den_ = poly::exact_div(den_, g);
            for (auto& t : num_) {
                int lo = t.poly.low();
                t.poly = poly::exact_div(poly::strip(t.poly), g).shifted(lo);
            }
        }
    }
    if (den_.leading() != 1) {
        Rational inv = 1 / den_.leading();
        den_ = den_.scaled(inv);
        for (auto& t : num_) t.poly = t.poly.scaled(inv);
    }
}

bool Scalar::is_one() const
{
    return num_.size() == 1 && num_[0].params.empty() && den_.high() == 0 && num_[0].poly.low() == 0 &&
           num_[0].poly.coeffs().size() == 1 && num_[0].poly.coeffs()[0] == 1;
}

bool Scalar::has_params() const
{
    return std::any_of(num_.begin(), num_.end(), [](const Term& t) { return !t.params.empty(); });
}

bool Scalar::is_rational() const
{
    if (is_zero()) return true;
    return num_.size() == 1 && num_[0].params.empty() && den_.high() == 0 && num_[0].poly.low() == 0 &&
           num_[0].poly.coeffs().size() == 1;
}

std::optional<Rational> Scalar::as_rational() const
{
    if (!is_rational()) return std::nullopt;
    if (is_zero()) return Rational(0);
    return num_[0].poly.coeffs()[0];
}

std::optional<std::pair<Rational, int>> Scalar::as_s_monomial() const
{
    if (num_.size() != 1 || !num_[0].params.empty() || den_.high() != 0 || num_[0].poly.coeffs().size() != 1)
        return std::nullopt;
    return std::make_pair(num_[0].poly.coeffs()[0], num_[0].poly.low());
}

std::vector<int> Scalar::param_ids() const
{
    std::vector<int> ids;
    for (const auto& t : num_)
        for (const auto& [id, e] : t.params) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    for (auto& t : r.num_) t.poly = -t.poly;
    return r;
}

namespace {

std::vector<Scalar::Term> merge_add(const std::vector<Scalar::Term>& a, const SPoly& fa,
                                    const std::vector<Scalar::Term>& b, const SPoly& fb)
{
    std::vector<Scalar::Term> out;
    out.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    bool unit_a = fa.high() == 0 && fa.low() == 0 && fa.coeffs()[0] == 1;
    bool unit_b = fb.high() == 0 && fb.low() == 0 && fb.coeffs()[0] == 1;
    auto sa = [&](const SPoly& p) { return unit_a ? p : p * fa; };
    auto sb = [&](const SPoly& p) { return unit_b ? p : p * fb; };
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->params < j->params)) {
            out.push_back({i->params, sa(i->poly)});
            ++i;
        } else if (i == a.end() || j->params < i->params) {
            out.push_back({j->params, sb(j->poly)});
            ++j;
        } else {
            SPoly p = sa(i->poly) + sb(j->poly);
            if (!p.is_zero()) out.push_back({i->params, std::move(p)});
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

Scalar& Scalar::operator+=(const Scalar& o)
{
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        SPoly one(Rational(1));
        num_ = merge_add(num_, one, o.num_, one);
        normalize();
        return *this;
    }
    SPoly g = poly::gcd(den_, o.den_);
    SPoly fa = poly::exact_div(o.den_, g);  // multiplies this
    SPoly fb = poly::exact_div(den_, g);    // multiplies o
    num_ = merge_add(num_, fa, o.num_, fb);
    den_ = den_ * fa;
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    return *this += -o;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (is_zero() || o.is_zero()) return *this = Scalar();
    if (o.is_rational()) {
        const Rational& r = o.num_[0].poly.coeffs()[0];
        for (auto& t : num_) t.poly = t.poly.scaled(r);
        return *this;
    }
    std::map<ParamMonomial, SPoly> acc;
    for (const auto& a : num_)
        for (const auto& b : o.num_) acc[mono_mul(a.params, b.params)] += a.poly * b.poly;
    num_.clear();
    for (auto& [m, p] : acc)
        if (!p.is_zero()) num_.push_back({m, std::move(p)});
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    return *this *= o.inverse();
}

Scalar Scalar::inverse() const
{
    if (is_zero()) throw DegenerateError("division by zero scalar");
    if (num_.size() != 1)
        throw UsageError("inversion of a scalar whose numerator mixes several parameter monomials is unsupported");
    const Term& t = num_[0];
    Scalar r;
    r.num_.push_back({mono_inv(t.params), den_.shifted(-t.poly.low())});
    r.den_ = poly::strip(t.poly);
    r.normalize();
    return r;
}

Scalar Scalar::pow(int e) const
{
    if (e < 0) return inverse().pow(-e);
    Scalar result(1L);
    Scalar base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

Scalar Scalar::reflect_s() const
{
    std::vector<Term> num;
    num.reserve(num_.size());
    int shift = den_.high();
    for (const auto& t : num_) num.push_back({t.params, t.poly.reflected().shifted(shift)});
    return fraction(std::move(num), den_.reflected().shifted(shift));
}

Scalar Scalar::substitute(int id, const Scalar& value) const
{
    Scalar acc;
    for (const auto& t : num_) {
        Scalar term;
        ParamMonomial rest;
        int e = 0;
        for (const auto& [pid, pe] : t.params) {
            if (pid == id) e = pe;
            else rest.emplace_back(pid, pe);
        }
        term.num_.push_back({rest, t.poly});
        if (e != 0) term *= value.pow(e);
        acc += term;
    }
    Scalar d;
    d.num_.push_back({{}, den_});
    return acc / d;
}

std::strong_ordering Scalar::operator<=>(const Scalar& o) const
{
    if (auto c = den_ <=> o.den_; c != 0) return c;
    if (auto c = num_.size() <=> o.num_.size(); c != 0) return c;
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (num_[i].params != o.num_[i].params)
            return num_[i].params < o.num_[i].params ? std::strong_ordering::less : std::strong_ordering::greater;
        if (auto c = num_[i].poly <=> o.num_[i].poly; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- QContext

QContext::QContext(int n) : n_(n)
{
    if (n < 1) throw UsageError("N must be positive");
}

Scalar QContext::q_pow(long num, long den) const
{
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long s = static_cast<long>(s_per_q()) * num;
    if (den == 0 || s % den != 0)
        throw UsageError("q-exponent " + std::to_string(num) + "/" + std::to_string(den) + " is off the s-grid");
    return Scalar::s_power(static_cast<int>(s / den));
}

Scalar QContext::k() const
{
    return q() - q_pow(-1);
}

Scalar QContext::h() const
{
    return q_pow(1, 2) - q_pow(-1, 2);
}

Scalar QContext::omega_half(long twice_exponent) const
{
    return q_pow(twice_exponent, 2) + q_pow(-twice_exponent, 2);
}

namespace {

std::string rational_str(const Rational& r)
{
    return r.get_str();
}

std::string q_exponent(int s_exp, int s_per_q, bool latex)
{
    long g = std::gcd(static_cast<long>(std::abs(s_exp)), static_cast<long>(s_per_q));
    long a = s_exp / g;
    long b = s_per_q / g;
    if (a == 0) return "";
    if (b == 1) {
        if (a == 1) return "q";
        return latex ? "q^{" + std::to_string(a) + "}" : "q^" + (a < 0 ? "(" + std::to_string(a) + ")" : std::to_string(a));
    }
    if (latex) return "q^{" + std::to_string(a) + "/" + std::to_string(b) + "}";
    return "q^(" + std::to_string(a) + "/" + std::to_string(b) + ")";
}

// gamma1 -> \\gamma_{1}, gammabar2 -> \\bar{\\gamma}_{2}; other names pass through.
std::string latex_param_name(const std::string& name)
{
    static const char* greek[] = {"alpha", "beta", "gamma", "delta", "lambda", "mu", "nu"};
    for (const char* g : greek) {
        std::string gs = g;
        if (name.rfind(gs, 0) != 0) continue;
        std::string rest = name.substr(gs.size());
        std::string head = "\\" + gs;
        if (rest.rfind("bar", 0) == 0) {
            head = "\\bar{" + head + "}";
            rest = rest.substr(3);
        }
        if (rest.empty()) return head;
        if (rest.find_first_not_of("0123456789") == std::string::npos) return head + "_{" + rest + "}";
    }
    return name;
}

std::string param_str(const ParamMonomial& m, bool latex)
{
    std::string out;
    for (const auto& [id, e] : m) {
        if (!out.empty()) out += latex ? " " : "*";
        std::string name = ParameterRegistry::name(id);
        out += latex ? latex_param_name(name) : name;
        if (e != 1) {
            if (latex) out += "^{" + std::to_string(e) + "}";
            else out += "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
        }
    }
    return out;
}

// Renders sum_terms with a caller-supplied power renderer.
template <class PowerFn>
std::string render_numerator(const std::vector<Scalar::Term>& num, PowerFn&& power, bool latex)
{
    if (num.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : num) {
        std::string pm = param_str(t.params, latex);
        const auto& c = t.poly.coeffs();
        for (std::size_t i = c.size(); i-- > 0;) {
            if (c[i] == 0) continue;
            int e = t.poly.low() + static_cast<int>(i);
            std::string pw = power(e);
            std::string factors = pw;
            if (!pm.empty()) factors = factors.empty() ? pm : factors + (latex ? " " : "*") + pm;
            Rational coef = c[i];
            bool neg = coef < 0;
            if (neg) coef = -coef;
            if (first) os << (neg ? "-" : "");
            else os << (neg ? " - " : " + ");
            first = false;
            if (factors.empty()) {
                os << (latex && coef.get_den() != 1
                           ? "\\frac{" + coef.get_num().get_str() + "}{" + coef.get_den().get_str() + "}"
                           : rational_str(coef));
            } else if (coef == 1) {
                os << factors;
            } else {
                if (latex && coef.get_den() != 1)
                    os << "\\frac{" << coef.get_num().get_str() << "}{" << coef.get_den().get_str() << "}" << factors;
                else
                    os << rational_str(coef) << (latex ? " " : "*") << factors;
            }
        }
    }
    return os.str();
}

bool needs_parens(const std::string& s)
{
    return s.find(' ') != std::string::npos || (!s.empty() && s[0] == '-');
}

} // namespace

std::string QContext::format(const Scalar& x) const
{
    auto power = [this](int e) { return q_exponent(e, s_per_q(), false); };
    std::string num = render_numerator(x.numerator(), power, false);
    if (x.denominator().high() == 0) return num;
    std::string den = render_numerator({{{}, x.denominator()}}, power, false);
    return (needs_parens(num) ? "(" + num + ")" : num) + "/" + (needs_parens(den) ? "(" + den + ")" : den);
}

std::string QContext::format_latex(const Scalar& x) const
{
    auto power = [this](int e) { return q_exponent(e, s_per_q(), true); };
    std::string num = render_numerator(x.numerator(), power, true);
    if (x.denominator().high() == 0) return num;
    std::string den = render_numerator({{{}, x.denominator()}}, power, true);
    return "\\frac{" + num + "}{" + den + "}";
}

std::string format_s(const Scalar& x)
{
    auto power = [](int e) -> std::string {
        if (e == 0) return "";
        if (e == 1) return "s";
        return "s^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
    };
    std::string num = render_numerator(x.numerator(), power, false);
    if (x.denominator().high() == 0) return num;
    std::string den = render_numerator({{{}, x.denominator()}}, power, false);
    return "(" + num + ")/(" + den + ")";
}

// ---------------------------------------------------------------- bar

void BarTable::declare(std::string_view name, const Scalar& image)
{
    int id = ParameterRegistry::intern(name);
    images_[id] = image;
    // only decidable once every parameter in the image has its own image
    for (int pid : image.param_ids())
        if (!has(pid)) return;
    if (bar(bar(Scalar::param(id), *this), *this) != Scalar::param(id)) {
        images_.erase(id);
        throw UsageError("bar image of '" + std::string(name) + "' is not involutive");
    }
}

std::vector<std::string> BarTable::non_involutive() const
{
    std::vector<std::string> bad;
    for (const auto& [id, image] : images_) {
        bool ok = true;
        for (int pid : image.param_ids())
            if (!has(pid)) ok = false;
        if (ok && bar(image, *this) != Scalar::param(id)) ok = false;
        if (!ok) bad.push_back(ParameterRegistry::name(id));
    }
    return bad;
}

Scalar bar(const Scalar& x, const BarTable& table)
{
    Scalar acc;
    for (const auto& t : x.numerator()) {
        Scalar term = Scalar::fraction({{{}, t.poly.reflected()}}, SPoly(Rational(1)));
        for (const auto& [id, e] : t.params) {
            auto it = table.images().find(id);
            if (it == table.images().end())
                throw UsageError("parameter '" + ParameterRegistry::name(id) + "' has no declared bar image");
            term *= it->second.pow(e);
        }
        acc += term;
    }
    return acc / Scalar::fraction({{{}, x.denominator().reflected()}}, SPoly(Rational(1)));
}

ClassicalValue eval_classical(const Scalar& x)
{
    ClassicalValue v;
    int dord = x.denominator().order_at_one();
    if (dord > 0) {
        v.pole = true;
        v.pole_order = dord;
        return v;
    }
    Rational d = x.denominator().eval(1);
    std::vector<Scalar::Term> num;
    for (const auto& t : x.numerator()) num.push_back({t.params, SPoly(t.poly.eval(1) / d)});
    v.value = Scalar::fraction(std::move(num), SPoly(Rational(1)));
    return v;
}

} // namespace qub
