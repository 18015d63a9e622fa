#include "qub/error.hpp"
#include "qub/format.hpp"
#include "qub/unbraid.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace qub {

namespace {

// Either a scalar or a noncommutative polynomial; scalars stay separate so
// that division and fractional powers can be checked.
struct Value {
    bool scalar = true;
    Scalar c = Scalar(1L);
    NCPoly p;

    NCPoly poly() const { return scalar ? NCPoly::constant(c) : p; }
};

class ExprParser {
public:
    ExprParser(std::string text, const Space& space, int default_copy)
        : t_(std::move(text)), space_(space), copy_(default_copy)
    {
    }

    NCPoly parse()
    {
        Value v = sum();
        skip();
        if (i_ != t_.size()) fail("unexpected '" + std::string(1, t_[i_]) + "'");
        return v.poly();
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw UsageError("expression '" + t_ + "', column " + std::to_string(i_ + 1) + ": " + msg);
    }

    void skip()
    {
        while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
    }

    bool eat(char c)
    {
        skip();
        if (i_ < t_.size() && t_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    long integer()
    {
        skip();
        bool neg = false;
        if (i_ < t_.size() && (t_[i_] == '-' || t_[i_] == '+')) neg = t_[i_++] == '-';
        std::size_t start = i_;
        while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
        if (start == i_) fail("expected an integer");
        long v = std::stol(t_.substr(start, i_ - start));
        return neg ? -v : v;
    }

    static Value add(Value a, const Value& b, bool minus)
    {
        if (a.scalar && b.scalar) {
            a.c = minus ? a.c - b.c : a.c + b.c;
            return a;
        }
        Value r;
        r.scalar = false;
        r.p = minus ? a.poly() - b.poly() : a.poly() + b.poly();
        return r;
    }

    static Value mul(const Value& a, const Value& b)
    {
        Value r;
        if (a.scalar && b.scalar) {
            r.c = a.c * b.c;
            return r;
        }
        r.scalar = false;
        if (a.scalar) r.p = b.p.scaled(a.c);
        else if (b.scalar) r.p = a.p.scaled(b.c);
        else r.p = a.p * b.p;
        return r;
    }

    Value sum()
    {
        skip();
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        Value v = product();
        if (neg) v = mul(Value{true, Scalar(-1L), {}}, v);
        for (;;) {
            if (eat('+')) v = add(v, product(), false);
            else if (eat('-')) v = add(v, product(), true);
            else return v;
        }
    }

    Value product()
    {
        Value v = power();
        for (;;) {
            if (eat('*')) {
                v = mul(v, power());
            } else if (eat('/')) {
                Value d = power();
                if (!d.scalar) fail("division by a noncommutative expression");
                if (d.c.is_zero()) fail("division by zero");
                v = mul(v, Value{true, d.c.inverse(), {}});
            } else {
                return v;
            }
        }
    }

    Value power()
    {
        bool is_q = false;
        Value base = atom(is_q);
        if (!eat('^')) return base;
        long num, den = 1;
        if (eat('(')) {
            num = integer();
            if (eat('/')) den = integer();
            expect(')');
        } else {
            num = integer();
        }
        if (is_q) return Value{true, space_.ctx.q_pow(num, den), {}};
        if (den != 1) fail("fractional powers are allowed for q only");
        if (base.scalar) {
            if (base.c.is_zero() && num < 0) fail("zero to a negative power");
            return Value{true, base.c.pow(static_cast<int>(num)), {}};
        }
        if (num < 0) fail("negative power of a noncommutative expression");
        Value r;
        for (long k = 0; k < num; ++k) r = mul(r, base);
        return r;
    }

    int index_token()
    {
        skip();
        if (i_ < t_.size() && (t_[i_] == '+' || t_[i_] == '-')) {
            std::size_t save = i_;
            char sign = t_[i_++];
            skip();
            if (i_ < t_.size() && (t_[i_] == ',' || t_[i_] == ']')) return sign == '+' ? 1 : -1;
            i_ = save;
        }
        return static_cast<int>(integer());
    }

    Value generator(GenKind kind, bool index_is_level)
    {
        expect('[');
        int a = index_token(), b = 0, copy = copy_;
        if (eat(',')) {
            b = index_token();
            copy = a;
        } else {
            b = a;
        }
        expect(']');
        if (kind == GenKind::rad && b == 0) kind = GenKind::x;
        else if (kind == GenKind::rinv && b == 0) kind = GenKind::xinv;
        (void)index_is_level;
        Generator g{copy, kind, b};
        if (!space_.algebra.has_generator(g)) fail("unknown generator " + token(g));
        Value v;
        v.scalar = false;
        v.p = NCPoly::gen(g);
        return v;
    }

    Value atom(bool& is_q)
    {
        skip();
        if (i_ >= t_.size()) fail("unexpected end of expression");
        char c = t_[i_];
        if (c == '(') {
            ++i_;
            Value v = sum();
            expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i_;
            while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
            return Value{true, Scalar(Rational(t_.substr(start, i_ - start))), {}};
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
        std::size_t start = i_;
        while (i_ < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[i_])) || t_[i_] == '_')) ++i_;
        std::string id = t_.substr(start, i_ - start);
        const QContext& ctx = space_.ctx;
        if (id == "q") {
            is_q = true;
            return Value{true, ctx.q(), {}};
        }
        if (id == "s") return Value{true, Scalar::s_power(1), {}};
        if (id == "h") return Value{true, ctx.h(), {}};
        if (id == "k") return Value{true, ctx.k(), {}};
        if (id == "x") return generator(GenKind::x, false);
        if (id == "d") return generator(GenKind::d, false);
        if (id == "r") return generator(GenKind::rad, true);
        if (id == "rinv") return generator(GenKind::rinv, true);
        if (id == "xinv") return generator(GenKind::xinv, false);
        if (id == "x0inv") {
            Generator g{copy_, GenKind::xinv, 0};
            if (!space_.algebra.has_generator(g)) fail("unknown generator " + token(g));
            return Value{false, Scalar(1L), NCPoly::gen(g)};
        }
        return Value{true, Scalar::param(id), {}};
    }

    std::string t_;
    std::size_t i_ = 0;
    const Space& space_;
    int copy_;
};

std::string strip(const std::string& s)
{
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

int parse_index(const std::string& s, const IndexScheme& sch, int line)
{
    int v;
    if (s == "+") v = 1;
    else if (s == "-") v = -1;
    else {
        try {
            std::size_t used = 0;
            v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw UsageError("line " + std::to_string(line) + ": bad index '" + s + "'");
        }
    }
    if (!sch.has_index(v)) throw UsageError("line " + std::to_string(line) + ": index " + s + " is out of range");
    return v;
}

} // namespace

NCPoly parse_expression(const std::string& text, const Space& space, int default_copy)
{
    return ExprParser(text, space, default_copy).parse();
}

PhiTable parse_phi_table(const std::string& text, const Space& space)
{
    PhiTable phi;
    phi.scheme = space.scheme;
    phi.host_copy = space.extended_copy ? space.extended_copy : 1;
    std::size_t n = static_cast<std::size_t>(space.scheme.size());
    phi.images.assign(n, std::vector<NCPoly>(n));
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
    std::vector<std::vector<bool>> seen_s(n, std::vector<bool>(n, false));
    bool any_antipode = false;
    std::set<int> declared;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    Reducer red(space.algebra);

    auto check_params = [&](const NCPoly& p, int line) {
        for (const auto& [w, c] : p.terms())
            for (int id : c.param_ids())
                if (!declared.count(id))
                    throw UsageError("line " + std::to_string(line) + ": parameter '" + ParameterRegistry::name(id) +
                                     "' is not declared");
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        auto err = [&](const std::string& m) { return UsageError("line " + std::to_string(lineno) + ": " + m); };
        if (kw == "sign") {
            std::string v;
            ls >> v;
            if (v == "minus" || v == "-") phi.sign = Sign::minus;
            else if (v == "plus" || v == "+") phi.sign = Sign::plus;
            else throw err("sign must be minus or plus");
        } else if (kw == "family") {
            std::string v;
            ls >> v;
            Family f = v == "so" ? Family::so : v == "sl" ? Family::sl : throw err("family must be so or sl");
            if (f != space.scheme.family()) throw err("family does not match the algebra");
        } else if (kw == "n") {
            int v = 0;
            ls >> v;
            if (v != space.scheme.n()) throw err("N does not match the algebra");
        } else if (kw == "host") {
            int v = 0;
            ls >> v;
            if (v < 1 || v > space.spec.copies) throw err("host copy out of range");
            phi.host_copy = v;
        } else if (kw == "param") {
            std::string name, bar_kw;
            ls >> name >> bar_kw;
            if (name.empty() || bar_kw != "bar") throw err("expected 'param <name> bar = <expr>'");
            std::size_t eq = line.find('=');
            if (eq == std::string::npos) throw err("missing '='");
            int id = ParameterRegistry::intern(name);
            declared.insert(id);
            NCPoly image = parse_expression(line.substr(eq + 1), space, phi.host_copy);
            if (image.max_length() > 0 || image.size() > 1) throw err("a bar image must be a scalar");
            phi.bar.declare(name, image.constant_term());
        } else if (kw == "image" || kw == "antipode") {
            std::size_t eq = line.find('=');
            if (eq == std::string::npos) throw err("missing '='");
            std::istringstream head(line.substr(0, eq));
            std::string k2, si, sj;
            head >> k2 >> si >> sj;
            int i = parse_index(si, space.scheme, lineno), j = parse_index(sj, space.scheme, lineno);
            NCPoly p = parse_expression(line.substr(eq + 1), space, phi.host_copy);
            check_params(p, lineno);
            for (const auto& [w, c] : p.terms())
                for (GenId g : w)
                    if (decode(g).copy != phi.host_copy) throw err("images must live in the host copy");
            std::size_t pi = static_cast<std::size_t>(space.scheme.pos(i)), pj = static_cast<std::size_t>(space.scheme.pos(j));
            auto& seen_m = kw == "image" ? seen : seen_s;
            if (seen_m[pi][pj]) throw err("duplicate entry");
            seen_m[pi][pj] = true;
            if (kw == "image") {
                phi.images[pi][pj] = red.normal_form(p);
            } else {
                if (!any_antipode) phi.antipode.assign(n, std::vector<NCPoly>(n));
                any_antipode = true;
                phi.antipode[pi][pj] = red.normal_form(p);
            }
        } else {
            throw err("unknown statement '" + kw + "'");
        }
    }
    auto missing = phi.bar.non_involutive();
    if (!missing.empty()) throw UsageError("parameter '" + missing.front() + "' has an incomplete or non-involutive bar image");
    if (any_antipode) {
        // user-supplied antipode images: recover the orientation only
        auto inv = triangular_inverse(phi.images, red);
        phi.shape = inv.shape;
    } else {
        compute_antipode(phi, space);
    }
    return phi;
}

std::string write_phi_table(const PhiTable& phi, const Space& space)
{
    std::ostringstream os;
    os << "sign " << (phi.sign == Sign::minus ? "minus" : "plus") << "\n";
    os << "family " << (phi.scheme.family() == Family::so ? "so" : "sl") << "\n";
    os << "n " << phi.scheme.n() << "\n";
    os << "host " << phi.host_copy << "\n";
    for (const auto& [id, image] : phi.bar.images())
        os << "param " << ParameterRegistry::name(id) << " bar = " << space.ctx.format(image) << "\n";
    for (int i : phi.scheme.indices())
        for (int j : phi.scheme.indices())
            os << "image " << i << " " << j << " = " << format_text(phi.image(i, j), space.algebra, space.ctx) << "\n";
    if (!phi.antipode.empty())
        for (int i : phi.scheme.indices())
            for (int j : phi.scheme.indices())
                os << "antipode " << i << " " << j << " = "
                   << format_text(phi.antipode_image(i, j), space.algebra, space.ctx) << "\n";
    return os.str();
}

} // namespace qub
