#include "qub/format.hpp"

#include <sstream>

namespace qub {

namespace {

bool is_sum(const std::string& s)
{
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '{') ++depth;
        else if (c == ')' || c == '}') --depth;
        else if (depth == 0 && i > 0 && (c == '+' || c == '-') && s[i - 1] == ' ') return true;
        else if (depth == 0 && c == '/') return true;
    }
    return false;
}

template <class CoefFn>
std::string render(const NCPoly& p, const AlgebraPresentation& a, CoefFn&& coef)
{
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : a.sorted_terms(p)) {
        std::string cs = coef(c);
        bool neg = !cs.empty() && cs[0] == '-' && !is_sum(cs);
        if (neg) cs = cs.substr(1);
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        std::string letters;
        for (GenId g : w) letters += (letters.empty() ? "" : "*") + token(decode(g));
        if (letters.empty()) {
            os << (is_sum(cs) ? "(" + cs + ")" : cs);
        } else if (cs == "1") {
            os << letters;
        } else {
            os << (is_sum(cs) || cs.find('*') != std::string::npos ? "(" + cs + ")" : cs) << "*" << letters;
        }
    }
    return os.str();
}

} // namespace

std::string format_text(const NCPoly& p, const AlgebraPresentation& a, const QContext& ctx)
{
    return render(p, a, [&](const Scalar& c) { return ctx.format(c); });
}

std::string format_exact(const NCPoly& p, const AlgebraPresentation& a)
{
    return render(p, a, [](const Scalar& c) { return format_s(c); });
}

std::string latex_generator(const Generator& g, const IndexScheme& scheme)
{
    std::string idx = scheme.has_index(g.index) ? scheme.index_name(g.index) : std::to_string(g.index);
    std::string cp = std::to_string(g.copy);
    switch (g.kind) {
    case GenKind::x: return "x^{" + cp + "," + idx + "}";
    case GenKind::d: return "\\partial_{" + cp + "," + idx + "}";
    case GenKind::rad: return "r^{" + cp + "}_{" + std::to_string(g.index) + "}";
    case GenKind::rinv: return "(r^{" + cp + "}_{" + std::to_string(g.index) + "})^{-1}";
    case GenKind::xinv: return "(x^{" + cp + "," + idx + "})^{-1}";
    }
    return "?";
}

std::string format_latex(const NCPoly& p, const AlgebraPresentation& a, const QContext& ctx, const IndexScheme& scheme)
{
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : a.sorted_terms(p)) {
        std::string cs = ctx.format_latex(c);
        bool neg = !cs.empty() && cs[0] == '-' && !is_sum(cs);
        if (neg) cs = cs.substr(1);
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        // leading inverse letters go to a denominator
        std::string den, num;
        for (GenId id : w) {
            Generator g = decode(id);
            if (num.empty() && (g.kind == GenKind::rinv || g.kind == GenKind::xinv)) {
                Generator base = g;
                base.kind = g.kind == GenKind::rinv ? GenKind::rad : GenKind::x;
                den += (den.empty() ? "" : " ") + latex_generator(base, scheme);
            } else {
                num += (num.empty() ? "" : " ") + latex_generator(g, scheme);
            }
        }
        std::string coef = cs == "1" ? "" : (is_sum(cs) ? "\\left(" + cs + "\\right)" : cs);
        if (!den.empty()) os << coef << (coef.empty() ? "" : " ") << "\\frac{1}{" << den << "}" << (num.empty() ? "" : " " + num);
        else if (num.empty()) os << (cs == "1" ? "1" : coef);
        else os << coef << (coef.empty() ? "" : " ") << num;
    }
    return os.str();
}

} // namespace qub
