#pragma once

// Exact coefficient field: rational functions in a formal root s of q
// (q = s^(2N), fixed per session), with central symbolic parameters that
// may appear with integer powers in numerators.
//
// Canonical form of a value is numerator/denominator where
//   - the numerator is a Laurent polynomial in s and the parameters,
//   - the denominator is a monic polynomial in s alone with nonzero
//     constant term,
//   - the two are coprime.
// Structural equality therefore decides equality in the field.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qub {

using Rational = mpq_class;

/// Laurent polynomial in s with rational coefficients. The coefficient
/// vector is trimmed on both ends, so the zero polynomial is the empty
/// vector and low() is the true lowest exponent otherwise.
class SPoly {
public:
    SPoly() = default;
    explicit SPoly(Rational c);
    static SPoly monomial(Rational c, int exponent);
    static SPoly from_coeffs(int low, std::vector<Rational> coeffs);

    bool is_zero() const { return c_.empty(); }
    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int exponent) const;
    const Rational& leading() const { return c_.back(); }

    SPoly operator-() const;
    SPoly& operator+=(const SPoly& o);
    SPoly& operator-=(const SPoly& o);
    friend SPoly operator+(SPoly a, const SPoly& b) { return a += b; }
    friend SPoly operator-(SPoly a, const SPoly& b) { return a -= b; }
    friend SPoly operator*(const SPoly& a, const SPoly& b);
    SPoly scaled(const Rational& r) const;
    SPoly shifted(int by) const;
    /// s -> 1/s
    SPoly reflected() const;
    Rational eval(const Rational& s) const;
    /// Multiplicity of the root s = 1.
    int order_at_one() const;

    bool operator==(const SPoly& o) const = default;
    std::strong_ordering operator<=>(const SPoly& o) const;

private:
    void trim();

    int low_ = 0;
    std::vector<Rational> c_;
};

namespace poly {
/// Ordinary polynomial arithmetic on SPoly values whose low() is 0.
/// Inputs with low() > 0 are first shifted down (s is a unit).
SPoly strip(const SPoly& p);
std::pair<SPoly, SPoly> divmod(const SPoly& a, const SPoly& b);
SPoly gcd(const SPoly& a, const SPoly& b);
SPoly monic(const SPoly& p);
/// Exact division; throws if b does not divide a.
SPoly exact_div(const SPoly& a, const SPoly& b);
} // namespace poly

/// Interned symbolic parameter names. Ids are process-wide and stable.
class ParameterRegistry {
public:
    static int intern(std::string_view name);
    static std::string name(int id);
    static std::optional<int> find(std::string_view name);
};

/// Product of parameters with integer (possibly negative) exponents,
/// sorted by parameter id.
using ParamMonomial = std::vector<std::pair<int, int>>;

class Scalar {
public:
    struct Term {
        ParamMonomial params;
        SPoly poly;
        bool operator==(const Term&) const = default;
    };

    Scalar() = default;
    Scalar(long v);  // NOLINT(google-explicit-constructor)
    Scalar(const Rational& r);  // NOLINT(google-explicit-constructor)

    /// s^e
    static Scalar s_power(int e);
    static Scalar param(std::string_view name, int exponent = 1);
    static Scalar param(int id, int exponent = 1);
    /// Builds numerator/denominator and normalizes. Throws DegenerateError
    /// on a zero denominator.
    static Scalar fraction(std::vector<Term> numerator, SPoly denominator);

    bool is_zero() const { return num_.empty(); }
    bool is_one() const;
    bool has_params() const;
    /// True when the value is a rational number (no s, no parameters).
    bool is_rational() const;
    std::optional<Rational> as_rational() const;
    /// Single-term value c * s^e with rational c.
    std::optional<std::pair<Rational, int>> as_s_monomial() const;

    const std::vector<Term>& numerator() const { return num_; }
    const SPoly& denominator() const { return den_; }
    std::vector<int> param_ids() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    /// Multiplicative inverse. Throws DegenerateError for zero, and
    /// UsageError when the numerator mixes several parameter monomials
    /// (outside the supported coefficient class).
    Scalar inverse() const;
    Scalar pow(int e) const;
    /// s -> 1/s, parameters untouched.
    Scalar reflect_s() const;
    /// Replace parameter `id` by `value` everywhere.
    Scalar substitute(int id, const Scalar& value) const;

    bool operator==(const Scalar& o) const = default;
    /// Arbitrary but deterministic total order (used for sorting output).
    std::strong_ordering operator<=>(const Scalar& o) const;

private:
    void normalize();

    std::vector<Term> num_;  // sorted by params, no zero polys
    SPoly den_ = SPoly(Rational(1));
};

/// Session constants: q = s^(2N). All fractional q-powers used by the
/// constructions are integer s-powers on this grid.
class QContext {
public:
    explicit QContext(int n);

    int n() const { return n_; }
    /// s-exponent of q.
    int s_per_q() const { return 2 * n_; }
    /// q^(num/den); throws UsageError if the exponent is off the grid.
    Scalar q_pow(long num, long den = 1) const;
    Scalar q() const { return q_pow(1); }
    Scalar sqrt_q() const { return q_pow(1, 2); }
    /// k = q - 1/q
    Scalar k() const;
    /// h = sqrt(q) - 1/sqrt(q)
    Scalar h() const;
    /// q^e + q^-e for a half-integer e given as num/2
    Scalar omega_half(long twice_exponent) const;

    /// Human rendering of a scalar with s-powers shown as q-powers.
    std::string format(const Scalar& x) const;
    std::string format_latex(const Scalar& x) const;

private:
    int n_;
};

/// Exact rendering in s with integer exponents (used by JSON output).
std::string format_s(const Scalar& x);

/// Bar involution data: images of parameters under bar (s -> 1/s).
class BarTable {
public:
    /// Declares bar(name) = image. Throws UsageError if the declared map is
    /// not involutive on this parameter once all declarations are in place.
    void declare(std::string_view name, const Scalar& image);
    bool has(int id) const { return images_.count(id) != 0; }
    const std::map<int, Scalar>& images() const { return images_; }
    /// Verifies involutivity of every declaration; returns offending names.
    std::vector<std::string> non_involutive() const;

private:
    std::map<int, Scalar> images_;
};

/// Field automorphism s -> 1/s extended by the declared parameter images.
/// Throws UsageError for a parameter without declared image.
Scalar bar(const Scalar& x, const BarTable& table);

struct ClassicalValue {
    bool pole = false;
    int pole_order = 0;
    Scalar value;  // parameters only (s = 1); zero when pole
};

/// Substitutes s = 1 (q -> 1). Poles are reported, never thrown.
ClassicalValue eval_classical(const Scalar& x);

} // namespace qub
