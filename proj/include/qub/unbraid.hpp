#pragma once

// Realizations phi of the cross product A_1 x| H inside A_1, the unbraiding
// maps chi built from them, and the checks that the new generators commute
// with the fixed copy and still satisfy the old relations.

#include "qub/spaces.hpp"

#include <map>
#include <string>
#include <vector>

namespace qub {

/// Realization phi: images of the FRT generators of one sign, living in a
/// single copy (the "host" copy) of the algebra.
struct PhiTable {
    Sign sign = Sign::minus;
    IndexScheme scheme;
    int host_copy = 1;
    /// images[p][q] = phi(L^{i}_{j}) with i = index_at(p), j = index_at(q)
    PolyMatrix images;
    /// antipode[p][q] = phi(S L^{i}_{j}); empty until computed
    PolyMatrix antipode;
    Triangularity shape = Triangularity::diagonal;
    /// gamma_a by index a (gamma-bar for sign +)
    std::map<int, Scalar> gamma;
    /// Free parameters and their bar images (for the star checks).
    BarTable bar;

    const NCPoly& image(int i, int j) const;
    const NCPoly& antipode_image(int i, int j) const;
};

/// Names of the free normalization parameters: gamma1, gamma2, ... for the
/// - sign and gammabar1, ... for the + sign.
std::string gamma_name(Sign sign, int a);

/// Bar images declared for the free parameters.
///   consistent: bar(gamma_a) = -q^2 gamma_a (- sign), bar(gammabar_a) =
///     -gammabar_a (+ sign), a > 0; both imply bar(gamma_{-a}) = -gamma_{-a}
///     through the product constraint.
///   literal: bar(gamma_a) = -q^{-2} gamma_a for a > 0 (either sign); this
///     contradicts the product constraint unless q^4 = 1.
///   trivial: bar(gamma_a) = gamma_a (a negative control).
enum class RealityChoice { consistent, literal, trivial };
std::string to_string(RealityChoice c);
BarTable reality_declarations(Sign sign, int n, const QContext& ctx, RealityChoice choice);

/// The realization of the quantum Euclidean space for odd N (3 or 5).
/// `assign` substitutes values for free parameters (missing ones stay
/// symbolic and get bar images per `reality`).
PhiTable build_phi_euclidean(const Space& space, Sign sign, const std::map<std::string, Scalar>& assign = {},
                             RealityChoice reality = RealityChoice::consistent);

/// Fills phi.antipode by triangular inversion and records the orientation.
void compute_antipode(PhiTable& phi, const Space& space);

struct Residual {
    std::string label;
    NCPoly residual;
};

struct UnbraidReport {
    std::size_t checks = 0;
    std::vector<Residual> commutation_failures;
    std::vector<Residual> relation_failures;
    std::vector<Residual> residual_braiding_failures;
    std::vector<std::string> notes;
    bool injective = true;

    bool pass() const
    {
        return injective && commutation_failures.empty() && relation_failures.empty() &&
               residual_braiding_failures.empty();
    }
    void merge(const UnbraidReport& o);
};

/// Index arrangement of the coefficient tensor in the exchange relation
///   x^k phi(L^i_j) = sum_{m,l} phi(L^i_m) C(m,k,l,j) x^l.
/// `slice` reads C from the fundamental images, C = rho^k_l(L^m_j).
enum class ExchangeArrangement { slice, slice_transposed, slice_inverse_matrix, slice_factor_swapped };
std::string to_string(ExchangeArrangement a);
/// The arrangement fixed by the golden N = 3 formulas.
constexpr ExchangeArrangement kExchangeArrangement = ExchangeArrangement::slice;

/// Checks the exchange relation for all (i, j, k) and phi(L) phi(SL) = 1.
UnbraidReport verify_phi_exchange(const PhiTable& phi, const Space& space,
                                  ExchangeArrangement arrangement = kExchangeArrangement);

/// Images of the generators of `copy` under chi (coordinates and, when
/// present, derivatives). Indexed by generator.
struct GeneratorImages {
    std::map<GenId, NCPoly> image;
    const NCPoly& of(const Generator& g) const;
};

/// chi applied to one copy (which must differ from the host copy and lie
/// on the side prescribed by the sign).
GeneratorImages chi_images(const PhiTable& phi, const Space& space, int copy);
/// chi applied to a polynomial in the non-host copies.
NCPoly chi_apply(const PhiTable& phi, const Space& space, const NCPoly& target);

/// Checks on the images of every non-host copy:
///   (1) they commute with every generator of the host copy;
///   (2) single-copy relations hold for the images;
///   (3) cross relations among non-host copies hold for the images.
/// Also records generator-level injectivity (distinct leading words).
UnbraidReport verify_unbraiding(const PhiTable& phi, const Space& space);

struct UnbraidStep {
    int step = 0;                 // 1-based
    int fixed_copy = 0;           // original copy label fixed by this step
    std::vector<int> copies;      // original labels of the copies in this step's algebra
    std::map<int, GeneratorImages> images;  // by local copy label
    UnbraidReport report;
    bool radius_preserved = true;
};

struct UnbraidResult {
    std::vector<UnbraidStep> steps;
    UnbraidReport report;
};

/// Recursion for M copies of the quantum Euclidean space:
/// step k fixes one more copy; every step is run on the relabeled
/// (M-k+1)-copy algebra, which the previous step proved isomorphic to the
/// algebra of the remaining decoupled generators.
UnbraidResult unbraid_iterate(const SpaceSpec& spec, const std::map<std::string, Scalar>& assign = {});

// ---------------------------------------------------------------- star

/// Star structure in the |q| = 1 regime: antilinear (bar on coefficients),
/// antimultiplicative, x* = x, r* = r, (d_i)* = -q^{sN} g^{kh} g_{ki} d_h
/// with s = derivative_sign.
struct StarStructure {
    const Space* space = nullptr;
    BarTable bar;
    int derivative_sign = 1;

    NCPoly apply(const NCPoly& p) const;
};

struct StarReport {
    bool involutive = true;
    bool relations_preserved = true;
    std::vector<Residual> failures;
    int derivative_sign = 0;  // chosen sign for Heisenberg builds
    bool pass() const { return involutive && relations_preserved && failures.empty(); }
};

/// Checks involutivity on a basket of words and that * maps every defining
/// relation into the ideal. For Heisenberg builds both derivative signs are
/// tried and the one that works is reported.
StarReport verify_star_structure(const Space& space, const BarTable& bar, unsigned seed = 1);

/// Self-adjointness of the decoupled generators and *-closure of the host
/// copy's generator set.
UnbraidReport verify_star_chi(const PhiTable& phi, const Space& space);

// ---------------------------------------------------------------- import

/// Text format, one statement per line ('#' starts a comment):
///   sign minus|plus
///   family so|sl
///   n <N>
///   host <copy>
///   param <name> bar = <expr>
///   image <i> <j> = <expr>
///   antipode <i> <j> = <expr>
/// Expressions: sums and products of integers, rationals a/b, q, s, h, k,
/// q^(a/b), declared parameters, and generator tokens x[c,i], d[c,i],
/// r[c,a], rinv[c,a], xinv[c,0] (also r[a], rinv[a], x0inv for the host
/// copy). Products keep their order; division is by scalars only.
PhiTable parse_phi_table(const std::string& text, const Space& space);
/// Parses a single expression against the space's generators.
NCPoly parse_expression(const std::string& text, const Space& space, int default_copy = 1);
std::string write_phi_table(const PhiTable& phi, const Space& space);

} // namespace qub
