#pragma once

// Braid matrices of U_q(sl_N) and U_q(so_N) in the fundamental
// representation, the so_N metric, the spectral projectors, and the
// fundamental-representation images of the FRT generators.

#include "qub/matrix.hpp"
#include "qub/scalar.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qub {

enum class Family { sl, so };

std::string to_string(Family f);
Family parse_family(const std::string& s);

/// Index convention of the fundamental multiplet.
///   sl(N): 1..N
///   so(N), N odd: -n..-1, 0, 1..n
///   so(N), N even: -n..-1, 1..n
/// with n = floor(N/2).
class IndexScheme {
public:
    static IndexScheme make(Family family, int n);

    Family family() const { return family_; }
    int n() const { return n_; }
    int rank() const { return n_ / 2; }
    int size() const { return static_cast<int>(indices_.size()); }
    const std::vector<int>& indices() const { return indices_; }
    int index_at(int pos) const { return indices_[static_cast<std::size_t>(pos)]; }
    /// Position of an index value in the listed order; throws on unknown.
    int pos(int index) const;
    bool has_index(int index) const;
    /// 2*rho_i (so only; zero for sl).
    int twice_rho(int index) const;
    std::string index_name(int index) const;
    std::string label() const;

private:
    Family family_ = Family::sl;
    int n_ = 0;
    std::vector<int> indices_;
};

/// Arrangement of the tensor factors when reading e^a_b (x) e^c_d into
/// R^{ij}_{hk}. Three identities over-determine it; see build_rhat.
enum class RLayout { first_factor_outer, second_factor_outer };

/// M^{ij}_{hk} on V (x) V, stored as an N^2 x N^2 sparse matrix with
/// row (i,j) and column (h,k), positions in the scheme's listed order.
class TensorOperator {
public:
    TensorOperator() = default;
    explicit TensorOperator(IndexScheme scheme);
    TensorOperator(IndexScheme scheme, SparseMatrix m);
    static TensorOperator identity(const IndexScheme& scheme);

    const IndexScheme& scheme() const { return scheme_; }
    const SparseMatrix& matrix() const { return m_; }
    int row_of(int i, int j) const;
    /// Entry by index values.
    Scalar at(int i, int j, int h, int k) const;
    void set(int i, int j, int h, int k, const Scalar& v);
    void add(int i, int j, int h, int k, const Scalar& v);

    TensorOperator operator*(const TensorOperator& o) const;
    TensorOperator operator+(const TensorOperator& o) const;
    TensorOperator operator-(const TensorOperator& o) const;
    TensorOperator scaled(const Scalar& s) const;
    TensorOperator inverse() const;
    /// (i,j,h,k) -> (j,i,k,h)
    TensorOperator factor_swapped() const;
    /// (i,j,h,k) -> (h,k,i,j)
    TensorOperator transposed() const;
    TensorOperator map_entries(const std::function<Scalar(const Scalar&)>& fn) const;
    bool is_zero() const { return m_.is_zero(); }
    bool operator==(const TensorOperator& o) const { return m_ == o.m_; }

private:
    IndexScheme scheme_;
    SparseMatrix m_;
};

/// so(N) metric g_{ij} = g^{ij} = q^{-rho_i} delta_{i,-j}.
struct Metric {
    IndexScheme scheme;
    std::vector<std::vector<Scalar>> lower;  // g_{ij} by positions
    std::vector<std::vector<Scalar>> upper;  // g^{ij} by positions

    Scalar g_lower(int i, int j) const;
    Scalar g_upper(int i, int j) const;
    /// g^{sm} g_{sm}
    Scalar trace_norm() const;
};

struct Projectors {
    TensorOperator antisym;  // P_a
    TensorOperator sym;      // P_s
    std::optional<TensorOperator> trace;  // P_t (so only)
    /// Eigenvalues of the normalized braid matrix for each projector.
    Scalar lambda_sym, lambda_antisym;
    std::optional<Scalar> lambda_trace;
};

/// R-hat exactly as the appendix formulas. For sl the returned matrix
/// includes the q^{-1/N} prefactor.
TensorOperator build_rhat(const IndexScheme& scheme, const QContext& ctx,
                          RLayout layout = RLayout::first_factor_outer);
/// The normalized braid matrix whose minimal polynomial has the projector
/// eigenvalues: q^{1/N} R-hat for sl, R-hat for so.
TensorOperator normalized_rhat(const TensorOperator& rhat, const QContext& ctx);

Metric build_metric(const IndexScheme& scheme, const QContext& ctx);

/// Spectral projectors of R-hat, by exact Lagrange interpolation.
Projectors build_projectors(const TensorOperator& rhat, const QContext& ctx);
/// P_t from the metric: (g^{sm} g_{sm})^{-1} g^{ij} g_{kl}.
TensorOperator trace_projector_from_metric(const Metric& g, const QContext& ctx);

enum class Sign { plus, minus };
std::string to_string(Sign s);
Sign parse_sign(const std::string& s);

/// Fundamental-representation images rho(L^{+-a}_l), one N x N matrix per
/// (a,l): entry (i,j) is M^{ai}_{jl} with M = R-hat (sign +) or R-hat^{-1}
/// (sign -).
class LSlices {
public:
    LSlices(const TensorOperator& rhat, Sign sign);
    Sign sign() const { return sign_; }
    const IndexScheme& scheme() const { return m_.scheme(); }
    /// rho^i_j(L^a_l), index values.
    Scalar rho(int a, int l, int i, int j) const { return m_.at(a, i, j, l); }
    /// Block matrix [rho(L^a_l)^i_j] with row (a,i) and column (l,j).
    SparseMatrix block() const;

private:
    Sign sign_;
    TensorOperator m_;
};

// --- identity checks --------------------------------------------------

/// (R (x) 1)(1 (x) R)(R (x) 1) - (1 (x) R)(R (x) 1)(1 (x) R) on V^{(x)3}.
SparseMatrix yang_baxter_residual(const TensorOperator& rhat);
/// Product of (R' - lambda) over the projector eigenvalues.
TensorOperator minimal_polynomial_residual(const TensorOperator& rhat, const QContext& ctx);
/// Eigenvalues of the normalized braid matrix: sym, antisym, [trace].
std::vector<Scalar> rhat_eigenvalues(const IndexScheme& scheme, const QContext& ctx);

/// Which rearrangements of bar(R-hat) equal R-hat^{-1}.
struct BarArrangement {
    bool identity = false;
    bool factor_swap = false;
    bool transpose = false;
    bool swap_transpose = false;
};
BarArrangement bar_vs_inverse(const TensorOperator& rhat);

} // namespace qub
