#ifndef PBSAT_PROJECTOR_HPP
#define PBSAT_PROJECTOR_HPP

#include "pbsat/formula.hpp"
#include "pbsat/pba.hpp"

#include <boost/rational.hpp>

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pbsat {
using Rat = boost::rational<long long>;
}

namespace Eigen {
// Exact rational scalars for the R^3 gadget paths.
template <>
struct NumTraits<pbsat::Rat> : GenericNumTraits<pbsat::Rat> {
    typedef pbsat::Rat Real;
    typedef pbsat::Rat NonInteger;
    typedef pbsat::Rat Nested;
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 6,
        MulCost = 8,
    };
};
}  // namespace Eigen

namespace pbsat {

using MatQ = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using MatR = Eigen::MatrixXd;
using MatC = Eigen::MatrixXcd;
using Vec3Q = Eigen::Matrix<Rat, 3, 1>;

inline constexpr double kDefaultEps = 1e-9;

// ---- scalar-generic equality --------------------------------------------

inline bool mat_equal(const MatQ& a, const MatQ& b, double /*eps*/ = 0) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}
inline bool mat_equal(const MatR& a, const MatR& b, double eps = kDefaultEps) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).norm() <= eps;
}
inline bool mat_equal(const MatC& a, const MatC& b, double eps = kDefaultEps) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).norm() <= eps;
}

inline MatQ adjoint_of(const MatQ& a) { return a.transpose(); }
inline MatR adjoint_of(const MatR& a) { return a.transpose(); }
inline MatC adjoint_of(const MatC& a) { return a.adjoint(); }

// ---- projector pBA P(K^d) -----------------------------------------------
//
// Projectors in dimension d; commeasurability is commutation, ~E = I - E,
// E /\ F = EF and E \/ F = E + F - EF on commuting pairs.
template <typename M>
class ProjectorOps {
public:
    using Element = M;

    explicit ProjectorOps(int d, double eps = kDefaultEps)
        : d_(d), eps_(eps), zero_(M::Zero(d, d)), one_(M::Identity(d, d)) {
        if (d < 1 || d > 8) throw std::invalid_argument("projector_ops: need 1 <= d <= 8");
    }

    int dim() const { return d_; }
    double eps() const { return eps_; }

    M zero() const { return zero_; }
    M one() const { return one_; }
    bool comm(const M& a, const M& b) const { return mat_equal(M(a * b), M(b * a), eps_); }
    M neg(const M& a) const { return one_ - a; }
    M join(const M& a, const M& b) const { return a + b - a * b; }
    M meet(const M& a, const M& b) const { return a * b; }
    bool equal(const M& a, const M& b) const { return mat_equal(a, b, eps_); }

    bool is_projector(const M& a) const {
        return a.rows() == d_ && a.cols() == d_ && mat_equal(a, adjoint_of(a), eps_) &&
               mat_equal(M(a * a), a, eps_);
    }

private:
    int d_;
    double eps_;
    M zero_, one_;
};

using ProjectorOpsQ = ProjectorOps<MatQ>;
using ProjectorOpsR = ProjectorOps<MatR>;
using ProjectorOpsC = ProjectorOps<MatC>;

static_assert(PbaBackend<ProjectorOpsC>);

// ---- involution pBA I(C^d) ----------------------------------------------
//
// Self-adjoint A with A^2 = I.  The bijection b(E) = I - 2E carries
// projectors to involutions (0 |-> I, 1 |-> -I) and every operation is
// transported along b, making b an isomorphism; xor on involutions is the
// matrix product.
class InvolutionOps {
public:
    using Element = MatC;

    explicit InvolutionOps(int d, double eps = kDefaultEps) : proj_(d, eps) {}

    int dim() const { return proj_.dim(); }
    double eps() const { return proj_.eps(); }

    MatC to_involution(const MatC& e) const { return proj_.one() - 2 * e; }
    MatC from_involution(const MatC& a) const { return (proj_.one() - a) / 2.0; }
    bool is_involution(const MatC& a) const {
        return a.rows() == dim() && a.cols() == dim() &&
               mat_equal(a, adjoint_of(a), eps()) &&
               mat_equal(MatC(a * a), proj_.one(), eps());
    }

    MatC zero() const { return to_involution(proj_.zero()); }   // = I
    MatC one() const { return to_involution(proj_.one()); }     // = -I
    bool comm(const MatC& a, const MatC& b) const { return proj_.comm(a, b); }
    MatC neg(const MatC& a) const { return -a; }
    MatC join(const MatC& a, const MatC& b) const {
        return to_involution(proj_.join(from_involution(a), from_involution(b)));
    }
    MatC meet(const MatC& a, const MatC& b) const {
        return to_involution(proj_.meet(from_involution(a), from_involution(b)));
    }
    bool equal(const MatC& a, const MatC& b) const { return proj_.equal(a, b); }

    MatC xor_(const MatC& a, const MatC& b) const { return a * b; }

private:
    ProjectorOpsC proj_;
};

static_assert(PbaBackend<InvolutionOps>);

// ---- Pauli machinery and cross products ---------------------------------

// a1*sigma_x + a2*sigma_y + a3*sigma_z = [[a3, a1 - i a2], [a1 + i a2, -a3]].
MatC pauli(double a1, double a2, double a3);
MatC pauli(const Vec3Q& v);

Vec3Q cross(const Vec3Q& u, const Vec3Q& v);
Rat dot(const Vec3Q& u, const Vec3Q& v);

// Kronecker product.
template <typename M>
M kron(const M& a, const M& b) {
    M out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// ---- projective lines in RP^2 -------------------------------------------

// A line Rv through a nonzero rational vector, stored as the canonical
// integer representative: coprime entries, first nonzero entry positive.
class ProjLine {
public:
    explicit ProjLine(const Vec3Q& v);
    ProjLine(long long x, long long y, long long z);

    const Vec3Q& rep() const { return rep_; }
    MatQ projector() const;  // v v^T / (v.v), exact

    bool operator==(const ProjLine& o) const;
    bool operator<(const ProjLine& o) const;

private:
    Vec3Q rep_;
};

// Cross product of lines; equal lines give the zero vector, hence nullopt.
std::optional<ProjLine> line_cross(const ProjLine& a, const ProjLine& b);

bool lines_orthogonal(const ProjLine& a, const ProjLine& b);

// ---- magic square --------------------------------------------------------

// The standard two-qubit Pauli table, row-major:
//   sx(x)I  I(x)sx  sx(x)sx
//   I(x)sz  sz(x)I  sz(x)sz
//   sx(x)sz sz(x)sx sy(x)sy
// tensored with I_{d/4} when d > 4.  Every row and the first two columns
// multiply to I_d, the last column to -I_d.
std::array<MatC, 9> standard_magic(int d = 4);

// Checks the nine entries are involutions, the three entries of every row
// and column pairwise commute, and the six product equations hold.
bool magic_satisfies(const std::array<MatC, 9>& table, int d, double eps = kDefaultEps);

struct MagicDecode {
    bool ok = false;
    std::string reason;                // on failure: the violated relation
    MatC disentangler;                 // unitary U with U^dag A U in product form
    std::array<MatC, 3> qubit1;        // (X_1, Y_1, Z_1), 2x2
    std::array<MatC, 3> qubit2;        // (X_2, Y_2, Z_2), 2x2
};

// Extracts X1 := A11, Z1 := A22, X2 := A12, Z2 := A21 from a magic table at
// d = 4, verifies anti-commutation within the pairs, commutation across
// them, and (A11 A22)^2 = -I; then builds the disentangling unitary from a
// joint (+1,+1) eigenvector v of (Z1, Z2) with columns v, X2 v, X1 v,
// X1 X2 v, and returns the recovered qubit bases with Y_j := i X_j Z_j.
MagicDecode decode_magic(const std::array<MatC, 9>& table, int d, double eps = kDefaultEps);

// ---- dimension padding ---------------------------------------------------

// Given a strong projector satisfier alpha of phi at dimension d, produce a
// strong satisfier of pad_formula(phi, d) at dimension d+1: each alpha(p)
// embeds into the top-left d x d block, and the padding variables q1..q{d+1}
// receive standard-basis rank-1 projectors.  When phi evaluates to 1 on the
// all-false classical assignment the (d+1)-st corner of phi's value is
// forced to 1, so q_d absorbs E_{d+1} and q_{d+1} becomes 0 instead.
// Throws std::invalid_argument when alpha is not a strong satisfier at d.
template <typename M>
std::map<std::string, M> lift_padding_witness(const std::map<std::string, M>& alpha,
                                              const FormulaPtr& phi, int d);

// ---- rank ----------------------------------------------------------------

int rank_of(const MatQ& a);                             // exact
int rank_of(const MatR& a, double eps = kDefaultEps);   // eps-pivot
int rank_of(const MatC& a, double eps = kDefaultEps);

// ---- literals and conversion --------------------------------------------

// Row-major whitespace-separated entries; rationals are "p/q" or integers.
MatQ parse_rational_matrix(const std::string& text, int rows, int cols);
// Complex entries additionally allow "a+bi", "a-bi", "bi", "i", "-i".
MatC parse_complex_matrix(const std::string& text, int rows, int cols);

Rat parse_rational(const std::string& tok);
std::complex<double> parse_complex(const std::string& tok);

std::string print_rational_matrix(const MatQ& a);
std::string print_complex_matrix(const MatC& a);

MatR to_real(const MatQ& a);
MatC to_complex(const MatQ& a);
MatC to_complex(const MatR& a);

// ---- template implementation --------------------------------------------

template <typename M>
std::map<std::string, M> lift_padding_witness(const std::map<std::string, M>& alpha,
                                              const FormulaPtr& phi, int d) {
    ProjectorOps<M> at_d(d);
    auto ev = meaningful_eval(phi, alpha, at_d);
    if (!ev.value || !at_d.equal(*ev.value, at_d.one()))
        throw std::invalid_argument("lift_padding_witness: assignment is not a strong satisfier");

    auto embed = [&](const M& e) {
        M out = M::Zero(d + 1, d + 1);
        out.block(0, 0, d, d) = e;
        return out;
    };
    auto basis_proj = [&](int i) {
        M out = M::Zero(d + 1, d + 1);
        out(i, i) = typename M::Scalar(1);
        return out;
    };

    std::map<std::string, M> lifted;
    for (const auto& [var, mat] : alpha) lifted[var] = embed(mat);

    // The corner bit of phi's (d+1)-dimensional value under the embedded
    // assignment: variables carry corner 0, Top carries corner 1, and the
    // operations act on corners classically.
    std::map<std::string, bool> zeros;
    for (const auto& v : formula_vars(phi)) zeros[v] = false;
    bool corner = eval_classical(phi, zeros);

    for (int i = 1; i <= d + 1; ++i) lifted["q" + std::to_string(i)] = basis_proj(i - 1);
    if (corner) {
        M last = basis_proj(d - 1);
        last(d, d) = typename M::Scalar(1);
        lifted["q" + std::to_string(d)] = last;
        lifted["q" + std::to_string(d + 1)] = M::Zero(d + 1, d + 1);
    }
    return lifted;
}

}  // namespace pbsat

#endif  // PBSAT_PROJECTOR_HPP
