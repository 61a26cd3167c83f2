#include "pbsat/projector.hpp"

#include <Eigen/Eigenvalues>

#include <numeric>
#include <sstream>

namespace pbsat {

using namespace std::complex_literals;

// ---- Pauli machinery ----------------------------------------------------

MatC pauli(double a1, double a2, double a3) {
    MatC m(2, 2);
    m << a3, a1 - 1i * a2, a1 + 1i * a2, -a3;
    return m;
}

MatC pauli(const Vec3Q& v) {
    return pauli(boost::rational_cast<double>(v(0)), boost::rational_cast<double>(v(1)),
                 boost::rational_cast<double>(v(2)));
}

Vec3Q cross(const Vec3Q& u, const Vec3Q& v) {
    Vec3Q w;
    w(0) = u(1) * v(2) - u(2) * v(1);
    w(1) = u(2) * v(0) - u(0) * v(2);
    w(2) = u(0) * v(1) - u(1) * v(0);
    return w;
}

Rat dot(const Vec3Q& u, const Vec3Q& v) {
    return u(0) * v(0) + u(1) * v(1) + u(2) * v(2);
}

// ---- projective lines ---------------------------------------------------

namespace {

Vec3Q canonical_rep(const Vec3Q& v) {
    if (v(0) == Rat(0) && v(1) == Rat(0) && v(2) == Rat(0))
        throw std::invalid_argument("ProjLine: zero vector");
    // Clear denominators, reduce to coprime integers, fix the sign of the
    // first nonzero entry.
    long long lcm = 1;
    for (int i = 0; i < 3; ++i) lcm = std::lcm(lcm, v(i).denominator());
    long long a[3];
    for (int i = 0; i < 3; ++i) a[i] = v(i).numerator() * (lcm / v(i).denominator());
    long long g = 0;
    for (long long x : a) g = std::gcd(g, x < 0 ? -x : x);
    for (long long& x : a) x /= g;
    for (int i = 0; i < 3; ++i) {
        if (a[i] == 0) continue;
        if (a[i] < 0)
            for (long long& x : a) x = -x;
        break;
    }
    Vec3Q out;
    for (int i = 0; i < 3; ++i) out(i) = Rat(a[i]);
    return out;
}

}  // namespace

ProjLine::ProjLine(const Vec3Q& v) : rep_(canonical_rep(v)) {}

ProjLine::ProjLine(long long x, long long y, long long z) {
    Vec3Q v;
    v(0) = Rat(x), v(1) = Rat(y), v(2) = Rat(z);
    rep_ = canonical_rep(v);
}

MatQ ProjLine::projector() const {
    Rat n = dot(rep_, rep_);
    MatQ out(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out(i, j) = rep_(i) * rep_(j) / n;
    return out;
}

bool ProjLine::operator==(const ProjLine& o) const {
    return rep_(0) == o.rep_(0) && rep_(1) == o.rep_(1) && rep_(2) == o.rep_(2);
}

bool ProjLine::operator<(const ProjLine& o) const {
    for (int i = 0; i < 3; ++i) {
        if (rep_(i) != o.rep_(i)) return rep_(i) < o.rep_(i);
    }
    return false;
}

std::optional<ProjLine> line_cross(const ProjLine& a, const ProjLine& b) {
    Vec3Q w = cross(a.rep(), b.rep());
    if (w(0) == Rat(0) && w(1) == Rat(0) && w(2) == Rat(0)) return std::nullopt;
    return ProjLine(w);
}

bool lines_orthogonal(const ProjLine& a, const ProjLine& b) {
    return dot(a.rep(), b.rep()) == Rat(0);
}

// ---- magic square -------------------------------------------------------

namespace {

MatC sigma_x() { return pauli(1, 0, 0); }
MatC sigma_y() { return pauli(0, 1, 0); }
MatC sigma_z() { return pauli(0, 0, 1); }

}  // namespace

std::array<MatC, 9> standard_magic(int d) {
    if (d < 4 || d % 4 != 0)
        throw std::invalid_argument("standard_magic: dimension must be a positive multiple of 4");
    MatC i2 = MatC::Identity(2, 2);
    MatC sx = sigma_x(), sy = sigma_y(), sz = sigma_z();
    std::array<MatC, 9> t = {
        kron(sx, i2), kron(i2, sx), kron(sx, sx),
        kron(i2, sz), kron(sz, i2), kron(sz, sz),
        kron(sx, sz), kron(sz, sx), kron(sy, sy),
    };
    if (d > 4) {
        MatC pad = MatC::Identity(d / 4, d / 4);
        for (auto& m : t) m = kron(m, pad);
    }
    return t;
}

bool magic_satisfies(const std::array<MatC, 9>& table, int d, double eps) {
    MatC id = MatC::Identity(d, d);
    for (const auto& m : table) {
        if (m.rows() != d || m.cols() != d) return false;
        if (!mat_equal(m, adjoint_of(m), eps)) return false;
        if (!mat_equal(MatC(m * m), id, eps)) return false;
    }
    auto at = [&](int r, int c) -> const MatC& { return table[3 * r + c]; };
    auto commute = [&](const MatC& a, const MatC& b) {
        return mat_equal(MatC(a * b), MatC(b * a), eps);
    };
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                if (!commute(at(k, i), at(k, j))) return false;  // within row k
                if (!commute(at(i, k), at(j, k))) return false;  // within column k
            }
    for (int r = 0; r < 3; ++r)
        if (!mat_equal(MatC(at(r, 0) * at(r, 1) * at(r, 2)), id, eps)) return false;
    for (int c = 0; c < 2; ++c)
        if (!mat_equal(MatC(at(0, c) * at(1, c) * at(2, c)), id, eps)) return false;
    if (!mat_equal(MatC(at(0, 2) * at(1, 2) * at(2, 2)), MatC(-id), eps)) return false;
    return true;
}

MagicDecode decode_magic(const std::array<MatC, 9>& table, int d, double eps) {
    MagicDecode out;
    if (d != 4) {
        out.reason = "decode_magic supports d = 4 only";
        return out;
    }
    if (!magic_satisfies(table, d, eps)) {
        out.reason = "table does not satisfy the magic-square relations";
        return out;
    }
    MatC id = MatC::Identity(4, 4);
    MatC x1 = table[0], z1 = table[4], x2 = table[1], z2 = table[3];

    auto anticommute = [&](const MatC& a, const MatC& b) {
        return MatC(a * b + b * a).norm() <= eps;
    };
    auto commute = [&](const MatC& a, const MatC& b) {
        return MatC(a * b - b * a).norm() <= eps;
    };
    if (!anticommute(x1, z1)) { out.reason = "{X1, Z1} != 0"; return out; }
    if (!anticommute(x2, z2)) { out.reason = "{X2, Z2} != 0"; return out; }
    if (!commute(x1, x2)) { out.reason = "[X1, X2] != 0"; return out; }
    if (!commute(x1, z2)) { out.reason = "[X1, Z2] != 0"; return out; }
    if (!commute(z1, x2)) { out.reason = "[Z1, X2] != 0"; return out; }
    if (!commute(z1, z2)) { out.reason = "[Z1, Z2] != 0"; return out; }
    if (!mat_equal(MatC((x1 * z1) * (x1 * z1)), MatC(-id), eps)) {
        out.reason = "(A11 A22)^2 != -I";
        return out;
    }

    // Joint (+1,+1) eigenspace of the commuting pair (Z1, Z2) is one
    // dimensional; project onto it and take the dominant column as v.
    MatC p = ((id + z1) / 2.0) * ((id + z2) / 2.0);
    int best = 0;
    for (int c = 1; c < 4; ++c)
        if (p.col(c).norm() > p.col(best).norm()) best = c;
    if (p.col(best).norm() <= eps) {
        out.reason = "joint (+1,+1) eigenspace of (Z1, Z2) is trivial";
        return out;
    }
    Eigen::VectorXcd v = p.col(best) / p.col(best).norm();

    MatC u(4, 4);
    u.col(0) = v;
    u.col(1) = x2 * v;
    u.col(2) = x1 * v;
    u.col(3) = x1 * (x2 * v);
    if (!mat_equal(MatC(u.adjoint() * u), id, 1e-7)) {
        out.reason = "disentangling columns are not orthonormal";
        return out;
    }

    // In the disentangled basis X1, Z1 act on the first factor and X2, Z2
    // on the second; read the 2x2 factors off the block structure.
    auto factor_first = [&](const MatC& a) {
        MatC b = u.adjoint() * a * u;
        MatC f(2, 2);
        f << b(0, 0), b(0, 2), b(2, 0), b(2, 2);
        return f;
    };
    auto factor_second = [&](const MatC& a) {
        MatC b = u.adjoint() * a * u;
        MatC f(2, 2);
        f << b(0, 0), b(0, 1), b(1, 0), b(1, 1);
        return f;
    };
    MatC fx1 = factor_first(x1), fz1 = factor_first(z1);
    MatC fx2 = factor_second(x2), fz2 = factor_second(z2);
    MatC i2 = MatC::Identity(2, 2);
    if (!mat_equal(MatC(u.adjoint() * x1 * u), kron(fx1, i2), 1e-7) ||
        !mat_equal(MatC(u.adjoint() * z1 * u), kron(fz1, i2), 1e-7) ||
        !mat_equal(MatC(u.adjoint() * x2 * u), kron(i2, fx2), 1e-7) ||
        !mat_equal(MatC(u.adjoint() * z2 * u), kron(i2, fz2), 1e-7)) {
        out.reason = "disentangled operators are not in product form";
        return out;
    }

    out.ok = true;
    out.disentangler = u;
    out.qubit1 = {fx1, MatC(1i * fx1 * fz1), fz1};
    out.qubit2 = {fx2, MatC(1i * fx2 * fz2), fz2};
    return out;
}

// ---- rank ---------------------------------------------------------------

int rank_of(const MatQ& a) {
    MatQ m = a;
    int rank = 0;
    Eigen::Index rows = m.rows(), cols = m.cols();
    for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index r = rank; r < rows; ++r)
            if (m(r, col) != Rat(0)) { piv = r; break; }
        if (piv < 0) continue;
        m.row(rank).swap(m.row(piv));
        for (Eigen::Index r = 0; r < rows; ++r) {
            if (r == rank || m(r, col) == Rat(0)) continue;
            Rat f = m(r, col) / m(rank, col);
            for (Eigen::Index c = col; c < cols; ++c) m(r, c) -= f * m(rank, c);
        }
        ++rank;
    }
    return rank;
}

namespace {

template <typename M>
int rank_eps(const M& a, double eps) {
    M m = a;
    int rank = 0;
    Eigen::Index rows = m.rows(), cols = m.cols();
    for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
        Eigen::Index piv = rank;
        for (Eigen::Index r = rank + 1; r < rows; ++r)
            if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
        if (std::abs(m(piv, col)) <= eps) continue;
        m.row(rank).swap(m.row(piv));
        for (Eigen::Index r = 0; r < rows; ++r) {
            if (r == rank) continue;
            auto f = m(r, col) / m(rank, col);
            for (Eigen::Index c = col; c < cols; ++c) m(r, c) -= f * m(rank, c);
        }
        ++rank;
    }
    return rank;
}

}  // namespace

int rank_of(const MatR& a, double eps) { return rank_eps(a, eps); }
int rank_of(const MatC& a, double eps) { return rank_eps(a, eps); }

// ---- literals and conversion --------------------------------------------

Rat parse_rational(const std::string& tok) {
    size_t slash = tok.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(tok));
        long long num = std::stoll(tok.substr(0, slash));
        long long den = std::stoll(tok.substr(slash + 1));
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::runtime_error("bad rational literal '" + tok + "'");
    }
}

std::complex<double> parse_complex(const std::string& tok) {
    auto real_part = [](const std::string& s) -> double {
        size_t slash = s.find('/');
        if (slash == std::string::npos) return std::stod(s);
        return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
    };
    try {
        if (tok.empty()) throw std::runtime_error("empty");
        if (tok.back() != 'i') return {real_part(tok), 0.0};
        // Split "a+bi" / "a-bi" at the last sign that is not leading and not
        // part of an exponent; bare "bi", "i", "-i" have no real part.
        std::string body = tok.substr(0, tok.size() - 1);
        size_t split = std::string::npos;
        for (size_t k = body.size(); k-- > 1;) {
            if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        if (split == std::string::npos) {
            std::string im = body;
            if (im.empty() || im == "+") im = "1";
            else if (im == "-") im = "-1";
            return {0.0, real_part(im)};
        }
        std::string im = body.substr(split);
        if (im == "+") im = "1";
        else if (im == "-") im = "-1";
        return {real_part(body.substr(0, split)), real_part(im)};
    } catch (const std::exception&) {
        throw std::runtime_error("bad complex literal '" + tok + "'");
    }
}

namespace {

std::vector<std::string> matrix_tokens(const std::string& text, int rows, int cols) {
    std::vector<std::string> toks;
    std::istringstream in(text);
    std::string t;
    while (in >> t) toks.push_back(t);
    if (static_cast<int>(toks.size()) != rows * cols)
        throw std::runtime_error("matrix literal: expected " + std::to_string(rows * cols) +
                                 " entries, got " + std::to_string(toks.size()));
    return toks;
}

}  // namespace

MatQ parse_rational_matrix(const std::string& text, int rows, int cols) {
    auto toks = matrix_tokens(text, rows, cols);
    MatQ out(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out(i, j) = parse_rational(toks[i * cols + j]);
    return out;
}

MatC parse_complex_matrix(const std::string& text, int rows, int cols) {
    auto toks = matrix_tokens(text, rows, cols);
    MatC out(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out(i, j) = parse_complex(toks[i * cols + j]);
    return out;
}

std::string print_rational_matrix(const MatQ& a) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (j) os << ' ';
            const Rat& r = a(i, j);
            os << r.numerator();
            if (r.denominator() != 1) os << '/' << r.denominator();
        }
        os << '\n';
    }
    return os.str();
}

std::string print_complex_matrix(const MatC& a) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (j) os << ' ';
            std::complex<double> z = a(i, j);
            os << z.real();
            os << (z.imag() < 0 ? '-' : '+') << std::abs(z.imag()) << 'i';
        }
        os << '\n';
    }
    return os.str();
}

MatR to_real(const MatQ& a) {
    MatR out(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out(i, j) = boost::rational_cast<double>(a(i, j));
    return out;
}

MatC to_complex(const MatQ& a) { return to_real(a).cast<std::complex<double>>(); }
MatC to_complex(const MatR& a) { return a.cast<std::complex<double>>(); }

}  // namespace pbsat
