#pragma once

#include <fockops/norms.hpp>
#include <fockops/symbol.hpp>

#include <Eigen/Dense>
#include <Eigen/SVD>


namespace fockops {

/// Matrix of D_(u,psi,n) in the orthonormal basis e_k = z^k / sqrt(k!) of F_2.
/// Columns are degrees offset .. offset+N-1. `tall` keeps every row from
/// degree 0 to rows-1 so that column norms are those of T e_k; `square()`
/// is the N x N section with rows from degree `offset`.
struct FiniteSectionMatrix {
    int N = 0;
    int offset = 0;
    int buffer = 64;
    int rows = 0;
    Eigen::MatrixXcd tall;
    double tail_estimate = 0.0;  // max over columns of (discarded l2 mass) / (column norm)
    std::vector<std::string> flags;

    Eigen::MatrixXcd square() const
    {
        const int r = std::min(N, std::max(0, rows - offset));
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(N, N);
        out.topRows(r) = tall.block(offset, 0, r, N);
        return out;
    }
};

namespace detail {

inline std::vector<double> log_factorials(int n)
{
    std::vector<double> lf(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 1; k <= n; ++k)
        lf[k] = lf[k - 1] + std::log(static_cast<double>(k));
    return lf;
}

/// Complex number with modulus exp(log_mod) and phase `phase`.
inline Complex from_log(double log_mod, double phase)
{
    return log_mod == -kInf ? Complex{} : std::polar(std::exp(log_mod), phase);
}

/// Coefficients of u in the normalized basis, degrees 0..len-1.
inline std::vector<Complex> normalized_weight(const ExpPolyFunction& u, int len, const std::vector<double>& lf)
{
    const auto& e = u.expo();
    std::vector<Complex> w(len);
    w[0] = std::exp(e[0]);
    for (int k = 0; k + 1 < len; ++k) {
        Complex next = e[1] * w[k];
        if (k >= 1)
            next += 2.0 * e[2] * w[k - 1] * std::sqrt(static_cast<double>(k));
        w[k + 1] = next / std::sqrt(static_cast<double>(k + 1));
    }
    std::vector<Complex> poly(len);
    const auto& P = u.poly();
    for (std::size_t j = 0; j < P.size() && static_cast<int>(j) < len; ++j)
        poly[j] = P[j] * std::exp(0.5 * lf[j]);
    std::vector<Complex> out(len);
    for (int j = 0; j < len; ++j)
        for (int l = 0; l <= j && l < static_cast<int>(P.size()); ++l)
            if (poly[l] != Complex{})
                out[j] += poly[l] * w[j - l] * std::exp(0.5 * (lf[j] - lf[l] - lf[j - l]));
    return out;
}

} // namespace detail

/// Builds the section from exact series: D^n e_k = sqrt(k!/(k-n)!) e_{k-n},
/// e_m o psi = sum_i a^i b^{m-i} sqrt(C(m,i)) / sqrt((m-i)!) e_i, and the product
/// with u through out_j = sum_l v_l d_{j-l} sqrt(C(j,l)).
inline FiniteSectionMatrix build_matrix(const OperatorSpec& spec, int N, int offset = 0, int buffer = 64)
{
    if (N < 1 || N > 512)
        throw std::invalid_argument("finite section size must lie in [1, 512]");
    if (offset < 0 || buffer < 0)
        throw std::invalid_argument("offset and buffer must be nonnegative");
    FiniteSectionMatrix mat;
    mat.N = N;
    mat.offset = offset;
    mat.buffer = buffer;
    mat.rows = N + offset + buffer;
    const int extra = 16;
    const int len = mat.rows + extra;
    const auto lf = detail::log_factorials(len + offset + N);
    const auto d = detail::normalized_weight(spec.u, len, lf);
    const auto form = SymbolForm::of(spec);
    const bool bounded = form.zero || form.lambda_max <= kBoundaryTol;
    if (!bounded)
        mat.flags.push_back("unbounded_spec");

    const Complex a = spec.psi.is_constant ? Complex{} : spec.psi.a;
    const Complex b = spec.psi.b;
    const double la = log_abs(a), lb = log_abs(b);
    mat.tall = Eigen::MatrixXcd::Zero(mat.rows, N);

    for (int c = 0; c < N; ++c) {
        const int k = offset + c;
        if (k < spec.n)
            continue;
        const int m = k - spec.n;
        const double log_d = 0.5 * (lf[k] - lf[m]);
        // v = coefficients of e_m o psi, scaled by the derivative factor
        std::vector<Complex> v(std::min(m + 1, len));
        for (int i = 0; i < static_cast<int>(v.size()); ++i) {
            const double lm = log_d + (i > 0 ? i * la : 0.0) + (m - i > 0 ? (m - i) * lb : 0.0) +
                              0.5 * (lf[m] - lf[i] - lf[m - i]) - 0.5 * lf[m - i];
            const double ph = (i > 0 ? i * std::arg(a) : 0.0) + (m - i > 0 ? (m - i) * std::arg(b) : 0.0);
            v[i] = detail::from_log(lm, ph);
        }
        std::vector<Complex> col(len);
        for (int l = 0; l < static_cast<int>(v.size()); ++l) {
            if (v[l] == Complex{})
                continue;
            for (int j = l; j < len; ++j)
                col[j] += v[l] * d[j - l] * std::exp(0.5 * (lf[j] - lf[l] - lf[j - l]));
        }
        double head = 0.0, tail = 0.0;
        for (int j = 0; j < len; ++j) {
            if (j < mat.rows) {
                mat.tall(j, c) = col[j];
                head += std::norm(col[j]);
            } else {
                tail += std::norm(col[j]);
            }
        }
        if (head > 0.0)
            mat.tail_estimate = std::max(mat.tail_estimate, std::sqrt(tail / head));
    }
    if (mat.tail_estimate > 1e-8) {
        if (bounded)
            throw TruncationOverflow("finite-section tail " + std::to_string(mat.tail_estimate) +
                                     " exceeds 1e-8 of the column norm; increase the buffer");
        mat.flags.push_back("tail_not_negligible");
    }
    return mat;
}

/// Smallest singular value of the range-complete (tall) block.
inline double sigma_min(const FiniteSectionMatrix& mat)
{
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(mat.tall);
    const auto& s = svd.singularValues();
    return s.size() ? s(s.size() - 1) : 0.0;
}

inline double sigma_min(const Eigen::MatrixXcd& m)
{
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    return s.size() ? s(s.size() - 1) : 0.0;
}

inline double operator_norm(const Eigen::MatrixXcd& m)
{
    if (m.size() == 0)
        return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

/// s_m = ||A^m||_2^{1/m}, m = 1..m_max, with A^m renormalized at each step.
inline std::vector<double> spectral_radius_estimate(const Eigen::MatrixXcd& A, int m_max)
{
    if (A.rows() != A.cols())
        throw std::invalid_argument("spectral radius needs a square matrix");
    if (m_max < 1)
        throw std::invalid_argument("m_max must be positive");
    std::vector<double> s;
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Identity(A.rows(), A.cols());
    double log_scale = 0.0;
    for (int m = 1; m <= m_max; ++m) {
        B = B * A;
        const double nb = operator_norm(B);
        if (nb == 0.0) {
            s.push_back(0.0);
            B.setZero();
            continue;
        }
        log_scale += std::log(nb);
        B /= nb;
        s.push_back(std::exp(log_scale / m));
    }
    return s;
}

inline std::vector<double> spectral_radius_estimate(const FiniteSectionMatrix& mat, int m_max)
{
    return spectral_radius_estimate(mat.square(), m_max);
}

struct RatioTest {
    double m = 1.0, p = 2.0, q = 2.0;
    std::vector<std::pair<int, double>> ratios;  // (k, k ||z^{k-1}||_(m,q) / ||z^k||_(m,p))
    double exponent = 0.0;                       // least-squares slope of log ratio vs log k on the tail
    double intercept = 0.0;
    int fit_from = 1, fit_to = 1;
    double floor = 0.0;  // min ratio over the fitted tail
};

inline double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y, double* intercept = nullptr)
{
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (intercept)
        *intercept = (sy - slope * sx) / n;
    return slope;
}

/// Monomial ratios from the exact Gamma closed forms, with the power-law
/// exponent fitted over k in [k_max/2, k_max].
inline RatioTest ratio_test(double m, double p, double q, int k_max)
{
    if (!(m > 0.0))
        throw std::invalid_argument("growth exponent m must be positive");
    require_exponent(p, "p");
    require_exponent(q, "q");
    if (k_max < 4)
        throw std::invalid_argument("k_max must be at least 4");
    RatioTest out{m, p, q, {}, 0.0, 0.0, std::max(1, k_max / 2), k_max, kInf};
    std::vector<double> lx, ly;
    for (int k = 1; k <= k_max; ++k) {
        const double lr = std::log(static_cast<double>(k)) + log_monomial_norm_fock_type(k - 1, m, q) -
                          log_monomial_norm_fock_type(k, m, p);
        out.ratios.emplace_back(k, std::exp(lr));
        if (k >= out.fit_from) {
            lx.push_back(std::log(static_cast<double>(k)));
            ly.push_back(lr);
            out.floor = std::min(out.floor, std::exp(lr));
        }
    }
    out.exponent = least_squares_slope(lx, ly, &out.intercept);
    return out;
}

/// Row-major CSV with each complex entry written as a quoted "re,im" cell.
inline std::string matrix_to_csv(const Eigen::MatrixXcd& m)
{
    std::string out;
    char buf[96];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "\"%.17g,%.17g\"", m(i, j).real(), m(i, j).imag());
            if (j)
                out += ',';
            out += buf;
        }
        out += "\r\n";
    }
    return out;
}

} // namespace fockops
