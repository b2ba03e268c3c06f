#include "reabc/linalg.hpp"
#include "reabc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace reabc {

Matrix Matrix::identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
    Matrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::scaled(double factor) const {
    Matrix m(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j) * factor;
    return m;
}

bool Matrix::is_symmetric(double tol) const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (std::fabs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
}

bool Matrix::is_zero() const {
    for (double v : a_)
        if (v != 0.0) return false;
    return true;
}

Matrix cholesky_psd(const Matrix& m) {
    const int n = m.dim();
    if (n == 0) throw std::invalid_argument("cholesky_psd: empty matrix");
    if (!m.is_symmetric(1e-9)) throw std::invalid_argument("cholesky_psd: matrix not symmetric");

    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::fabs(m(i, i)));
    const double tol = 1e-12 * std::max(scale, 1.0);

    Matrix chol(n);
    for (int j = 0; j < n; ++j) {
        double d = m(j, j);
        for (int k = 0; k < j; ++k) d -= chol(j, k) * chol(j, k);
        if (d < -tol) throw std::invalid_argument("cholesky_psd: matrix not positive semidefinite");
        if (d <= tol) {
            chol(j, j) = 0.0; // semidefinite direction: zero column
            continue;
        }
        chol(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            double s = m(i, j);
            for (int k = 0; k < j; ++k) s -= chol(i, k) * chol(j, k);
            chol(i, j) = s / chol(j, j);
        }
    }
    return chol;
}

std::vector<double> gaussian_increment(const Matrix& chol, Rng& rng) {
    const int n = chol.dim();
    std::vector<double> z(n), v(n, 0.0);
    for (int i = 0; i < n; ++i) z[i] = rng.normal();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) v[i] += chol(i, j) * z[j];
    }
    return v;
}

double gaussian_log_density(const Matrix& chol, const std::vector<double>& v) {
    const int n = chol.dim();
    if (static_cast<int>(v.size()) != n) {
        throw std::invalid_argument("gaussian_log_density: dimension mismatch");
    }
    // Forward solve L w = v, then density from |w|^2 and the log determinant.
    std::vector<double> w(n);
    double log_det = 0.0;
    for (int i = 0; i < n; ++i) {
        if (chol(i, i) <= 0.0) {
            throw std::invalid_argument("gaussian_log_density: covariance is singular");
        }
        double s = v[i];
        for (int j = 0; j < i; ++j) s -= chol(i, j) * w[j];
        w[i] = s / chol(i, i);
        log_det += std::log(chol(i, i));
    }
    double quad = 0.0;
    for (double wi : w) quad += wi * wi;
    return -0.5 * quad - log_det - 0.5 * n * std::log(2.0 * M_PI);
}

void mean_and_covariance(const std::vector<std::vector<double>>& draws,
                         std::vector<double>& mu, Matrix& sigma) {
    if (draws.size() < 2) throw std::invalid_argument("mean_and_covariance: need >= 2 draws");
    const int d = static_cast<int>(draws.front().size());
    mu.assign(d, 0.0);
    for (const auto& row : draws) {
        for (int i = 0; i < d; ++i) mu[i] += row[i];
    }
    for (int i = 0; i < d; ++i) mu[i] /= static_cast<double>(draws.size());

    sigma = Matrix(d);
    for (const auto& row : draws) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                sigma(i, j) += (row[i] - mu[i]) * (row[j] - mu[j]);
    }
    const double denom = static_cast<double>(draws.size() - 1);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) sigma(i, j) /= denom;
}

} // namespace reabc
