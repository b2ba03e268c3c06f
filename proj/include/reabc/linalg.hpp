#ifndef REABC_LINALG_HPP
#define REABC_LINALG_HPP

#include <cstddef>
#include <vector>

namespace reabc {

// Small dense square matrix, row major. Parameter dimensions here are tiny
// (one to three), so no external linear algebra is warranted.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}
    static Matrix identity(int n);
    static Matrix diagonal(const std::vector<double>& d);

    int dim() const { return n_; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    Matrix scaled(double factor) const;
    bool is_symmetric(double tol = 1e-12) const;
    bool is_zero() const;

private:
    int n_ = 0;
    std::vector<double> a_;
};

// Lower-triangular Cholesky factor of a symmetric positive-semidefinite
// matrix. Zero pivots (semidefinite directions) produce zero columns;
// a pivot below -tol * scale throws.
Matrix cholesky_psd(const Matrix& m);

// L z with z standard normal entries drawn from rng — an increment of a
// zero-mean Gaussian with covariance L L^T.
class Rng;
std::vector<double> gaussian_increment(const Matrix& chol, Rng& rng);

// Log density of N(0, L L^T) at v; requires strictly positive pivots.
double gaussian_log_density(const Matrix& chol, const std::vector<double>& v);

// Sample mean and covariance of a set of draws (rows).
void mean_and_covariance(const std::vector<std::vector<double>>& draws,
                         std::vector<double>& mu, Matrix& sigma);

} // namespace reabc

#endif
