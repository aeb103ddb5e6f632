#include "rseri/pca.hpp"

#include "rseri/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rseri {

namespace {

double off_diagonal_norm(const std::vector<std::vector<double>>& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (i != j) {
                sum += a[i][j] * a[i][j];
            }
        }
    }
    return std::sqrt(sum);
}

} // namespace

JacobiResult jacobi_eigen_symmetric(std::vector<std::vector<double>> a, double tolerance,
                                    int max_sweeps) {
    const std::size_t m = a.size();
    for (const auto& row : a) {
        if (row.size() != m) {
            throw DomainError("jacobi: matrix must be square");
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (std::abs(a[i][j] - a[j][i]) > 1e-9 * (1.0 + std::abs(a[i][j]))) {
                throw DomainError("jacobi: matrix must be symmetric");
            }
        }
    }

    // v starts as the identity and accumulates the rotations; its columns end
    // up as the eigenvectors.
    std::vector<std::vector<double>> v(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        v[i][i] = 1.0;
    }

    for (int sweep = 0; sweep < max_sweeps && off_diagonal_norm(a) > tolerance; ++sweep) {
        for (std::size_t p = 0; p + 1 < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                if (a[p][q] == 0.0) {
                    continue;
                }
                // Classic two-sided rotation choosing the smaller angle.
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < m; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const double vkp = v[k][p];
                    const double vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    // Stable sort by descending eigenvalue keeps the original column order
    // for exact ties (the degenerate identity-covariance case).
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });

    JacobiResult result;
    result.eigenvalues.reserve(m);
    result.eigenvectors.reserve(m);
    for (const std::size_t column : order) {
        result.eigenvalues.push_back(a[column][column]);
        std::vector<double> vec(m);
        for (std::size_t k = 0; k < m; ++k) {
            vec[k] = v[k][column];
        }
        result.eigenvectors.push_back(std::move(vec));
    }
    return result;
}

PcaDetail pca_detail(const std::vector<std::array<double, 5>>& rows) {
    const std::size_t n = rows.size();
    if (n < 5) {
        throw DomainError("PCA requires at least 5 rows, got " + std::to_string(n));
    }

    std::array<double, 5> mean{};
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < 5; ++j) {
            mean[j] += row[j];
        }
    }
    for (auto& m : mean) {
        m /= static_cast<double>(n);
    }

    PcaDetail detail;
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = i; j < 5; ++j) {
            double sum = 0.0;
            for (const auto& row : rows) {
                sum += (row[i] - mean[i]) * (row[j] - mean[j]);
            }
            const double cov = sum / static_cast<double>(n - 1);
            detail.covariance[i][j] = cov;
            detail.covariance[j][i] = cov;
        }
    }

    bool any_variance = false;
    for (std::size_t j = 0; j < 5; ++j) {
        if (detail.covariance[j][j] > 0.0) {
            any_variance = true;
        }
    }
    if (!any_variance) {
        throw DomainError("PCA weights undefined: all indicator columns are constant");
    }

    std::vector<std::vector<double>> c(5, std::vector<double>(5));
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            c[i][j] = detail.covariance[i][j];
        }
    }
    const JacobiResult eigen = jacobi_eigen_symmetric(std::move(c));
    detail.leading_value = eigen.eigenvalues.front();
    for (std::size_t j = 0; j < 5; ++j) {
        detail.leading_vector[j] = eigen.eigenvectors.front()[j];
    }

    // Orient so the component of largest magnitude is positive (first such
    // index on exact magnitude ties).
    std::size_t pivot = 0;
    for (std::size_t j = 1; j < 5; ++j) {
        if (std::abs(detail.leading_vector[j]) > std::abs(detail.leading_vector[pivot])) {
            pivot = j;
        }
    }
    if (detail.leading_vector[pivot] < 0.0) {
        for (auto& component : detail.leading_vector) {
            component = -component;
        }
    }

    double positive_sum = 0.0;
    for (std::size_t j = 0; j < 5; ++j) {
        detail.weights[j] = std::max(detail.leading_vector[j], 0.0);
        positive_sum += detail.weights[j];
    }
    for (auto& w : detail.weights) {
        w /= positive_sum;
    }
    return detail;
}

WeightScheme pca_weights(const std::vector<std::array<double, 5>>& rows) {
    return WeightScheme{WeightScheme::Kind::Pca, pca_detail(rows).weights};
}

} // namespace rseri
