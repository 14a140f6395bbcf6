// Copyright 2026 The Readmit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "readmit/matrix_log.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "readmit/error.h"
#include "readmit/noise_model.h"

namespace readmit {

namespace {

constexpr double kMaxEigenvectorCondition = 1e6;

double condition_number(const Eigen::MatrixXcd &v) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
    const auto &s = svd.singularValues();
    double smallest = s(s.size() - 1);
    return smallest > 0 ? s(0) / smallest : INFINITY;
}

Eigen::MatrixXd schur_log(const Eigen::MatrixXd &a) {
    Eigen::MatrixXd l = a.log();
    Eigen::MatrixXd back = expm_dense(l);
    double err = (back - a).cwiseAbs().maxCoeff();
    if (!(err < kLogImagTolerance)) {
        throw NumericError("principal_log: Schur logarithm fails round trip (residual " + std::to_string(err) + ")");
    }
    return l;
}

}  // namespace

Eigen::MatrixXd principal_log(const Eigen::MatrixXd &a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("principal_log: matrix is not square");
    const Eigen::Index dim = a.rows();
    if (a == Eigen::MatrixXd::Identity(dim, dim)) return Eigen::MatrixXd::Zero(dim, dim);

    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw NumericError("principal_log: eigendecomposition failed");
    const Eigen::VectorXcd lambda = es.eigenvalues();
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < dim; ++i) {
        const std::complex<double> l = lambda(i);
        if (std::abs(l) < 1e-14 * scale) {
            throw NumericError("principal_log: matrix is singular");
        }
        if (l.real() <= 0 && std::abs(l.imag()) <= 1e-12 * std::abs(l)) {
            throw NumericError("principal_log: eigenvalue " + std::to_string(l.real()) +
                               " lies on the negative real axis");
        }
    }

    const Eigen::MatrixXcd v = es.eigenvectors();
    if (condition_number(v) > kMaxEigenvectorCondition) return schur_log(a);

    Eigen::VectorXcd log_lambda(dim);
    for (Eigen::Index i = 0; i < dim; ++i) log_lambda(i) = std::log(lambda(i));
    const Eigen::MatrixXcd l = v * log_lambda.asDiagonal() * v.inverse();
    const double imag = l.imag().cwiseAbs().maxCoeff();
    if (imag > kLogImagTolerance) {
        throw NumericError("principal_log: imaginary residue " + std::to_string(imag) + " exceeds tolerance");
    }
    return l.real();
}

}  // namespace readmit
