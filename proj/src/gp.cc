// Copyright 2026 The UNO Push Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unopush/gp.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace unopush {
namespace {

constexpr int kMaxJitterAttempts = 8;

}  // namespace

GpRegressor GpRegressor::Fit(const Eigen::MatrixXd& inputs,
                             const Eigen::MatrixXd& targets,
                             const GpHyperparams& hyper) {
  const Eigen::Index n = inputs.rows();
  if (n == 0) throw std::invalid_argument("GP fit needs at least one sample");
  if (targets.rows() != n) {
    throw std::invalid_argument("GP inputs and targets differ in length");
  }
  if (static_cast<Eigen::Index>(hyper.lengthscales.size()) != inputs.cols()) {
    throw std::invalid_argument("one lengthscale per input dimension required");
  }
  if (static_cast<Eigen::Index>(hyper.noise_std.size()) != targets.cols()) {
    throw std::invalid_argument("one noise std per output dimension required");
  }
  if (!inputs.allFinite() || !targets.allFinite()) {
    throw std::invalid_argument("GP training data must be finite");
  }
  for (double l : hyper.lengthscales) {
    if (!(l > 0.0)) throw std::invalid_argument("lengthscales must be > 0");
  }
  for (double s : hyper.noise_std) {
    if (!(s > 0.0)) throw std::invalid_argument("noise std must be > 0");
  }

  GpRegressor gp;
  gp.inputs_ = inputs;
  gp.targets_ = targets;
  gp.hyper_ = hyper;
  gp.inv_lengthscales_.resize(inputs.cols());
  for (Eigen::Index d = 0; d < inputs.cols(); ++d) {
    gp.inv_lengthscales_[d] = 1.0 / hyper.lengthscales[d];
  }
  gp.mean_ = targets.colwise().mean().transpose();

  gp.correlation_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gp.correlation_(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double k = gp.Correlation(inputs.row(i).transpose(),
                                      inputs.row(j).transpose());
      gp.correlation_(i, j) = k;
      gp.correlation_(j, i) = k;
    }
  }

  const Eigen::Index outputs = targets.cols();
  for (Eigen::Index p = 0; p < outputs; ++p) {
    const Eigen::VectorXd centered = targets.col(p).array() - gp.mean_[p];
    const double std_dev = std::sqrt(centered.squaredNorm() / n);
    const double signal_var =
        std::pow(std::max(std_dev, hyper.signal_std_floor), 2);
    const double noise_var = hyper.noise_std[p] * hyper.noise_std[p];

    Eigen::MatrixXd reg = signal_var * gp.correlation_;
    reg.diagonal().array() += noise_var;
    double jitter = 0.0;
    Eigen::LLT<Eigen::MatrixXd> llt(reg);
    for (int attempt = 0; llt.info() != Eigen::Success; ++attempt) {
      if (attempt == kMaxJitterAttempts) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(reg);
        const auto ev = eig.eigenvalues();
        const double cond = std::abs(ev.maxCoeff()) /
                            std::max(std::abs(ev.minCoeff()), 1e-300);
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "GP kernel factorization failed for output %d "
                      "(condition estimate %.3e)",
                      static_cast<int>(p), cond);
        throw GpFitError(msg, cond);
      }
      jitter = signal_var * 1e-10 * std::pow(10.0, attempt);
      Eigen::MatrixXd jittered = reg;
      jittered.diagonal().array() += jitter;
      llt.compute(jittered);
    }
    gp.signal_var_.push_back(signal_var);
    gp.noise_var_.push_back(noise_var);
    gp.jitter_.push_back(jitter);
    gp.chol_.push_back(llt.matrixL());
    gp.weights_.push_back(signal_var * llt.solve(centered));
  }
  return gp;
}

double GpRegressor::Correlation(const Eigen::VectorXd& a,
                                const Eigen::VectorXd& b) const {
  const double r2 =
      ((a - b).array() * inv_lengthscales_.array()).square().sum();
  return std::exp(-0.5 * r2);
}

Eigen::VectorXd GpRegressor::CorrelationVector(
    const Eigen::VectorXd& query) const {
  const Eigen::Index n = inputs_.rows();
  Eigen::VectorXd k(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k[i] = Correlation(inputs_.row(i).transpose(), query);
  }
  return k;
}

Eigen::VectorXd GpRegressor::PredictMean(const Eigen::VectorXd& query) const {
  const Eigen::VectorXd k = CorrelationVector(query);
  Eigen::VectorXd out(output_dim());
  for (int p = 0; p < output_dim(); ++p) {
    out[p] = mean_[p] + k.dot(weights_[p]);
  }
  return out;
}

Eigen::VectorXd GpRegressor::PredictVariance(
    const Eigen::VectorXd& query) const {
  const Eigen::VectorXd k = CorrelationVector(query);
  Eigen::VectorXd out(output_dim());
  for (int p = 0; p < output_dim(); ++p) {
    const Eigen::VectorXd v =
        chol_[p].triangularView<Eigen::Lower>().solve(signal_var_[p] * k);
    out[p] = std::max(0.0, signal_var_[p] - v.squaredNorm());
  }
  return out;
}

Eigen::MatrixXd GpRegressor::KernelMatrix(int output) const {
  return signal_var_[output] * correlation_;
}

Eigen::MatrixXd GpRegressor::RegularizedKernel(int output) const {
  Eigen::MatrixXd reg = KernelMatrix(output);
  reg.diagonal().array() += noise_var_[output] + jitter_[output];
  return reg;
}

Eigen::MatrixXd GpRegressor::CholeskyFactor(int output) const {
  return chol_[output];
}

}  // namespace unopush
