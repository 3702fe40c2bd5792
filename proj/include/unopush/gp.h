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

#ifndef UNOPUSH_GP_H_
#define UNOPUSH_GP_H_

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace unopush {

// Raised when the regularized kernel matrix cannot be factorized even after
// adding diagonal jitter.
class GpFitError : public std::runtime_error {
 public:
  GpFitError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

struct GpHyperparams {
  // Squared-exponential lengthscale per input dimension.
  std::vector<double> lengthscales;
  // Observation noise standard deviation per output dimension.
  std::vector<double> noise_std;
  // Lower bound on the per-output signal std, which is otherwise the
  // population std of that output's targets.
  double signal_std_floor = 1e-4;
};

// Independent zero-mean GP per output dimension over mean-centered targets,
// all sharing one squared-exponential correlation over the inputs.
class GpRegressor {
 public:
  GpRegressor() = default;

  // inputs: N x D, targets: N x P. Throws std::invalid_argument for N == 0
  // or mismatched shapes, GpFitError if factorization fails.
  static GpRegressor Fit(const Eigen::MatrixXd& inputs,
                         const Eigen::MatrixXd& targets,
                         const GpHyperparams& hyper);

  Eigen::VectorXd PredictMean(const Eigen::VectorXd& query) const;
  // Posterior variance of the latent function, per output.
  Eigen::VectorXd PredictVariance(const Eigen::VectorXd& query) const;

  int num_samples() const { return static_cast<int>(inputs_.rows()); }
  int input_dim() const { return static_cast<int>(inputs_.cols()); }
  int output_dim() const { return static_cast<int>(targets_.cols()); }
  const Eigen::MatrixXd& inputs() const { return inputs_; }
  const Eigen::MatrixXd& targets() const { return targets_; }
  const Eigen::VectorXd& target_mean() const { return mean_; }
  const GpHyperparams& hyperparams() const { return hyper_; }
  double signal_variance(int output) const { return signal_var_[output]; }
  double noise_variance(int output) const { return noise_var_[output]; }
  // Extra diagonal added on top of the noise variance to factorize.
  double jitter(int output) const { return jitter_[output]; }

  // Unit-variance correlation between two inputs.
  double Correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;
  // K + (noise + jitter) I for one output.
  Eigen::MatrixXd RegularizedKernel(int output) const;
  Eigen::MatrixXd KernelMatrix(int output) const;
  Eigen::MatrixXd CholeskyFactor(int output) const;

 private:
  Eigen::VectorXd CorrelationVector(const Eigen::VectorXd& query) const;

  Eigen::MatrixXd inputs_;
  Eigen::MatrixXd targets_;
  Eigen::VectorXd mean_;
  Eigen::VectorXd inv_lengthscales_;
  GpHyperparams hyper_;
  Eigen::MatrixXd correlation_;
  std::vector<double> signal_var_;
  std::vector<double> noise_var_;
  std::vector<double> jitter_;
  std::vector<Eigen::MatrixXd> chol_;
  // Per output: signal_var * (K + noise I)^-1 (y - mean).
  std::vector<Eigen::VectorXd> weights_;
};

}  // namespace unopush

#endif  // UNOPUSH_GP_H_
