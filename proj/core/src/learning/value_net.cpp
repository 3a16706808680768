#include "crowdnav/learning/value_net.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "crowdnav/error.hpp"

namespace crowdnav {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMatMap = Eigen::Map<const RowMatrix>;
using MatMap = Eigen::Map<RowMatrix>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;
using VecMap = Eigen::Map<Eigen::VectorXd>;

void check_input(const ValueNet& net, std::span<const double> features) {
  if (net.widths().size() < 2) {
    throw ShapeMismatch("value network has no layers");
  }
  if (features.size() != net.input_size()) {
    throw ShapeMismatch("feature length " + std::to_string(features.size()) +
                        " does not match network input width " +
                        std::to_string(net.input_size()));
  }
}

// Pre-activations of every layer for one input.
std::vector<Eigen::VectorXd> forward_pass(const ValueNet& net, std::span<const double> features) {
  std::vector<Eigen::VectorXd> z;
  z.reserve(net.layer_count());
  Eigen::VectorXd a = ConstVecMap(features.data(), static_cast<Eigen::Index>(features.size()));
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const auto rows = static_cast<Eigen::Index>(net.widths()[l + 1]);
    const auto cols = static_cast<Eigen::Index>(net.widths()[l]);
    const ConstMatMap W(net.weights(l).data(), rows, cols);
    const ConstVecMap b(net.biases(l).data(), rows);
    z.push_back(W * a + b);
    if (l + 1 < net.layer_count()) {
      a = z.back().cwiseMax(0.0);
    }
  }
  return z;
}

// grad += scale * d(output)/d(params), given the forward pass `z`.
void accumulate_gradient(const ValueNet& net, std::span<const double> features,
                         const std::vector<Eigen::VectorXd>& z, double scale,
                         std::span<double> grad) {
  const std::size_t L = net.layer_count();
  std::vector<std::size_t> offsets(L);
  std::size_t off = 0;
  for (std::size_t l = 0; l < L; ++l) {
    offsets[l] = off;
    off += net.widths()[l + 1] * net.widths()[l] + net.widths()[l + 1];
  }

  Eigen::VectorXd delta = Eigen::VectorXd::Constant(1, scale);
  for (std::size_t l = L; l-- > 0;) {
    const auto rows = static_cast<Eigen::Index>(net.widths()[l + 1]);
    const auto cols = static_cast<Eigen::Index>(net.widths()[l]);
    MatMap gW(grad.data() + offsets[l], rows, cols);
    VecMap gb(grad.data() + offsets[l] + static_cast<std::size_t>(rows * cols), rows);
    if (l == 0) {
      gW.noalias() += delta * ConstVecMap(features.data(), cols).transpose();
    } else {
      gW.noalias() += delta * z[l - 1].cwiseMax(0.0).transpose();
    }
    gb += delta;
    if (l > 0) {
      const ConstMatMap W(net.weights(l).data(), rows, cols);
      Eigen::VectorXd back = W.transpose() * delta;
      const Eigen::VectorXd& zp = z[l - 1];
      for (Eigen::Index i = 0; i < back.size(); ++i) {
        if (zp[i] <= 0.0) back[i] = 0.0;
      }
      delta = std::move(back);
    }
  }
}

}  // namespace

ValueNet::ValueNet(std::vector<std::size_t> widths) : widths_(std::move(widths)) {
  if (widths_.size() < 2 || widths_.back() != 1) {
    throw ShapeMismatch("value network widths must be {input, hidden..., 1}");
  }
  std::size_t total = 0;
  for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
    if (widths_[l] == 0) throw ShapeMismatch("value network layer of width 0");
    offsets_.push_back(total);
    total += widths_[l + 1] * widths_[l] + widths_[l + 1];
  }
  params_.assign(total, 0.0);
}

ValueNet ValueNet::random(std::vector<std::size_t> widths, Rng& rng) {
  ValueNet net(std::move(widths));
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const double bound = std::sqrt(6.0 / static_cast<double>(net.widths_[l]));
    for (double& w : net.weights(l)) {
      w = rng.uniform(-bound, bound);
    }
  }
  return net;
}

std::span<double> ValueNet::weights(std::size_t layer) {
  return {params_.data() + offsets_.at(layer), widths_[layer + 1] * widths_[layer]};
}

std::span<const double> ValueNet::weights(std::size_t layer) const {
  return {params_.data() + offsets_.at(layer), widths_[layer + 1] * widths_[layer]};
}

std::span<double> ValueNet::biases(std::size_t layer) {
  return {params_.data() + offsets_.at(layer) + widths_[layer + 1] * widths_[layer],
          widths_[layer + 1]};
}

std::span<const double> ValueNet::biases(std::size_t layer) const {
  return {params_.data() + offsets_.at(layer) + widths_[layer + 1] * widths_[layer],
          widths_[layer + 1]};
}

bool ValueNet::all_finite() const {
  for (double p : params_) {
    if (!std::isfinite(p)) return false;
  }
  return true;
}

double value_forward(const ValueNet& net, std::span<const double> features) {
  check_input(net, features);
  return forward_pass(net, features).back()[0];
}

std::vector<double> value_backward(const ValueNet& net, std::span<const double> features) {
  check_input(net, features);
  std::vector<double> grad(net.parameter_count(), 0.0);
  accumulate_gradient(net, features, forward_pass(net, features), 1.0, grad);
  return grad;
}

double mean_squared_error(const ValueNet& net, std::span<const Experience> samples) {
  if (samples.empty()) return 0.0;
  double sum = 0.0;
  for (const Experience& e : samples) {
    const double err = value_forward(net, e.features) - e.target;
    sum += err * err;
  }
  return sum / static_cast<double>(samples.size());
}

double gradient_step(ValueNet& net, std::span<const Experience* const> batch, double learning_rate) {
  if (batch.empty()) return 0.0;
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  std::vector<double> grad(net.parameter_count(), 0.0);
  double loss = 0.0;
  for (const Experience* e : batch) {
    check_input(net, e->features);
    const std::vector<Eigen::VectorXd> z = forward_pass(net, e->features);
    const double err = z.back()[0] - e->target;
    loss += err * err * inv_n;
    accumulate_gradient(net, e->features, z, 2.0 * err * inv_n, grad);
  }
  std::span<double> params = net.parameters();
  for (std::size_t i = 0; i < params.size(); ++i) {
    params[i] -= learning_rate * grad[i];
  }
  return loss;
}

}  // namespace crowdnav
