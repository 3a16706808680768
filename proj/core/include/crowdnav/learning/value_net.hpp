#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "crowdnav/random.hpp"

namespace crowdnav {

/// Fully connected state-value network: rectifier hidden layers, scalar
/// linear output. All parameters live in one flat buffer, layer by layer,
/// each layer's row-major weights followed by its biases.
class ValueNet {
 public:
  ValueNet() = default;

  /// Zero-initialised network. widths = {input, hidden..., 1}.
  explicit ValueNet(std::vector<std::size_t> widths);

  /// He-uniform weights, zero biases.
  static ValueNet random(std::vector<std::size_t> widths, Rng& rng);

  const std::vector<std::size_t>& widths() const { return widths_; }
  std::size_t input_size() const { return widths_.front(); }
  std::size_t layer_count() const { return widths_.size() - 1; }
  std::size_t parameter_count() const { return params_.size(); }

  std::span<double> parameters() { return params_; }
  std::span<const double> parameters() const { return params_; }

  /// Row-major (widths[l+1] x widths[l]) weights of layer l.
  std::span<double> weights(std::size_t layer);
  std::span<const double> weights(std::size_t layer) const;
  std::span<double> biases(std::size_t layer);
  std::span<const double> biases(std::size_t layer) const;

  bool all_finite() const;

 private:
  std::vector<std::size_t> widths_;
  std::vector<double> params_;
  std::vector<std::size_t> offsets_;  // start of each layer's weights
};

/// Throws ShapeMismatch if the input length differs from the input width.
double value_forward(const ValueNet& net, std::span<const double> features);

/// Exact gradient of value_forward with respect to every parameter, in the
/// network's flat parameter order.
std::vector<double> value_backward(const ValueNet& net, std::span<const double> features);

/// Regression sample: features and the value they should map to.
struct Experience {
  std::vector<double> features;
  double target = 0.0;
};

double mean_squared_error(const ValueNet& net, std::span<const Experience> samples);

/// One plain gradient-descent step on the batch's mean squared error.
/// Returns the batch loss before the update.
double gradient_step(ValueNet& net, std::span<const Experience* const> batch, double learning_rate);

}  // namespace crowdnav
