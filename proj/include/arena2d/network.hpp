#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arena2d/rng.hpp"

namespace arena2d {

/// Dense row-major float32 tensor.
struct Tensor {
    std::vector<int> shape;
    std::vector<float> data;

    Tensor() = default;
    static Tensor zeros(std::vector<int> shape);

    int numel() const {
        int n = 1;
        for (int d : shape) n *= d;
        return n;
    }
    bool same_shape(const Tensor& other) const { return shape == other.shape; }
};

struct DenseLayer {
    Tensor weights;  // [out x in]
    Tensor biases;   // [out]

    int in_size() const { return weights.shape.at(1); }
    int out_size() const { return weights.shape.at(0); }
};

/// Fully connected Q-network: rectifier on hidden layers, identity output,
/// one (inverted) dropout layer after the last hidden activation.
class QNetwork {
public:
    QNetwork() = default;

    /// Weights initialized uniformly in +-1/sqrt(fan_in), biases zero.
    static QNetwork create(int input, const std::vector<int>& hidden, int output,
                           double dropout_rate, RngStream& rng);

    int input_size() const { return layers_.front().in_size(); }
    int output_size() const { return layers_.back().out_size(); }
    double dropout_rate() const { return dropout_rate_; }

    const std::vector<DenseLayer>& layers() const { return layers_; }
    std::vector<DenseLayer>& layers() { return layers_; }

    bool empty() const { return layers_.empty(); }

private:
    std::vector<DenseLayer> layers_;
    double dropout_rate_{0.0};

    friend QNetwork make_network_from_layers(std::vector<DenseLayer> layers, double dropout);
};

/// Assemble a network from explicit layers (checkpoint loading, tests).
QNetwork make_network_from_layers(std::vector<DenseLayer> layers, double dropout);

/// Batched forward pass, input [batch x in] -> Q values [batch x out].
/// Evaluation mode is deterministic; training mode samples an inverted
/// dropout mask from rng (activations scaled by 1/(1-p)) so evaluation
/// needs no rescaling. Throws std::invalid_argument on shape mismatch.
Tensor forward(const QNetwork& net, const Tensor& input, bool training_mode, RngStream& rng);

/// Evaluation-mode forward for a single observation.
std::vector<double> forward_single(const QNetwork& net, const std::vector<float>& obs);

/// Greedy action: argmax over Q with lowest-index tie break.
int argmax_action(const QNetwork& net, const std::vector<float>& obs);

/// Per-parameter gradients, shaped like the network layers.
struct Gradients {
    std::vector<DenseLayer> layers;
};

struct LossResult {
    double loss{0.0};
    Gradients grads;
};

/// Mean squared error on the chosen action of each sample:
/// loss = mean_b (Q(s_b, a_b) - y_b)^2; all other action outputs receive
/// zero gradient. Gradients via backpropagation. Throws on an empty batch
/// or mismatched sizes.
LossResult mse_loss_and_grad(const QNetwork& net, const Tensor& inputs,
                             const std::vector<int>& chosen_actions,
                             const std::vector<double>& targets, bool training_mode,
                             RngStream& rng);

/// Adam moments and schedule constants.
struct AdamState {
    std::vector<DenseLayer> first_moment;
    std::vector<DenseLayer> second_moment;
    std::uint64_t step_count{0};
    double lr{0.00025};
    double beta1{0.9};
    double beta2{0.999};
    double eps{1e-8};

    static AdamState for_network(const QNetwork& net, double lr);
};

/// One bias-corrected Adam update; increments step_count.
void adam_step(QNetwork& net, const Gradients& grads, AdamState& state);

/// Exact deep copy for the target network.
QNetwork sync_target(const QNetwork& source);

/// True when every parameter is bitwise equal.
bool networks_equal(const QNetwork& a, const QNetwork& b);

}  // namespace arena2d
