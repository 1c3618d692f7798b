#include "arena2d/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arena2d {

Tensor Tensor::zeros(std::vector<int> shape) {
    Tensor t;
    t.shape = std::move(shape);
    t.data.assign(static_cast<std::size_t>(t.numel()), 0.0f);
    return t;
}

QNetwork QNetwork::create(int input, const std::vector<int>& hidden, int output,
                          double dropout_rate, RngStream& rng) {
    if (input < 1 || output < 1) {
        throw std::invalid_argument("QNetwork::create: invalid layer sizes");
    }
    if (dropout_rate < 0.0 || dropout_rate >= 1.0) {
        throw std::invalid_argument("QNetwork::create: dropout rate must be in [0, 1)");
    }
    QNetwork net;
    net.dropout_rate_ = dropout_rate;

    std::vector<int> dims;
    dims.push_back(input);
    dims.insert(dims.end(), hidden.begin(), hidden.end());
    dims.push_back(output);

    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
        const int in = dims[i];
        const int out = dims[i + 1];
        if (in < 1 || out < 1) {
            throw std::invalid_argument("QNetwork::create: invalid layer sizes");
        }
        DenseLayer layer;
        layer.weights = Tensor::zeros({out, in});
        layer.biases = Tensor::zeros({out});
        const double bound = 1.0 / std::sqrt(static_cast<double>(in));
        for (float& w : layer.weights.data) {
            w = static_cast<float>(rng.uniform(-bound, bound));
        }
        net.layers_.push_back(std::move(layer));
    }
    return net;
}

QNetwork make_network_from_layers(std::vector<DenseLayer> layers, double dropout) {
    if (layers.empty()) {
        throw std::invalid_argument("make_network_from_layers: no layers");
    }
    for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
        if (layers[i].out_size() != layers[i + 1].in_size()) {
            throw std::invalid_argument("make_network_from_layers: layer dims do not chain");
        }
    }
    QNetwork net;
    net.layers_ = std::move(layers);
    net.dropout_rate_ = dropout;
    return net;
}

namespace {

/// Cached intermediate values of one batched forward pass.
struct ForwardTrace {
    // activations[i]: input of layer i, batch-major [batch x in_size(i)];
    // activations[n_layers]: final output.
    std::vector<std::vector<double>> activations;
    std::vector<double> dropout_scale;  // per unit of the dropout layer, batch-major
};

// The dropout layer sits after the last hidden activation.
int dropout_layer_index(const QNetwork& net) {
    return static_cast<int>(net.layers().size()) - 2;
}

std::vector<double> run_forward(const QNetwork& net, const Tensor& input, bool training_mode,
                                RngStream& rng, ForwardTrace* trace) {
    if (net.empty()) {
        throw std::invalid_argument("forward: empty network");
    }
    if (input.shape.size() != 2 || input.shape[1] != net.input_size()) {
        throw std::invalid_argument("forward: input shape mismatch");
    }
    const int batch = input.shape[0];
    const int n_layers = static_cast<int>(net.layers().size());
    const int drop_at = dropout_layer_index(net);
    const bool use_dropout = training_mode && net.dropout_rate() > 0.0 && drop_at >= 0;

    std::vector<double> current(input.data.begin(), input.data.end());
    if (trace) {
        trace->activations.clear();
        trace->activations.reserve(static_cast<std::size_t>(n_layers) + 1);
        trace->activations.push_back(current);
    }

    for (int li = 0; li < n_layers; ++li) {
        const DenseLayer& layer = net.layers()[static_cast<std::size_t>(li)];
        const int in = layer.in_size();
        const int out = layer.out_size();
        const bool is_output = (li == n_layers - 1);
        std::vector<double> next(static_cast<std::size_t>(batch) * out);

        for (int b = 0; b < batch; ++b) {
            const double* src = current.data() + static_cast<std::size_t>(b) * in;
            double* dst = next.data() + static_cast<std::size_t>(b) * out;
            for (int o = 0; o < out; ++o) {
                const float* w = layer.weights.data.data() + static_cast<std::size_t>(o) * in;
                double acc = layer.biases.data[static_cast<std::size_t>(o)];
                for (int i = 0; i < in; ++i) {
                    acc += static_cast<double>(w[i]) * src[i];
                }
                dst[o] = is_output ? acc : std::max(0.0, acc);
            }
        }

        if (li == drop_at && use_dropout) {
            const double keep = 1.0 - net.dropout_rate();
            const double scale = 1.0 / keep;
            if (trace) trace->dropout_scale.assign(next.size(), 1.0);
            for (std::size_t u = 0; u < next.size(); ++u) {
                const double factor = (rng.uniform() < keep) ? scale : 0.0;
                next[u] *= factor;
                if (trace) trace->dropout_scale[u] = factor;
            }
        }

        current = std::move(next);
        if (trace) trace->activations.push_back(current);
    }
    return current;
}

}  // namespace

Tensor forward(const QNetwork& net, const Tensor& input, bool training_mode, RngStream& rng) {
    const std::vector<double> out = run_forward(net, input, training_mode, rng, nullptr);
    Tensor result;
    result.shape = {input.shape[0], net.output_size()};
    result.data.reserve(out.size());
    for (double v : out) result.data.push_back(static_cast<float>(v));
    return result;
}

std::vector<double> forward_single(const QNetwork& net, const std::vector<float>& obs) {
    Tensor input;
    input.shape = {1, static_cast<int>(obs.size())};
    input.data = obs;
    RngStream unused(0);
    return run_forward(net, input, false, unused, nullptr);
}

int argmax_action(const QNetwork& net, const std::vector<float>& obs) {
    const std::vector<double> q = forward_single(net, obs);
    int best = 0;
    for (int a = 1; a < static_cast<int>(q.size()); ++a) {
        if (q[static_cast<std::size_t>(a)] > q[static_cast<std::size_t>(best)]) {
            best = a;
        }
    }
    return best;
}

LossResult mse_loss_and_grad(const QNetwork& net, const Tensor& inputs,
                             const std::vector<int>& chosen_actions,
                             const std::vector<double>& targets, bool training_mode,
                             RngStream& rng) {
    if (inputs.shape.size() != 2 || inputs.shape[0] < 1) {
        throw std::invalid_argument("mse_loss_and_grad: empty batch");
    }
    const int batch = inputs.shape[0];
    if (static_cast<int>(chosen_actions.size()) != batch ||
        static_cast<int>(targets.size()) != batch) {
        throw std::invalid_argument("mse_loss_and_grad: batch size mismatch");
    }

    ForwardTrace trace;
    const std::vector<double> q = run_forward(net, inputs, training_mode, rng, &trace);

    const int n_layers = static_cast<int>(net.layers().size());
    const int n_out = net.output_size();
    const int drop_at = dropout_layer_index(net);
    const bool dropped =
        training_mode && net.dropout_rate() > 0.0 && !trace.dropout_scale.empty();

    LossResult result;
    result.grads.layers.resize(static_cast<std::size_t>(n_layers));
    for (int li = 0; li < n_layers; ++li) {
        const DenseLayer& layer = net.layers()[static_cast<std::size_t>(li)];
        result.grads.layers[static_cast<std::size_t>(li)].weights =
            Tensor::zeros(layer.weights.shape);
        result.grads.layers[static_cast<std::size_t>(li)].biases =
            Tensor::zeros(layer.biases.shape);
    }

    // Loss and gradient w.r.t. the output: only the chosen action back-propagates.
    std::vector<double> delta(static_cast<std::size_t>(batch) * n_out, 0.0);
    double loss = 0.0;
    for (int b = 0; b < batch; ++b) {
        const int a = chosen_actions[static_cast<std::size_t>(b)];
        if (a < 0 || a >= n_out) {
            throw std::invalid_argument("mse_loss_and_grad: action index out of range");
        }
        const double err =
            q[static_cast<std::size_t>(b) * n_out + a] - targets[static_cast<std::size_t>(b)];
        loss += err * err;
        delta[static_cast<std::size_t>(b) * n_out + a] = 2.0 * err / batch;
    }
    result.loss = loss / batch;

    // Backpropagate delta through the layers, accumulating in double.
    std::vector<double> grad_out = std::move(delta);
    for (int li = n_layers - 1; li >= 0; --li) {
        const DenseLayer& layer = net.layers()[static_cast<std::size_t>(li)];
        const int in = layer.in_size();
        const int out = layer.out_size();
        const bool is_output = (li == n_layers - 1);
        const std::vector<double>& layer_in = trace.activations[static_cast<std::size_t>(li)];
        const std::vector<double>& layer_out =
            trace.activations[static_cast<std::size_t>(li) + 1];

        // Through the rectifier (and the dropout mask on the dropout layer):
        // layer_out already includes both, so a zero output means zero gradient
        // and the dropout scale multiplies straight through.
        if (!is_output) {
            for (std::size_t u = 0; u < grad_out.size(); ++u) {
                if (layer_out[u] > 0.0) {
                    if (li == drop_at && dropped) grad_out[u] *= trace.dropout_scale[u];
                } else if (li == drop_at && dropped && trace.dropout_scale[u] > 0.0) {
                    // kept unit with non-positive pre-activation: rectifier gate
                    grad_out[u] = 0.0;
                } else {
                    grad_out[u] = 0.0;
                }
            }
        }

        std::vector<double> dW(static_cast<std::size_t>(out) * in, 0.0);
        std::vector<double> db(static_cast<std::size_t>(out), 0.0);
        std::vector<double> grad_in(static_cast<std::size_t>(batch) * in, 0.0);
        for (int b = 0; b < batch; ++b) {
            const double* gout = grad_out.data() + static_cast<std::size_t>(b) * out;
            const double* ain = layer_in.data() + static_cast<std::size_t>(b) * in;
            double* gin = grad_in.data() + static_cast<std::size_t>(b) * in;
            for (int o = 0; o < out; ++o) {
                const double g = gout[o];
                if (g == 0.0) continue;
                db[static_cast<std::size_t>(o)] += g;
                const float* w = layer.weights.data.data() + static_cast<std::size_t>(o) * in;
                double* dw = dW.data() + static_cast<std::size_t>(o) * in;
                for (int i = 0; i < in; ++i) {
                    dw[i] += g * ain[i];
                    gin[i] += g * static_cast<double>(w[i]);
                }
            }
        }

        DenseLayer& g = result.grads.layers[static_cast<std::size_t>(li)];
        for (std::size_t k = 0; k < dW.size(); ++k) {
            g.weights.data[k] = static_cast<float>(dW[k]);
        }
        for (std::size_t k = 0; k < db.size(); ++k) {
            g.biases.data[k] = static_cast<float>(db[k]);
        }
        grad_out = std::move(grad_in);
    }

    return result;
}

AdamState AdamState::for_network(const QNetwork& net, double lr) {
    AdamState state;
    state.lr = lr;
    for (const DenseLayer& layer : net.layers()) {
        DenseLayer m;
        m.weights = Tensor::zeros(layer.weights.shape);
        m.biases = Tensor::zeros(layer.biases.shape);
        state.first_moment.push_back(m);
        state.second_moment.push_back(std::move(m));
    }
    return state;
}

namespace {

void adam_update_tensor(Tensor& param, const Tensor& grad, Tensor& m, Tensor& v,
                        const AdamState& s, double bias1, double bias2) {
    for (std::size_t k = 0; k < param.data.size(); ++k) {
        const double g = grad.data[k];
        const double mk = s.beta1 * m.data[k] + (1.0 - s.beta1) * g;
        const double vk = s.beta2 * v.data[k] + (1.0 - s.beta2) * g * g;
        m.data[k] = static_cast<float>(mk);
        v.data[k] = static_cast<float>(vk);
        const double m_hat = mk / bias1;
        const double v_hat = vk / bias2;
        param.data[k] =
            static_cast<float>(param.data[k] - s.lr * m_hat / (std::sqrt(v_hat) + s.eps));
    }
}

}  // namespace

void adam_step(QNetwork& net, const Gradients& grads, AdamState& state) {
    if (grads.layers.size() != net.layers().size()) {
        throw std::invalid_argument("adam_step: gradient layout mismatch");
    }
    ++state.step_count;
    const double bias1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step_count));
    const double bias2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step_count));
    for (std::size_t li = 0; li < net.layers().size(); ++li) {
        DenseLayer& layer = net.layers()[li];
        const DenseLayer& g = grads.layers[li];
        if (!layer.weights.same_shape(g.weights) || !layer.biases.same_shape(g.biases)) {
            throw std::invalid_argument("adam_step: gradient shape mismatch");
        }
        adam_update_tensor(layer.weights, g.weights, state.first_moment[li].weights,
                           state.second_moment[li].weights, state, bias1, bias2);
        adam_update_tensor(layer.biases, g.biases, state.first_moment[li].biases,
                           state.second_moment[li].biases, state, bias1, bias2);
    }
}

QNetwork sync_target(const QNetwork& source) { return source; }

bool networks_equal(const QNetwork& a, const QNetwork& b) {
    if (a.layers().size() != b.layers().size()) return false;
    for (std::size_t li = 0; li < a.layers().size(); ++li) {
        const DenseLayer& la = a.layers()[li];
        const DenseLayer& lb = b.layers()[li];
        if (la.weights.shape != lb.weights.shape || la.biases.shape != lb.biases.shape) {
            return false;
        }
        if (la.weights.data != lb.weights.data || la.biases.data != lb.biases.data) {
            return false;
        }
    }
    return true;
}

}  // namespace arena2d
