#pragma once

// Recurrent networks: h_t = sigma(W_hid h_{t-1} + W_in x_t), o_t = W_out h_t.
// Plus the two behavior-preserving hidden-space transformations (zero padding
// and unit permutation), each returning an explicit state correspondence.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "substrate/errors.hpp"

namespace substrate {

using Vector = std::vector<double>;
using Matrix = std::vector<std::vector<double>>;

enum class Activation { ReLU, Tanh, Sigmoid };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

struct Rnn {
    uint32_t input_dim = 0;
    uint32_t hidden_dim = 0;
    uint32_t output_dim = 0;
    Matrix w_in;  // hidden_dim x input_dim
    Matrix w_hid; // hidden_dim x hidden_dim
    Matrix w_out; // output_dim x hidden_dim
    Activation activation = Activation::ReLU;
    Vector h0; // initial hidden state

    void validate() const; // shape consistency, finite entries
};

// Linear map from one hidden space into another, certifying that related
// trajectories realize the same functional states. An all-zero row makes no
// claim about that target coordinate (zero-padded units never feed anything,
// so they carry no correspondence).
struct WitnessMap {
    enum class Kind { Permutation, ZeroPad };
    Kind kind;
    Matrix forward; // target_dim x source_dim

    Vector apply(const Vector& source) const;
    bool row_is_zero(size_t i) const;
};

std::pair<Vector, Vector> rnn_step(const Rnn& net, const Vector& h, const Vector& x);

// Folds rnn_step from h0. Returns (hidden trace, output trace); both have one
// entry per input.
std::pair<std::vector<Vector>, std::vector<Vector>> rnn_run(const Rnn& net,
                                                            const std::vector<Vector>& inputs);

// Appends `extra` hidden units wired with all-zero weights. Outputs are
// bit-identical to the source network on every input sequence.
std::pair<Rnn, WitnessMap> pad_hidden(const Rnn& net, uint32_t extra);

// Conjugates the network by a permutation of hidden units: new unit i is old
// unit perm[i]. Outputs agree up to floating-point summation order.
std::pair<Rnn, WitnessMap> permute_hidden(const Rnn& net, const std::vector<uint32_t>& perm);

// Compares outputs over `trials` seeded pseudo-random input sequences of
// length `horizon`; true iff the max absolute difference per coordinate per
// step is within tol.
bool behaviorally_equivalent(const Rnn& n1, const Rnn& n2, uint32_t trials, uint32_t horizon,
                             double tol, uint64_t seed);

// True iff forward(h_t of n1) matches h_t of n2 within tol at every step,
// for every claimed (nonzero-row) coordinate.
bool witness_valid(const Rnn& n1, const Rnn& n2, const WitnessMap& witness, uint32_t trials,
                   uint32_t horizon, double tol, uint64_t seed);

// Deterministic input battery shared by the trial-based checks: trial t is
// seeded with seed + t and drawn uniform from [-1, 1).
std::vector<std::vector<Vector>> random_input_battery(uint32_t trials, uint32_t horizon,
                                                      uint32_t dim, uint64_t seed);

Rnn load_rnn(const std::string& path);
Rnn rnn_from_json_text(const std::string& text);
std::string rnn_to_json_text(const Rnn& net);

} // namespace substrate
