#include "substrate/rnn.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace substrate {

using nlohmann::json;

std::string activation_name(Activation a) {
    switch (a) {
    case Activation::ReLU: return "relu";
    case Activation::Tanh: return "tanh";
    case Activation::Sigmoid: return "sigmoid";
    }
    return "relu";
}

Activation activation_from_name(const std::string& name) {
    if (name == "relu") return Activation::ReLU;
    if (name == "tanh") return Activation::Tanh;
    if (name == "sigmoid") return Activation::Sigmoid;
    throw ValidationError("unknown activation '" + name + "' (expected relu, tanh or sigmoid)");
}

namespace {

void check_shape(const Matrix& m, size_t rows, size_t cols, const std::string& what) {
    if (m.size() != rows)
        throw ValidationError(what + ": expected " + std::to_string(rows) + " rows, got " +
                              std::to_string(m.size()));
    for (const auto& row : m) {
        if (row.size() != cols)
            throw ValidationError(what + ": expected " + std::to_string(cols) + " columns");
        for (double v : row)
            if (!std::isfinite(v)) throw ValidationError(what + ": non-finite entry");
    }
}

double activate(Activation a, double x) {
    switch (a) {
    case Activation::ReLU: return x > 0.0 ? x : 0.0;
    case Activation::Tanh: return std::tanh(x);
    case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
    }
    return x;
}

// Row-major mat-vec with left-to-right accumulation. The accumulation order
// is part of the padding contract: appended zero columns contribute trailing
// +0.0 terms, which leave every partial sum bit-identical.
Vector matvec(const Matrix& m, const Vector& v) {
    Vector out(m.size(), 0.0);
    for (size_t i = 0; i < m.size(); ++i) {
        double acc = 0.0;
        for (size_t j = 0; j < v.size(); ++j) acc += m[i][j] * v[j];
        out[i] = acc;
    }
    return out;
}

} // namespace

void Rnn::validate() const {
    if (input_dim == 0 || hidden_dim == 0 || output_dim == 0)
        throw ValidationError("rnn: dimensions must be positive");
    check_shape(w_in, hidden_dim, input_dim, "rnn W_in");
    check_shape(w_hid, hidden_dim, hidden_dim, "rnn W_hid");
    check_shape(w_out, output_dim, hidden_dim, "rnn W_out");
    if (h0.size() != hidden_dim) throw ValidationError("rnn h0: wrong dimension");
    for (double v : h0)
        if (!std::isfinite(v)) throw ValidationError("rnn h0: non-finite entry");
}

Vector WitnessMap::apply(const Vector& source) const {
    if (!forward.empty() && forward.front().size() != source.size())
        throw DimensionMismatch("witness: source dimension mismatch");
    return matvec(forward, source);
}

bool WitnessMap::row_is_zero(size_t i) const {
    for (double v : forward[i])
        if (v != 0.0) return false;
    return true;
}

std::pair<Vector, Vector> rnn_step(const Rnn& net, const Vector& h, const Vector& x) {
    if (h.size() != net.hidden_dim) throw DimensionMismatch("rnn_step: hidden vector dimension");
    if (x.size() != net.input_dim) throw DimensionMismatch("rnn_step: input vector dimension");
    Vector pre = matvec(net.w_hid, h);
    Vector drive = matvec(net.w_in, x);
    for (size_t i = 0; i < pre.size(); ++i) pre[i] += drive[i];
    Vector h_next(net.hidden_dim);
    for (size_t i = 0; i < pre.size(); ++i) h_next[i] = activate(net.activation, pre[i]);
    Vector o = matvec(net.w_out, h_next);
    for (double v : h_next)
        if (!std::isfinite(v)) throw NonFiniteValue("rnn_step: non-finite hidden value");
    for (double v : o)
        if (!std::isfinite(v)) throw NonFiniteValue("rnn_step: non-finite output value");
    return {h_next, o};
}

std::pair<std::vector<Vector>, std::vector<Vector>> rnn_run(const Rnn& net,
                                                            const std::vector<Vector>& inputs) {
    std::vector<Vector> hidden;
    std::vector<Vector> output;
    hidden.reserve(inputs.size());
    output.reserve(inputs.size());
    Vector h = net.h0;
    for (const auto& x : inputs) {
        auto [h_next, o] = rnn_step(net, h, x);
        hidden.push_back(h_next);
        output.push_back(o);
        h = std::move(h_next);
    }
    return {hidden, output};
}

std::pair<Rnn, WitnessMap> pad_hidden(const Rnn& net, uint32_t extra) {
    if (extra < 1) throw ValidationError("pad_hidden: extra must be >= 1");
    Rnn p = net;
    p.hidden_dim = net.hidden_dim + extra;
    for (auto& row : p.w_hid) row.resize(p.hidden_dim, 0.0);
    for (uint32_t i = 0; i < extra; ++i) {
        p.w_hid.push_back(Vector(p.hidden_dim, 0.0));
        p.w_in.push_back(Vector(net.input_dim, 0.0));
    }
    for (auto& row : p.w_out) row.resize(p.hidden_dim, 0.0);
    p.h0.resize(p.hidden_dim, 0.0);
    p.validate();

    WitnessMap w;
    w.kind = WitnessMap::Kind::ZeroPad;
    w.forward.assign(p.hidden_dim, Vector(net.hidden_dim, 0.0));
    for (uint32_t i = 0; i < net.hidden_dim; ++i) w.forward[i][i] = 1.0;
    return {p, w};
}

std::pair<Rnn, WitnessMap> permute_hidden(const Rnn& net, const std::vector<uint32_t>& perm) {
    if (perm.size() != net.hidden_dim) throw InvalidPermutation("permute_hidden: wrong length");
    std::vector<bool> seen(net.hidden_dim, false);
    for (uint32_t v : perm) {
        if (v >= net.hidden_dim || seen[v]) throw InvalidPermutation("permute_hidden: not a permutation");
        seen[v] = true;
    }
    // New unit i is old unit perm[i].
    Rnn q = net;
    for (uint32_t i = 0; i < net.hidden_dim; ++i) {
        q.h0[i] = net.h0[perm[i]];
        q.w_in[i] = net.w_in[perm[i]];
        for (uint32_t j = 0; j < net.hidden_dim; ++j) q.w_hid[i][j] = net.w_hid[perm[i]][perm[j]];
    }
    for (uint32_t o = 0; o < net.output_dim; ++o)
        for (uint32_t i = 0; i < net.hidden_dim; ++i) q.w_out[o][i] = net.w_out[o][perm[i]];
    q.validate();

    WitnessMap w;
    w.kind = WitnessMap::Kind::Permutation;
    w.forward.assign(net.hidden_dim, Vector(net.hidden_dim, 0.0));
    for (uint32_t i = 0; i < net.hidden_dim; ++i) w.forward[i][perm[i]] = 1.0;
    return {q, w};
}

std::vector<std::vector<Vector>> random_input_battery(uint32_t trials, uint32_t horizon,
                                                      uint32_t dim, uint64_t seed) {
    std::vector<std::vector<Vector>> battery(trials);
    for (uint32_t t = 0; t < trials; ++t) {
        std::mt19937_64 eng(seed + t);
        battery[t].assign(horizon, Vector(dim));
        for (uint32_t s = 0; s < horizon; ++s)
            for (uint32_t d = 0; d < dim; ++d) {
                // Explicit mapping instead of std::uniform_real_distribution,
                // whose output is implementation-defined.
                double u = static_cast<double>(eng() >> 11) * 0x1.0p-53; // [0, 1)
                battery[t][s][d] = 2.0 * u - 1.0;
            }
    }
    return battery;
}

bool behaviorally_equivalent(const Rnn& n1, const Rnn& n2, uint32_t trials, uint32_t horizon,
                             double tol, uint64_t seed) {
    if (n1.input_dim != n2.input_dim || n1.output_dim != n2.output_dim)
        throw DimensionMismatch("behaviorally_equivalent: input/output dimensions differ");
    auto battery = random_input_battery(trials, horizon, n1.input_dim, seed);
    for (const auto& inputs : battery) {
        auto [h1, o1] = rnn_run(n1, inputs);
        auto [h2, o2] = rnn_run(n2, inputs);
        for (size_t s = 0; s < o1.size(); ++s)
            for (size_t d = 0; d < o1[s].size(); ++d)
                if (std::abs(o1[s][d] - o2[s][d]) > tol) return false;
    }
    return true;
}

bool witness_valid(const Rnn& n1, const Rnn& n2, const WitnessMap& witness, uint32_t trials,
                   uint32_t horizon, double tol, uint64_t seed) {
    if (witness.forward.size() != n2.hidden_dim ||
        (!witness.forward.empty() && witness.forward.front().size() != n1.hidden_dim))
        throw DimensionMismatch("witness_valid: witness shape does not match the hidden spaces");
    if (n1.input_dim != n2.input_dim)
        throw DimensionMismatch("witness_valid: input dimensions differ");
    auto battery = random_input_battery(trials, horizon, n1.input_dim, seed);
    for (const auto& inputs : battery) {
        auto [h1, o1] = rnn_run(n1, inputs);
        auto [h2, o2] = rnn_run(n2, inputs);
        for (size_t s = 0; s < h1.size(); ++s) {
            Vector mapped = witness.apply(h1[s]);
            for (size_t i = 0; i < mapped.size(); ++i) {
                if (witness.row_is_zero(i)) continue; // no claim for this coordinate
                if (std::abs(mapped[i] - h2[s][i]) > tol) return false;
            }
        }
    }
    return true;
}

namespace {

Matrix matrix_from_json(const json& j, const std::string& what) {
    Matrix m;
    if (!j.is_array()) throw ParseError(what + ": expected nested array");
    for (const auto& row : j) {
        Vector r;
        for (const auto& v : row) r.push_back(v.get<double>());
        m.push_back(std::move(r));
    }
    return m;
}

Rnn rnn_from_json(const json& j, const std::string& origin) {
    Rnn net;
    try {
        net.input_dim = j.at("input_dim").get<uint32_t>();
        net.hidden_dim = j.at("hidden_dim").get<uint32_t>();
        net.output_dim = j.at("output_dim").get<uint32_t>();
        net.activation = activation_from_name(j.at("activation").get<std::string>());
        net.w_in = matrix_from_json(j.at("W_in"), origin + ".W_in");
        net.w_hid = matrix_from_json(j.at("W_hid"), origin + ".W_hid");
        net.w_out = matrix_from_json(j.at("W_out"), origin + ".W_out");
        for (const auto& v : j.at("h0")) net.h0.push_back(v.get<double>());
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    net.validate();
    return net;
}

} // namespace

Rnn rnn_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("rnn JSON: ") + e.what());
    }
    return rnn_from_json(j, "rnn");
}

Rnn load_rnn(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open network file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    json j;
    try {
        j = json::parse(ss.str());
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return rnn_from_json(j, path);
}

std::string rnn_to_json_text(const Rnn& net) {
    json j;
    j["input_dim"] = net.input_dim;
    j["hidden_dim"] = net.hidden_dim;
    j["output_dim"] = net.output_dim;
    j["activation"] = activation_name(net.activation);
    j["W_in"] = net.w_in;
    j["W_hid"] = net.w_hid;
    j["W_out"] = net.w_out;
    j["h0"] = net.h0;
    return j.dump(2) + "\n";
}

} // namespace substrate
