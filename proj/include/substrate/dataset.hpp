#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "substrate/bytes.hpp"

namespace substrate {

// What kind of internal-observable trace a prediction payload encodes.
enum class TraceKind : uint32_t {
    EncodedStateTrace = 1, // bit-vector state labels of an encoded machine
    HiddenVectorTrace = 2, // RNN hidden vectors, IEEE-754 bit patterns
    RegistryStateTrace = 3 // Turing machine registry state names
};

// Prediction content o_i: the serialized internal-observable traces of one
// run of a system over the full input battery. Equality is bit-equality of
// the canonical payload (the kind tag is the payload's first word).
struct PredictionContent {
    TraceKind kind;
    std::vector<uint8_t> payload;

    std::string digest() const { return digest_hex(payload); }
    friend bool operator==(const PredictionContent& a, const PredictionContent& b) {
        return a.payload == b.payload;
    }
};

// Inference content o_r: the serialized report/output traces.
struct InferenceContent {
    std::vector<uint8_t> payload;

    std::string digest() const { return digest_hex(payload); }
    friend bool operator==(const InferenceContent& a, const InferenceContent& b) {
        return a.payload == b.payload;
    }
};

// Identifies the (system, input battery) pair a dataset was observed from.
struct Provenance {
    std::string system_id;
    std::string battery_digest;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

// One dataset o = (o_i, o_r) produced by obs.
struct Dataset {
    PredictionContent prediction;
    InferenceContent inference;
    Provenance provenance;
};

} // namespace substrate
