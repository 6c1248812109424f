#pragma once

// Physical-system models and the obs operation that turns one of them plus
// an input battery into a dataset. obs is deterministic: the same system and
// battery always serialize to the same bytes.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "substrate/dataset.hpp"
#include "substrate/encoded_machine.hpp"
#include "substrate/rnn.hpp"
#include "substrate/turing.hpp"

namespace substrate {

// A battery is either an explicit list of symbol sequences (machines and
// Turing machines) or a seeded pseudo-random vector battery (networks).
struct SymbolBattery {
    std::vector<std::vector<std::string>> sequences;
};

struct VectorBattery {
    uint32_t trials = 0;
    uint32_t horizon = 0;
    uint32_t dim = 0;
    uint64_t seed = 0;
};

using Battery = std::variant<SymbolBattery, VectorBattery>;

std::string battery_digest(const Battery& battery);

struct MachineSystem {
    EncodedMachine machine;
};

struct RnnSystem {
    Rnn net;
};

struct TmSystem {
    TuringMachine machine;
    // When set, the observed system is the universal machine preloaded with
    // this machine's description; prediction data is then the universal
    // machine's own registry trace.
    bool via_utm = false;
};

using System = std::variant<MachineSystem, RnnSystem, TmSystem>;

std::string system_family(const System& s); // "machine" | "rnn" | "tm"

// Runs the system over the battery and serializes the canonical dataset.
// Throws ObsFailure when a Turing machine fails to halt within fuel.
Dataset observe(const System& system, const Battery& battery, const Provenance& provenance,
                uint64_t tm_fuel);

} // namespace substrate
