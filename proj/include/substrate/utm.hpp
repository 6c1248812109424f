#pragma once

// A universal Turing machine built as an explicit interpreter: it reads an
// encoded machine description X_M from its own tape, then repeatedly fetches
// the record matching the simulated (state, symbol) pair and applies it to a
// simulated-tape region. The encoding grammar is documented byte-exactly in
// docs/utm-encoding.md.
//
// The encoder is bounded (kMaxSimStates states, kMaxSimSymbols tape symbols)
// so that the interpreter can carry the fetched pair in its control states.

#include <cstdint>
#include <string>
#include <vector>

#include "substrate/turing.hpp"

namespace substrate {

inline constexpr uint32_t kMaxSimStates = 8;
inline constexpr uint32_t kMaxSimSymbols = 4;

// Description X_M of a machine as input to the universal machine, using the
// canonical index order of detail::IndexedTm (initial state first, blank
// first, remaining entries sorted by name). Injective; length grows with the
// transition table. Throws BoundsExceeded beyond the encoder bounds.
std::vector<std::string> encode_machine(const TuringMachine& tm);

// The fixed interpreter machine.
const TuringMachine& utm();

// Name of the control state whose entry marks one completed simulated step.
const std::string& utm_sync_state();

struct UtmRun {
    // result.registry_trace is the universal machine's own state sequence;
    // result.final_tape is the decoded simulated tape region, trimmed.
    RunResult result;
    // Indices into the universal machine's configuration sequence at which
    // one full simulated step completes, and the simulated registry state
    // decoded there.
    std::vector<uint64_t> boundaries;
    std::vector<std::string> boundary_states;
    std::string initial_sim_state;
};

// Writes encode_machine(tm) plus the translated input onto the universal
// machine's tape and runs it for up to `fuel` universal steps.
UtmRun utm_run(const TuringMachine& tm, const std::vector<std::string>& input, uint64_t fuel);

// Order-preserving map from the direct run's step indices (1-based) to the
// universal run's boundary marks: entry k-1 is the universal configuration
// index at which simulated step k completed. Requires both runs Halted with
// matching step/boundary counts and matching simulated registry states.
std::vector<uint64_t> trace_correspondence(const RunResult& direct, const UtmRun& universal);

} // namespace substrate
