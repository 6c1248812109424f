#include "substrate/utm.hpp"

#include <algorithm>

namespace substrate {

namespace {

// Universal-machine tape symbols. The simulated tape uses one dedicated
// symbol per simulated symbol index ("s0".."s3"), with a capitalized variant
// marking the simulated head position.
const char* kBlank = "_";
const char* kOne = "1";
const char* kZero = "0";
const char* kField = "#";
const char* kRecord = ";";
const char* kProgOpen = "[";
const char* kProgClose = "]";
const char* kFinalOpen = "{";
const char* kFinalClose = "}";
const char* kSigmaOpen = "(";
const char* kSigmaClose = ")";
const char* kHeaderOpen = "<";
const char* kHeaderClose = ">";
const char* kRegister = "$";
const char* kSimOpen = "&";

std::string sim_sym(uint32_t i) { return "s" + std::to_string(i); }
std::string sim_head(uint32_t i) { return "S" + std::to_string(i); }

std::string nm(const std::string& base, std::initializer_list<uint32_t> idx) {
    std::string s = base;
    for (uint32_t i : idx) s += "_" + std::to_string(i);
    return s;
}

TuringMachine build_utm() {
    TuringMachine u;
    u.name = "utm";
    u.blank = kBlank;
    u.tape_alphabet = {kBlank,     kOne,       kZero,       kField,     kRecord,
                       kProgOpen,  kProgClose, kFinalOpen,  kFinalClose, kSigmaOpen,
                       kSigmaClose, kHeaderOpen, kHeaderClose, kRegister, kSimOpen};
    for (uint32_t i = 0; i < kMaxSimSymbols; ++i) u.tape_alphabet.push_back(sim_sym(i));
    for (uint32_t i = 0; i < kMaxSimSymbols; ++i) u.tape_alphabet.push_back(sim_head(i));
    for (const auto& s : u.tape_alphabet)
        if (s != kBlank) u.input_alphabet.push_back(s);

    std::set<std::string> states;
    auto add = [&](const std::string& from, const std::string& read, const std::string& to,
                   const std::string& write, char move) {
        states.insert(from);
        states.insert(to);
        u.transition[{from, read}] = {to, write, move};
    };

    const uint32_t Q = kMaxSimStates;
    const uint32_t A = kMaxSimSymbols;

    // Fetch phase 1: count the unary state register. "begin" is the start
    // state; "sync" is re-entered after every completed simulated step (the
    // boundary marker). Both stand at the first register cell, which always
    // holds a 1.
    add("begin", kOne, nm("cq", {1}), kOne, 'R');
    add("sync", kOne, nm("cq", {1}), kOne, 'R');
    for (uint32_t k = 1; k <= Q; ++k) {
        if (k < Q) add(nm("cq", {k}), kOne, nm("cq", {k + 1}), kOne, 'R');
        add(nm("cq", {k}), kZero, nm("fh", {k - 1}), kZero, 'R');
        add(nm("cq", {k}), kSimOpen, nm("fh", {k - 1}), kSimOpen, 'R');
    }

    // Fetch phase 2: walk right to the simulated head marker, memorize the
    // symbol under it.
    for (uint32_t q = 0; q < Q; ++q) {
        add(nm("fh", {q}), kZero, nm("fh", {q}), kZero, 'R');
        add(nm("fh", {q}), kSimOpen, nm("fh", {q}), kSimOpen, 'R');
        for (uint32_t y = 0; y < A; ++y) add(nm("fh", {q}), sim_sym(y), nm("fh", {q}), sim_sym(y), 'R');
        for (uint32_t y = 0; y < A; ++y)
            add(nm("fh", {q}), sim_head(y), nm("rw", {q, y}), sim_head(y), 'L');
    }

    // Fetch phase 3: rewind to the program section.
    const std::vector<std::string> rewind_syms = {
        kZero, kOne, kField, kRecord, kProgClose, kFinalOpen, kFinalClose,
        kSigmaOpen, kSigmaClose, kRegister, kSimOpen,
        sim_sym(0), sim_sym(1), sim_sym(2), sim_sym(3)};
    for (uint32_t q = 0; q < Q; ++q)
        for (uint32_t r = 0; r < A; ++r) {
            for (const auto& sym : rewind_syms) add(nm("rw", {q, r}), sym, nm("rw", {q, r}), sym, 'L');
            add(nm("rw", {q, r}), kProgOpen, nm("sk", {q, r}), kProgOpen, 'R');
        }

    // Record scan: "sk" seeks the next record start (or the program end,
    // which means the simulated machine terminated); "mq"/"mr" compare the
    // record's state and symbol fields against the memorized pair.
    for (uint32_t q = 0; q < Q; ++q)
        for (uint32_t r = 0; r < A; ++r) {
            const std::string sk = nm("sk", {q, r});
            add(sk, kRecord, nm("mq", {q, r, 0}), kRecord, 'R');
            add(sk, kProgClose, "halt", kProgClose, 'R');
            add(sk, kOne, sk, kOne, 'R');
            add(sk, kField, sk, kField, 'R');
            for (uint32_t c = 0; c <= q + 1; ++c) {
                const std::string mq = nm("mq", {q, r, c});
                if (c < q + 1)
                    add(mq, kOne, nm("mq", {q, r, c + 1}), kOne, 'R');
                else
                    add(mq, kOne, sk, kOne, 'R'); // field longer than q+1: mismatch
                if (c == q + 1)
                    add(mq, kField, nm("mr", {q, r, 0}), kField, 'R');
                else
                    add(mq, kField, sk, kField, 'R');
            }
            for (uint32_t c = 0; c <= r + 1; ++c) {
                const std::string mr = nm("mr", {q, r, c});
                if (c < r + 1)
                    add(mr, kOne, nm("mr", {q, r, c + 1}), kOne, 'R');
                else
                    add(mr, kOne, sk, kOne, 'R');
                if (c == r + 1)
                    add(mr, kField, nm("gn", {0}), kField, 'R');
                else
                    add(mr, kField, sk, kField, 'R');
            }
        }

    // Decode the matched record: next state, write symbol, move direction.
    for (uint32_t c = 0; c < Q; ++c) add(nm("gn", {c}), kOne, nm("gn", {c + 1}), kOne, 'R');
    for (uint32_t c = 1; c <= Q; ++c) add(nm("gn", {c}), kField, nm("gw", {c - 1, 0}), kField, 'R');
    for (uint32_t q2 = 0; q2 < Q; ++q2) {
        for (uint32_t c = 0; c < A; ++c) add(nm("gw", {q2, c}), kOne, nm("gw", {q2, c + 1}), kOne, 'R');
        for (uint32_t c = 1; c <= A; ++c)
            add(nm("gw", {q2, c}), kField, nm("gm", {q2, c - 1}), kField, 'R');
    }
    for (uint32_t q2 = 0; q2 < Q; ++q2)
        for (uint32_t w = 0; w < A; ++w) {
            add(nm("gm", {q2, w}), kOne, nm("gm1", {q2, w}), kOne, 'R');
            // One move digit then the record/program delimiter: L. Two: R.
            add(nm("gm1", {q2, w}), kRecord, nm("exL", {q2, w}), kRecord, 'R');
            add(nm("gm1", {q2, w}), kProgClose, nm("exL", {q2, w}), kProgClose, 'R');
            add(nm("gm1", {q2, w}), kOne, nm("exR", {q2, w}), kOne, 'R');
        }

    // Execute: walk right to the register, rewrite it to the next state,
    // then apply write+move at the simulated head.
    const std::vector<std::string> exec_skip = {kOne,        kField,      kRecord,    kProgClose,
                                                kFinalOpen,  kFinalClose, kSigmaOpen, kSigmaClose};
    for (uint32_t q2 = 0; q2 < Q; ++q2)
        for (uint32_t w = 0; w < A; ++w)
            for (char m : {'L', 'R'}) {
                const std::string ex = std::string("ex") + m + "_" + std::to_string(q2) + "_" +
                                       std::to_string(w);
                for (const auto& sym : exec_skip) add(ex, sym, ex, sym, 'R');
                add(ex, kRegister, nm(std::string("sr") + m, {q2, w, 0}), kRegister, 'R');
                for (uint32_t c = 0; c <= q2 + 1; ++c) {
                    const std::string sr = nm(std::string("sr") + m, {q2, w, c});
                    const bool pad = c > q2;
                    const std::string next =
                        pad ? sr : nm(std::string("sr") + m, {q2, w, c + 1});
                    const std::string digit = pad ? kZero : kOne;
                    add(sr, kOne, next, digit, 'R');
                    add(sr, kZero, next, digit, 'R');
                    add(sr, kSimOpen, nm(std::string("sh") + m, {w}), kSimOpen, 'R');
                }
                const std::string sh = nm(std::string("sh") + m, {w});
                for (uint32_t y = 0; y < A; ++y) add(sh, sim_sym(y), sh, sim_sym(y), 'R');
                for (uint32_t y = 0; y < A; ++y)
                    add(sh, sim_head(y), m == 'R' ? "markR" : "markL", sim_sym(w), m);
            }

    // Re-mark the simulated head one cell over. Moving right past the region
    // end extends it with a fresh simulated blank; moving left past the
    // region start shifts the whole region one cell right first.
    for (uint32_t y = 0; y < A; ++y) add("markR", sim_sym(y), "ret", sim_head(y), 'L');
    add("markR", kBlank, "ret", sim_head(0), 'L');
    for (uint32_t y = 0; y < A; ++y) add("markL", sim_sym(y), "ret", sim_head(y), 'L');
    add("markL", kSimOpen, "shseek", kSimOpen, 'R');

    for (uint32_t y = 0; y < A; ++y) add("shseek", sim_sym(y), "shseek", sim_sym(y), 'R');
    add("shseek", kBlank, "shread", kBlank, 'L');
    for (uint32_t y = 0; y < A; ++y) add("shread", sim_sym(y), nm("shput", {y}), sim_sym(y), 'R');
    add("shread", kSimOpen, "shfresh", kSimOpen, 'R');
    for (uint32_t y = 0; y < A; ++y) {
        add(nm("shput", {y}), kBlank, "shback", sim_sym(y), 'L');
        for (uint32_t d = 0; d < A; ++d) add(nm("shput", {y}), sim_sym(d), "shback", sim_sym(y), 'L');
    }
    for (uint32_t y = 0; y < A; ++y) add("shback", sim_sym(y), "shread", sim_sym(y), 'L');
    for (uint32_t y = 0; y < A; ++y) add("shfresh", sim_sym(y), "ret", sim_head(0), 'L');

    // Return to the register marker and begin the next fetch.
    const std::vector<std::string> ret_syms = {kZero, kOne, kSimOpen, sim_sym(0), sim_sym(1),
                                               sim_sym(2), sim_sym(3)};
    for (const auto& sym : ret_syms) add("ret", sym, "ret", sym, 'L');
    add("ret", kRegister, "sync", kRegister, 'R');

    u.accepting = {"halt"};
    states.insert("halt");
    u.initial = "begin";
    u.states.assign(states.begin(), states.end());
    u.validate();
    return u;
}

} // namespace

const TuringMachine& utm() {
    static const TuringMachine u = build_utm();
    return u;
}

const std::string& utm_sync_state() {
    static const std::string s = "sync";
    return s;
}

std::vector<std::string> encode_machine(const TuringMachine& tm) {
    detail::IndexedTm ix(tm);
    if (ix.n_states() > static_cast<int>(kMaxSimStates))
        throw BoundsExceeded("encode_machine: '" + tm.name + "' has " + std::to_string(ix.n_states()) +
                             " states, encoder bound is " + std::to_string(kMaxSimStates));
    if (ix.n_symbols() > static_cast<int>(kMaxSimSymbols))
        throw BoundsExceeded("encode_machine: '" + tm.name + "' has " + std::to_string(ix.n_symbols()) +
                             " tape symbols, encoder bound is " + std::to_string(kMaxSimSymbols));

    std::vector<std::string> x;
    auto unary = [&x](int n) {
        for (int i = 0; i < n; ++i) x.push_back(kOne);
    };
    x.push_back(kHeaderOpen);
    unary(ix.n_states());
    x.push_back(kField);
    unary(ix.n_symbols());
    x.push_back(kHeaderClose);

    x.push_back(kProgOpen);
    for (int q = 0; q < ix.n_states(); ++q)
        for (int r = 0; r < ix.n_symbols(); ++r) {
            const auto& rule = ix.rule(q, r);
            if (rule.next < 0) continue;
            x.push_back(kRecord);
            unary(q + 1);
            x.push_back(kField);
            unary(r + 1);
            x.push_back(kField);
            unary(rule.next + 1);
            x.push_back(kField);
            unary(rule.write + 1);
            x.push_back(kField);
            unary(rule.move < 0 ? 1 : 2); // L = 1, R = 11
        }
    x.push_back(kProgClose);

    x.push_back(kFinalOpen);
    for (int q = 0; q < ix.n_states(); ++q)
        if (ix.is_accepting[static_cast<size_t>(q)]) {
            x.push_back(kRecord);
            unary(q + 1);
        }
    x.push_back(kFinalClose);

    x.push_back(kSigmaOpen);
    for (int r = 0; r < ix.n_symbols(); ++r) {
        const std::string& name = ix.symbol_names[static_cast<size_t>(r)];
        if (std::find(tm.input_alphabet.begin(), tm.input_alphabet.end(), name) ==
            tm.input_alphabet.end())
            continue;
        x.push_back(kRecord);
        unary(r + 1);
    }
    x.push_back(kSigmaClose);
    return x;
}

UtmRun utm_run(const TuringMachine& tm, const std::vector<std::string>& input, uint64_t fuel) {
    detail::IndexedTm sim_ix(tm);
    for (const auto& s : input)
        if (std::find(tm.input_alphabet.begin(), tm.input_alphabet.end(), s) == tm.input_alphabet.end())
            throw InvalidInputSymbol("utm_run: input symbol '" + s + "' not in Sigma of '" + tm.name +
                                     "'");
    std::vector<std::string> x = encode_machine(tm);

    static const detail::IndexedTm u_ix(utm());
    const int sync_id = u_ix.state_index.at(utm_sync_state());
    const int halt_id = u_ix.state_index.at("halt");

    // Lay out the initial tape: X_M, "$", the fixed-width unary register
    // (initial simulated state is index 0), "&", then the simulated region.
    detail::Tape tape;
    int64_t pos = 0;
    for (const auto& sym : x) tape.write(pos++, u_ix.symbol_index.at(sym));
    tape.write(pos++, u_ix.symbol_index.at(kRegister));
    const int64_t reg_start = pos;
    tape.write(pos++, u_ix.symbol_index.at(kOne));
    for (int i = 1; i < sim_ix.n_states(); ++i) tape.write(pos++, u_ix.symbol_index.at(kZero));
    tape.write(pos++, u_ix.symbol_index.at(kSimOpen));
    const int64_t sim_start = pos;
    if (input.empty()) {
        tape.write(pos++, u_ix.symbol_index.at(sim_head(0)));
    } else {
        for (size_t i = 0; i < input.size(); ++i) {
            uint32_t code = static_cast<uint32_t>(sim_ix.symbol_index.at(input[i]));
            tape.write(pos++, u_ix.symbol_index.at(i == 0 ? sim_head(code) : sim_sym(code)));
        }
    }

    auto decode_register = [&]() -> std::string {
        int count = 0;
        while (tape.read(reg_start + count) == u_ix.symbol_index.at(kOne)) ++count;
        return sim_ix.state_names.at(static_cast<size_t>(count - 1));
    };

    UtmRun out;
    out.initial_sim_state = decode_register();

    int state = u_ix.state_index.at("begin");
    int64_t head = reg_start;
    RunResult& r = out.result;
    r.registry_trace.push_back("begin");
    for (;;) {
        if (state == halt_id) {
            r.status = RunStatus::Halted;
            break;
        }
        if (r.steps >= fuel) {
            r.status = RunStatus::FuelExhausted;
            break;
        }
        const auto& rule = u_ix.rule(state, tape.read(head));
        if (rule.next < 0)
            throw Error("utm: interpreter has no rule for state '" +
                        u_ix.state_names[static_cast<size_t>(state)] + "' reading '" +
                        u_ix.symbol_names[static_cast<size_t>(tape.read(head))] + "'");
        tape.write(head, rule.write);
        head += rule.move;
        state = rule.next;
        ++r.steps;
        r.registry_trace.push_back(u_ix.state_names[static_cast<size_t>(state)]);
        if (state == sync_id) {
            out.boundaries.push_back(r.steps);
            out.boundary_states.push_back(decode_register());
        }
    }

    if (r.status == RunStatus::Halted) {
        // The universal machine halts when no record matches, which for a
        // well-formed 7-tuple means the simulated registry entered F or the
        // simulated machine is stuck; the decoded registry tells which.
        r.status = tm.accepting.count(decode_register()) ? RunStatus::Halted : RunStatus::Stuck;
    }

    // Decode and trim the simulated tape region.
    std::vector<int> sim_codes;
    for (int64_t p = sim_start;; ++p) {
        int c = tape.read(p);
        const std::string& name = u_ix.symbol_names[static_cast<size_t>(c)];
        if (name == kBlank) break;
        if (name[0] == 's' || name[0] == 'S')
            sim_codes.push_back(name[1] - '0');
        else
            throw Error("utm: simulated tape region corrupted");
    }
    size_t lo = 0, hi = sim_codes.size();
    while (lo < hi && sim_codes[lo] == 0) ++lo;
    while (hi > lo && sim_codes[hi - 1] == 0) --hi;
    for (size_t i = lo; i < hi; ++i)
        r.final_tape.push_back(sim_ix.symbol_names.at(static_cast<size_t>(sim_codes[i])));
    return out;
}

std::vector<uint64_t> trace_correspondence(const RunResult& direct, const UtmRun& universal) {
    if (direct.status != RunStatus::Halted)
        throw NotHalted("trace_correspondence: direct run did not halt");
    if (universal.result.status != RunStatus::Halted)
        throw NotHalted("trace_correspondence: universal run did not halt");
    if (universal.boundaries.size() != direct.steps)
        throw StepCountMismatch("trace_correspondence: " + std::to_string(universal.boundaries.size()) +
                                " boundary marks vs " + std::to_string(direct.steps) +
                                " direct steps");
    for (size_t k = 0; k < universal.boundaries.size(); ++k) {
        if (k > 0 && universal.boundaries[k] <= universal.boundaries[k - 1])
            throw StepCountMismatch("trace_correspondence: boundary marks not strictly increasing");
        if (universal.boundary_states[k] != direct.registry_trace[k + 1])
            throw StepCountMismatch("trace_correspondence: simulated registry '" +
                                    universal.boundary_states[k] + "' at step " + std::to_string(k + 1) +
                                    " does not match direct state '" + direct.registry_trace[k + 1] +
                                    "'");
    }
    return universal.boundaries;
}

} // namespace substrate
