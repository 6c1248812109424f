#include "substrate/system.hpp"

#include "substrate/utm.hpp"

namespace substrate {

std::string battery_digest(const Battery& battery) {
    ByteWriter w;
    if (const auto* sb = std::get_if<SymbolBattery>(&battery)) {
        w.u32(1);
        w.u32(static_cast<uint32_t>(sb->sequences.size()));
        for (const auto& seq : sb->sequences) {
            w.u32(static_cast<uint32_t>(seq.size()));
            for (const auto& sym : seq) w.str(sym);
        }
    } else {
        const auto& vb = std::get<VectorBattery>(battery);
        w.u32(2);
        w.u32(vb.trials);
        w.u32(vb.horizon);
        w.u32(vb.dim);
        w.u64(vb.seed);
    }
    return digest_hex(w.bytes());
}

std::string system_family(const System& s) {
    if (std::holds_alternative<MachineSystem>(s)) return "machine";
    if (std::holds_alternative<RnnSystem>(s)) return "rnn";
    return "tm";
}

namespace {

Dataset observe_machine(const MachineSystem& sys, const SymbolBattery& battery,
                        const Provenance& provenance) {
    const EncodedMachine& m = sys.machine;
    ByteWriter pred;
    pred.u32(static_cast<uint32_t>(TraceKind::EncodedStateTrace));
    pred.u32(m.width);
    pred.u32(static_cast<uint32_t>(battery.sequences.size()));
    ByteWriter inf;
    inf.u32(10);
    inf.u32(static_cast<uint32_t>(battery.sequences.size()));
    for (const auto& seq : battery.sequences) {
        Trace t = run(m, seq);
        pred.u32(static_cast<uint32_t>(t.states.size()));
        for (const auto& s : t.states) pred.raw(s); // fixed width, header carries it
        inf.u32(static_cast<uint32_t>(t.outputs.size()));
        for (const auto& o : t.outputs) inf.str(o);
    }
    return {{TraceKind::EncodedStateTrace, pred.take()}, {inf.take()}, provenance};
}

Dataset observe_rnn(const RnnSystem& sys, const VectorBattery& battery, const Provenance& provenance) {
    const Rnn& net = sys.net;
    if (battery.dim != net.input_dim)
        throw DimensionMismatch("obs: battery dimension " + std::to_string(battery.dim) +
                                " does not match network input_dim " + std::to_string(net.input_dim));
    auto inputs = random_input_battery(battery.trials, battery.horizon, battery.dim, battery.seed);
    ByteWriter pred;
    pred.u32(static_cast<uint32_t>(TraceKind::HiddenVectorTrace));
    pred.u32(net.hidden_dim);
    pred.u32(battery.trials);
    ByteWriter inf;
    inf.u32(11);
    inf.u32(net.output_dim);
    inf.u32(battery.trials);
    for (const auto& trial : inputs) {
        auto [hidden, output] = rnn_run(net, trial);
        pred.u32(static_cast<uint32_t>(hidden.size()));
        for (const auto& h : hidden)
            for (double v : h) pred.f64(v);
        inf.u32(static_cast<uint32_t>(output.size()));
        for (const auto& o : output)
            for (double v : o) inf.f64(v);
    }
    return {{TraceKind::HiddenVectorTrace, pred.take()}, {inf.take()}, provenance};
}

Dataset observe_tm(const TmSystem& sys, const SymbolBattery& battery, const Provenance& provenance,
                   uint64_t fuel) {
    ByteWriter pred;
    pred.u32(static_cast<uint32_t>(TraceKind::RegistryStateTrace));
    pred.u32(static_cast<uint32_t>(battery.sequences.size()));
    ByteWriter inf;
    inf.u32(12);
    inf.u32(static_cast<uint32_t>(battery.sequences.size()));
    for (const auto& seq : battery.sequences) {
        RunResult r;
        if (sys.via_utm) {
            UtmRun u = utm_run(sys.machine, seq, fuel);
            r = std::move(u.result);
        } else {
            r = tm_run(sys.machine, seq, fuel);
        }
        if (r.status != RunStatus::Halted)
            throw ObsFailure("obs: machine '" + sys.machine.name + "' " +
                             (sys.via_utm ? std::string("(via utm) ") : std::string()) +
                             run_status_name(r.status) + " on an input of length " +
                             std::to_string(seq.size()));
        pred.u32(static_cast<uint32_t>(r.registry_trace.size()));
        for (const auto& q : r.registry_trace) pred.str(q);
        inf.u32(static_cast<uint32_t>(r.final_tape.size()));
        for (const auto& s : r.final_tape) inf.str(s);
    }
    return {{TraceKind::RegistryStateTrace, pred.take()}, {inf.take()}, provenance};
}

} // namespace

Dataset observe(const System& system, const Battery& battery, const Provenance& provenance,
                uint64_t tm_fuel) {
    if (const auto* m = std::get_if<MachineSystem>(&system)) {
        const auto* sb = std::get_if<SymbolBattery>(&battery);
        if (!sb) throw WrongSystemFamily("obs: machine systems need a symbol battery");
        return observe_machine(*m, *sb, provenance);
    }
    if (const auto* n = std::get_if<RnnSystem>(&system)) {
        const auto* vb = std::get_if<VectorBattery>(&battery);
        if (!vb) throw WrongSystemFamily("obs: rnn systems need a random-vector battery");
        return observe_rnn(*n, *vb, provenance);
    }
    const auto& t = std::get<TmSystem>(system);
    const auto* sb = std::get_if<SymbolBattery>(&battery);
    if (!sb) throw WrongSystemFamily("obs: turing systems need a symbol battery");
    return observe_tm(t, *sb, provenance, tm_fuel);
}

} // namespace substrate
