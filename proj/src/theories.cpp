#include "substrate/theories.hpp"

#include <algorithm>

namespace substrate {

std::string theory_name(TheoryKind k) {
    switch (k) {
    case TheoryKind::Level1Functional: return "Level1Functional";
    case TheoryKind::FeedbackSensitive: return "FeedbackSensitive";
    case TheoryKind::DimensionSensitive: return "DimensionSensitive";
    }
    return "Level1Functional";
}

TheoryKind theory_from_name(const std::string& name) {
    if (name == "Level1Functional") return TheoryKind::Level1Functional;
    if (name == "FeedbackSensitive") return TheoryKind::FeedbackSensitive;
    if (name == "DimensionSensitive") return TheoryKind::DimensionSensitive;
    throw ValidationError("unknown theory '" + name + "'");
}

ExperienceSet assigned_experiences(const std::map<std::string, std::set<std::string>>& assignment,
                                   const std::string& functional_id) {
    if (assignment.empty()) {
        ExperienceSet s;
        s.insert("exp:" + functional_id);
        return s;
    }
    auto it = assignment.find(functional_id);
    if (it == assignment.end())
        throw ValidationError("assignment table has no entry for functional state '" + functional_id +
                              "'");
    if (it->second.empty())
        throw ValidationError("assignment for functional state '" + functional_id + "' is empty");
    return ExperienceSet(it->second);
}

std::vector<std::vector<std::string>> decode_state_traces(const Dataset& dataset) {
    if (dataset.prediction.kind != TraceKind::EncodedStateTrace)
        throw WrongSystemFamily("dataset does not carry an encoded-state trace");
    ByteReader r(dataset.prediction.payload);
    uint32_t kind = r.u32();
    if (kind != static_cast<uint32_t>(TraceKind::EncodedStateTrace))
        throw ValidationError("prediction payload kind tag does not match EncodedStateTrace");
    uint32_t width = r.u32();
    uint32_t n = r.u32();
    std::vector<std::vector<std::string>> traces(n);
    for (uint32_t i = 0; i < n; ++i) {
        uint32_t len = r.u32();
        traces[i].reserve(len);
        for (uint32_t k = 0; k < len; ++k) traces[i].push_back(r.fixed(width));
    }
    return traces;
}

ExperienceSet pred_level1(const Level1Theory& theory, const Dataset& dataset) {
    ExperienceSet out;
    if (const auto* ma = std::get_if<MachineAbstraction>(&theory.regime)) {
        for (const auto& trace : decode_state_traces(dataset))
            for (const auto& label : trace)
                out.merge(assigned_experiences(theory.assignment, abs_apply(ma->map, label)));
        return out;
    }
    const auto& declared = std::get<DeclaredTrace>(theory.regime);
    (void)dataset;
    for (const auto& trace : declared.ids)
        for (const auto& id : trace) out.merge(assigned_experiences(theory.assignment, id));
    return out;
}

ExperienceSet pred_feedback(const System& system, const Dataset& dataset) {
    const auto* ms = std::get_if<MachineSystem>(&system);
    if (!ms || dataset.prediction.kind != TraceKind::EncodedStateTrace)
        throw WrongSystemFamily("pred_feedback is defined for encoded-machine datasets only");
    ExperienceSet s;
    s.insert(dependency_graph(ms->machine).has_cycle() ? "cyclic" : "acyclic");
    return s;
}

ExperienceSet pred_dim(const Dataset& dataset) {
    if (dataset.prediction.kind != TraceKind::HiddenVectorTrace)
        throw WrongSystemFamily("pred_dim is defined for hidden-vector datasets only");
    ByteReader r(dataset.prediction.payload);
    uint32_t kind = r.u32();
    if (kind != static_cast<uint32_t>(TraceKind::HiddenVectorTrace))
        throw ValidationError("prediction payload kind tag does not match HiddenVectorTrace");
    uint32_t hidden_dim = r.u32();
    ExperienceSet s;
    s.insert("dim:" + std::to_string(hidden_dim));
    return s;
}

Experience inf_from_outputs(const Dataset& dataset, const InfConfig& config) {
    if (config.rule != "digest")
        throw ValidationError("unknown inference rule '" + config.rule + "'");
    std::string digest = dataset.inference.digest();
    if (config.report_table.empty()) return Experience("report:" + digest);
    auto it = config.report_table.find(digest);
    if (it == config.report_table.end())
        throw UnmappedReport("report table has no entry for output class " + digest);
    return Experience(it->second);
}

std::string tm_digest(const TuringMachine& tm) {
    detail::IndexedTm ix(tm);
    ByteWriter w;
    w.u32(static_cast<uint32_t>(ix.n_states()));
    w.u32(static_cast<uint32_t>(ix.n_symbols()));
    for (int q = 0; q < ix.n_states(); ++q) w.u32(ix.is_accepting[static_cast<size_t>(q)] ? 1 : 0);
    for (const auto& sym : ix.symbol_names) {
        bool is_input = std::find(tm.input_alphabet.begin(), tm.input_alphabet.end(), sym) !=
                        tm.input_alphabet.end();
        w.u32(is_input ? 1 : 0);
    }
    for (int q = 0; q < ix.n_states(); ++q)
        for (int r = 0; r < ix.n_symbols(); ++r) {
            const auto& rule = ix.rule(q, r);
            w.u32(static_cast<uint32_t>(rule.next + 1));
            w.u32(static_cast<uint32_t>(rule.write + 1));
            w.u32(static_cast<uint32_t>(rule.move + 1));
        }
    return digest_hex(w.bytes());
}

} // namespace substrate
