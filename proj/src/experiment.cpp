#include "substrate/experiment.hpp"

#include <algorithm>

#include "substrate/utm.hpp"

namespace substrate {

namespace {

std::string fresh_split_label(const EncodedMachine& m, uint32_t width) {
    // Smallest width-bit label not already used.
    for (uint64_t v = 0; v < (1ULL << width); ++v) {
        std::string label(width, '0');
        for (uint32_t b = 0; b < width; ++b)
            if (v & (1ULL << (width - 1 - b))) label[b] = '1';
        if (std::find(m.states.begin(), m.states.end(), label) == m.states.end()) return label;
    }
    throw ValidationError("state split: no free label at width " + std::to_string(width));
}

EncodedMachine widen_labels(const EncodedMachine& m, uint32_t width) {
    // Zero-extend every label on the left.
    if (width < m.width) throw ValidationError("cannot shrink label width");
    if (width == m.width) return m;
    auto ext = [&](const std::string& s) { return std::string(width - m.width, '0') + s; };
    EncodedMachine out = m;
    out.width = width;
    out.states.clear();
    for (const auto& s : m.states) out.states.push_back(ext(s));
    out.initial = ext(m.initial);
    out.transition.clear();
    for (const auto& [key, to] : m.transition) out.transition[{ext(key.first), key.second}] = ext(to);
    out.output.clear();
    for (const auto& [s, o] : m.output) out.output[ext(s)] = o;
    out.aliases.clear();
    for (const auto& [s, a] : m.aliases) out.aliases[ext(s)] = a;
    return out;
}

} // namespace

bool variation_applicable(const Variation& v, const System& source) {
    const std::string family = system_family(source);
    return std::visit(
        [&](const auto& spec) {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, IdentityVariation>) return true;
            else if constexpr (std::is_same_v<T, ReplaceVariation>) return family == "machine";
            else if constexpr (std::is_same_v<T, RelabelVariation>) return family == "machine";
            else if constexpr (std::is_same_v<T, StateSplitVariation>) return family == "machine";
            else if constexpr (std::is_same_v<T, PadHiddenVariation>) return family == "rnn";
            else if constexpr (std::is_same_v<T, PermuteHiddenVariation>) return family == "rnn";
            else return family == "tm";
        },
        v.spec);
}

VariedSystem apply_variation(const Experiment& ex, const Variation& v, const System& source) {
    if (!variation_applicable(v, source))
        throw WrongSystemFamily("variation '" + v.name + "' is not declared for " +
                                system_family(source) + " systems");
    if (std::holds_alternative<IdentityVariation>(v.spec)) return {source, std::nullopt};

    if (const auto* rep = std::get_if<ReplaceVariation>(&v.spec)) {
        auto it = ex.systems.find(rep->target_id);
        if (it == ex.systems.end())
            throw UnknownSystem("variation '" + v.name + "': replacement target '" + rep->target_id +
                                "' is not registered");
        if (!std::holds_alternative<MachineSystem>(it->second))
            throw WrongSystemFamily("variation '" + v.name + "': replacement target is not a machine");
        return {it->second, std::nullopt};
    }

    if (const auto* rel = std::get_if<RelabelVariation>(&v.spec)) {
        const EncodedMachine& m = std::get<MachineSystem>(source).machine;
        EncodedMachine out = m;
        out.width = rel->width == 0 ? m.width : rel->width;
        auto map_label = [&](const std::string& s) {
            auto it = rel->mapping.find(s);
            if (it == rel->mapping.end())
                throw ValidationError("relabel '" + v.name + "': no image for state '" + s + "'");
            if (it->second.size() != out.width)
                throw ValidationError("relabel '" + v.name + "': image width mismatch");
            return it->second;
        };
        out.states.clear();
        for (const auto& s : m.states) out.states.push_back(map_label(s));
        {
            std::set<std::string> uniq(out.states.begin(), out.states.end());
            if (uniq.size() != out.states.size())
                throw ValidationError("relabel '" + v.name + "': mapping is not injective");
        }
        out.initial = map_label(m.initial);
        out.transition.clear();
        for (const auto& [key, to] : m.transition)
            out.transition[{map_label(key.first), key.second}] = map_label(to);
        out.output.clear();
        for (const auto& [s, o] : m.output) out.output[map_label(s)] = o;
        out.aliases.clear();
        for (const auto& [s, a] : m.aliases) out.aliases[map_label(s)] = a;
        out.validate();
        return {MachineSystem{std::move(out)}, std::nullopt};
    }

    if (const auto* split = std::get_if<StateSplitVariation>(&v.spec)) {
        EncodedMachine m = std::get<MachineSystem>(source).machine;
        if (!m.has_state(split->state))
            throw ValidationError("state split '" + v.name + "': unknown state '" + split->state + "'");
        uint32_t width = m.width;
        if (m.states.size() + 1 > (1ULL << width)) width += 1;
        m = widen_labels(m, width);
        const std::string target = std::string(width - (width == m.width ? width : 0), '0');
        (void)target;
        const std::string split_state =
            width == std::get<MachineSystem>(source).machine.width
                ? split->state
                : std::string(width - std::get<MachineSystem>(source).machine.width, '0') + split->state;
        const std::string copy = fresh_split_label(m, width);
        const auto widen_pair = [&](const std::string& s) {
            uint32_t old_width = std::get<MachineSystem>(source).machine.width;
            return width == old_width ? s : std::string(width - old_width, '0') + s;
        };
        for (const auto& [src, input] : split->redirected) {
            auto key = std::make_pair(widen_pair(src), input);
            auto it = m.transition.find(key);
            if (it == m.transition.end() || it->second != split_state)
                throw ValidationError("state split '" + v.name + "': (" + src + ", " + input +
                                      ") is not an incoming edge of '" + split->state + "'");
            it->second = copy;
        }
        m.states.push_back(copy);
        m.output[copy] = m.output.at(split_state);
        for (const auto& x : m.inputs) m.transition[{copy, x}] = m.transition.at({split_state, x});
        auto alias = m.aliases.find(split_state);
        if (alias != m.aliases.end()) m.aliases[copy] = alias->second;
        m.validate();
        return {MachineSystem{std::move(m)}, std::nullopt};
    }

    if (const auto* pad = std::get_if<PadHiddenVariation>(&v.spec)) {
        auto [net, witness] = pad_hidden(std::get<RnnSystem>(source).net, pad->extra);
        return {RnnSystem{std::move(net)}, std::move(witness)};
    }

    if (const auto* perm = std::get_if<PermuteHiddenVariation>(&v.spec)) {
        auto [net, witness] = permute_hidden(std::get<RnnSystem>(source).net, perm->perm);
        return {RnnSystem{std::move(net)}, std::move(witness)};
    }

    // UtmWrap: observe the universal machine preloaded with this machine.
    TmSystem wrapped = std::get<TmSystem>(source);
    wrapped.via_utm = true;
    return {std::move(wrapped), std::nullopt};
}

Dataset obs(const Experiment& ex, const std::string& system_id) {
    auto it = ex.systems.find(system_id);
    if (it == ex.systems.end()) throw UnknownSystem("obs: no system '" + system_id + "' registered");
    return observe(it->second, ex.battery, {system_id, battery_digest(ex.battery)}, ex.tm_fuel);
}

namespace {

// Functional trace of a network dataset under the witness regime: one id per
// (trial, step). Equivalent trajectories share the base system's ids; a
// trajectory without a valid witness correspondence keeps its own tag.
DeclaredTrace rnn_functional_trace(const Experiment& ex, const System& system, const Dataset& dataset,
                                   const WitnessLink* link) {
    const auto* vb = std::get_if<VectorBattery>(&ex.battery);
    if (!vb) throw WrongSystemFamily("level-1 network regime needs a random-vector battery");
    std::string tag = dataset.provenance.system_id;
    if (link && link->witness) {
        const Rnn& base = std::get<RnnSystem>(*link->base_system).net;
        const Rnn& own = std::get<RnnSystem>(system).net;
        if (witness_valid(base, own, *link->witness, vb->trials, vb->horizon, ex.theory.witness_tol,
                          vb->seed))
            tag = link->base_id;
    }
    DeclaredTrace out;
    out.ids.assign(vb->trials, {});
    for (uint32_t t = 0; t < vb->trials; ++t)
        for (uint32_t s = 0; s < vb->horizon; ++s)
            out.ids[t].push_back("rnn:" + tag + ":" + std::to_string(t) + ":" + std::to_string(s));
    return out;
}

// Functional trace of a Turing-machine dataset: the simulated registry
// sequence, tagged by the structural digest of the simulated machine (so a
// direct run and a universal-machine run of the same machine share ids).
DeclaredTrace tm_functional_trace(const Experiment& ex, const TmSystem& sys) {
    const auto* sb = std::get_if<SymbolBattery>(&ex.battery);
    if (!sb) throw WrongSystemFamily("level-1 turing regime needs a symbol battery");
    const std::string tag = tm_digest(sys.machine);
    DeclaredTrace out;
    for (const auto& seq : sb->sequences) {
        std::vector<std::string> ids;
        if (sys.via_utm) {
            UtmRun u = utm_run(sys.machine, seq, ex.tm_fuel);
            if (u.result.status != RunStatus::Halted)
                throw ObsFailure("level-1 turing regime: universal run did not halt");
            ids.push_back("tm:" + tag + ":" + u.initial_sim_state);
            for (const auto& q : u.boundary_states) ids.push_back("tm:" + tag + ":" + q);
        } else {
            RunResult r = tm_run(sys.machine, seq, ex.tm_fuel);
            if (r.status != RunStatus::Halted)
                throw ObsFailure("level-1 turing regime: run did not halt");
            for (const auto& q : r.registry_trace) ids.push_back("tm:" + tag + ":" + q);
        }
        out.ids.push_back(std::move(ids));
    }
    return out;
}

} // namespace

ExperienceSet apply_pred(const Experiment& ex, const System& system, const Dataset& dataset,
                         const WitnessLink* link) {
    switch (ex.theory.kind) {
    case TheoryKind::FeedbackSensitive: return pred_feedback(system, dataset);
    case TheoryKind::DimensionSensitive: return pred_dim(dataset);
    case TheoryKind::Level1Functional: break;
    }
    Level1Theory theory;
    theory.assignment = ex.theory.assignment;
    if (const auto* ms = std::get_if<MachineSystem>(&system)) {
        auto [fm, am] = quotient(reachable(ms->machine));
        theory.regime = MachineAbstraction{std::move(am)};
    } else if (std::holds_alternative<RnnSystem>(system)) {
        theory.regime = rnn_functional_trace(ex, system, dataset, link);
    } else {
        theory.regime = tm_functional_trace(ex, std::get<TmSystem>(system));
    }
    return pred_level1(theory, dataset);
}

Experience apply_inf(const Experiment& ex, const Dataset& dataset) {
    return inf_from_outputs(dataset, ex.inf);
}

std::string variation_class_name(VariationClassKind k) {
    switch (k) {
    case VariationClassKind::NotInferencePreserving: return "NotInferencePreserving";
    case VariationClassKind::NotAVariation: return "NotAVariation";
    case VariationClassKind::Type1: return "Type1";
    case VariationClassKind::Type2: return "Type2";
    }
    return "NotAVariation";
}

std::string verdict_name(VerdictKind k) {
    return k == VerdictKind::NotPreFalsified ? "NotPreFalsified" : "PreFalsifiedOrInferencesWrong";
}

VariationClass classify_datasets(const Experiment& ex, const System& base, const Dataset& base_ds,
                                 const System& varied, const Dataset& varied_ds,
                                 const WitnessLink* link) {
    VariationClass out;
    out.evidence.base = base_ds;
    out.evidence.varied = varied_ds;
    out.evidence.pred_base = apply_pred(ex, base, base_ds);
    out.evidence.pred_varied = apply_pred(ex, varied, varied_ds, link);
    if (!(base_ds.inference == varied_ds.inference))
        out.kind = VariationClassKind::NotInferencePreserving;
    else if (base_ds.prediction == varied_ds.prediction)
        out.kind = VariationClassKind::NotAVariation;
    else if (out.evidence.pred_base.intersects(out.evidence.pred_varied))
        out.kind = VariationClassKind::Type1;
    else
        out.kind = VariationClassKind::Type2;
    return out;
}

VariationClass classify_variation(const Experiment& ex, const std::string& system_id,
                                  const Variation& v) {
    auto it = ex.systems.find(system_id);
    if (it == ex.systems.end())
        throw UnknownSystem("classify: no system '" + system_id + "' registered");
    const System& source = it->second;
    VariedSystem varied = apply_variation(ex, v, source);
    Dataset base_ds = obs(ex, system_id);
    Dataset varied_ds = observe(varied.system, ex.battery,
                                {system_id + "|" + v.name, battery_digest(ex.battery)}, ex.tm_fuel);
    WitnessLink link;
    const WitnessLink* link_ptr = nullptr;
    if (varied.witness) {
        link.base_system = &source;
        link.base_id = system_id;
        link.witness = &*varied.witness;
        link_ptr = &link;
    }
    return classify_datasets(ex, source, base_ds, varied.system, varied_ds, link_ptr);
}

bool falsified_at(const Experiment& ex, const Dataset& dataset) {
    auto it = ex.systems.find(dataset.provenance.system_id);
    if (it == ex.systems.end())
        throw UnknownProvenance("falsified_at: dataset provenance '" + dataset.provenance.system_id +
                                "' is not a registered system");
    if (dataset.provenance.battery_digest != battery_digest(ex.battery))
        throw UnknownProvenance("falsified_at: dataset was observed under a different battery");
    Dataset recomputed = obs(ex, dataset.provenance.system_id);
    if (!(recomputed.prediction == dataset.prediction) ||
        !(recomputed.inference == dataset.inference))
        throw UnknownProvenance("falsified_at: dataset does not re-verify against obs");
    ExperienceSet pred = apply_pred(ex, it->second, dataset);
    Experience inferred = apply_inf(ex, dataset);
    return !pred.contains(inferred);
}

bool minimally_informative(const Experiment& ex) {
    std::vector<ExperienceSet> preds;
    for (const auto& [id, system] : ex.systems) {
        Dataset ds = obs(ex, id);
        preds.push_back(apply_pred(ex, system, ds));
    }
    for (const auto& p : preds) {
        bool has_disjoint = false;
        for (const auto& q : preds)
            if (!p.intersects(q)) {
                has_disjoint = true;
                break;
            }
        if (!has_disjoint) return false;
    }
    return true;
}

std::optional<SubstitutionWitness> is_substitution(const Experiment& ex, const Variation& transform,
                                                   const InferenceContent& inference_class) {
    std::vector<std::string> restriction;
    for (const auto& [id, system] : ex.systems) {
        (void)system;
        if (obs(ex, id).inference == inference_class) restriction.push_back(id);
    }
    if (restriction.empty())
        throw EmptyRestriction("is_substitution: no registered system produces the given inference "
                               "content");
    for (const auto& id : restriction) {
        if (!variation_applicable(transform, ex.systems.at(id))) continue;
        VariationClass c = classify_variation(ex, id, transform);
        // The image must stay inside the restriction (same inference content)
        // and the prediction sets must be disjoint.
        if (c.kind == VariationClassKind::Type2) return SubstitutionWitness{id, c};
    }
    return std::nullopt;
}

std::optional<IndependenceWitness> independence_witness(const Experiment& ex,
                                                        const std::vector<Variation>& variations) {
    for (const auto& v : variations)
        for (const auto& [id, system] : ex.systems) {
            if (!variation_applicable(v, system)) continue;
            if (v.system && *v.system != id) continue;
            VariationClass c = classify_variation(ex, id, v);
            if (c.kind == VariationClassKind::Type1 || c.kind == VariationClassKind::Type2)
                return IndependenceWitness{v.name, id, c};
        }
    return std::nullopt;
}

Verdict theorem1_verdict(const Experiment& ex, const std::vector<Variation>& variations) {
    for (const auto& v : variations)
        for (const auto& [id, system] : ex.systems) {
            if (!variation_applicable(v, system)) continue;
            if (v.system && *v.system != id) continue;
            VariationClass c = classify_variation(ex, id, v);
            if (c.kind == VariationClassKind::Type2)
                return {VerdictKind::PreFalsifiedOrInferencesWrong,
                        IndependenceWitness{v.name, id, c}};
        }
    return {VerdictKind::NotPreFalsified, std::nullopt};
}

} // namespace substrate
