#pragma once

// The formal objects of the falsification framework: experiments (a system
// registry, one input battery, a prediction theory and an inference rule),
// variations over systems, and the classification and verdict operations
// built on them.
//
// A variation is classified against a system by observing both sides on the
// experiment's battery:
//   - inference contents differ (bitwise)      -> NotInferencePreserving
//   - prediction contents equal (bitwise)      -> NotAVariation
//   - prediction sets intersect                -> Type1
//   - prediction sets disjoint                 -> Type2 (pre-falsifying)

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "substrate/system.hpp"
#include "substrate/theories.hpp"

namespace substrate {

struct Experiment {
    std::map<std::string, System> systems; // the registry, keyed by id
    Battery battery;
    TheoryConfig theory;
    InfConfig inf;
    std::vector<std::string> experience_space;
    uint64_t tm_fuel = 1'000'000;
    uint64_t io_budget = 65536;
};

// --- variations -----------------------------------------------------------

struct IdentityVariation {};
struct ReplaceVariation {
    std::string target_id; // registered system the source is swapped for
};
struct RelabelVariation {
    uint32_t width = 0;
    std::map<std::string, std::string> mapping; // old label -> new label
};
struct StateSplitVariation {
    std::string state;
    // Incoming edge instances (source state, input) redirected to the copy.
    std::vector<std::pair<std::string, std::string>> redirected;
};
struct PadHiddenVariation {
    uint32_t extra = 1;
};
struct PermuteHiddenVariation {
    std::vector<uint32_t> perm;
};
struct UtmWrapVariation {};

using VariationSpec = std::variant<IdentityVariation, ReplaceVariation, RelabelVariation,
                                   StateSplitVariation, PadHiddenVariation, PermuteHiddenVariation,
                                   UtmWrapVariation>;

struct Variation {
    std::string name;
    VariationSpec spec;
    std::optional<std::string> system; // declared source system, when fixed
};

struct VariedSystem {
    System system;
    std::optional<WitnessMap> witness; // hidden-space correspondence, when the
                                       // transform establishes one
};

// Total on the family the spec is declared for; throws WrongSystemFamily
// otherwise.
VariedSystem apply_variation(const Experiment& ex, const Variation& v, const System& source);

bool variation_applicable(const Variation& v, const System& source);

// --- observation and theory evaluation -------------------------------------

Dataset obs(const Experiment& ex, const std::string& system_id);

// Links a varied network back to its source for the Level-1 witness regime.
struct WitnessLink {
    const System* base_system = nullptr;
    std::string base_id;
    const WitnessMap* witness = nullptr;
};

ExperienceSet apply_pred(const Experiment& ex, const System& system, const Dataset& dataset,
                         const WitnessLink* link = nullptr);
Experience apply_inf(const Experiment& ex, const Dataset& dataset);

// --- classification --------------------------------------------------------

enum class VariationClassKind { NotInferencePreserving, NotAVariation, Type1, Type2 };

std::string variation_class_name(VariationClassKind k);

struct VariationEvidence {
    Dataset base;
    Dataset varied;
    ExperienceSet pred_base;
    ExperienceSet pred_varied;
};

struct VariationClass {
    VariationClassKind kind;
    VariationEvidence evidence;
};

VariationClass classify_variation(const Experiment& ex, const std::string& system_id,
                                  const Variation& v);

// Classification core shared with the enumeration harness: both datasets are
// already observed.
VariationClass classify_datasets(const Experiment& ex, const System& base, const Dataset& base_ds,
                                 const System& varied, const Dataset& varied_ds,
                                 const WitnessLink* link);

// --- framework verdicts -----------------------------------------------------

// True iff inf(dataset) is not a member of pred(dataset). The dataset must
// have been produced by this experiment's obs (UnknownProvenance otherwise).
bool falsified_at(const Experiment& ex, const Dataset& dataset);

// True iff every dataset in O = { obs(s) : s in registry } has a counterpart
// with a disjoint prediction set.
bool minimally_informative(const Experiment& ex);

struct SubstitutionWitness {
    std::string system_id;
    VariationClass classification;
};

// Searches the restriction of the registry to systems with the given
// inference content for one whose image under the transform has a disjoint
// prediction set. Throws EmptyRestriction when the restriction is empty.
std::optional<SubstitutionWitness> is_substitution(const Experiment& ex, const Variation& transform,
                                                   const InferenceContent& inference_class);

struct IndependenceWitness {
    std::string variation_name;
    std::string system_id;
    VariationClass classification;
};

// First supplied variation that is inference-preserving with changed
// prediction content on some registered system.
std::optional<IndependenceWitness> independence_witness(const Experiment& ex,
                                                        const std::vector<Variation>& variations);

enum class VerdictKind { NotPreFalsified, PreFalsifiedOrInferencesWrong };

std::string verdict_name(VerdictKind k);

struct Verdict {
    VerdictKind kind = VerdictKind::NotPreFalsified;
    std::optional<IndependenceWitness> witness; // the Type-2 witness, when present
};

Verdict theorem1_verdict(const Experiment& ex, const std::vector<Variation>& variations);

} // namespace substrate
