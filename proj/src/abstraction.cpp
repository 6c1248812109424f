#include "substrate/abstraction.hpp"

#include <algorithm>
#include <deque>

namespace substrate {

const std::string& FunctionalMachine::display_name(const std::string& canonical_id) const {
    auto it = display.find(canonical_id);
    return it == display.end() ? canonical_id : it->second;
}

EncodedMachine reachable(const EncodedMachine& m) {
    std::set<std::string> reach = reachable_states(m);
    if (reach.size() == m.states.size()) return m;
    EncodedMachine r = m;
    r.states.clear();
    for (const auto& s : m.states)
        if (reach.count(s)) r.states.push_back(s);
    r.transition.clear();
    for (const auto& [key, to] : m.transition)
        if (reach.count(key.first)) r.transition[key] = to;
    r.output.clear();
    for (const auto& [s, o] : m.output)
        if (reach.count(s)) r.output[s] = o;
    r.aliases.clear();
    for (const auto& [s, a] : m.aliases)
        if (reach.count(s)) r.aliases[s] = a;
    return r;
}

std::pair<FunctionalMachine, AbstractionMap> quotient(const EncodedMachine& m) {
    if (reachable_states(m).size() != m.states.size())
        throw ValidationError("quotient: machine '" + m.name + "' is not reachable-restricted");

    std::vector<std::string> sorted_inputs = m.inputs;
    std::sort(sorted_inputs.begin(), sorted_inputs.end());

    // block[s] = current block index. Blocks are kept ordered by the
    // lexicographically smallest member label, which makes refinement
    // deterministic regardless of declaration order.
    std::vector<std::string> states = m.states;
    std::sort(states.begin(), states.end());

    std::map<std::string, size_t> block;
    {
        // Initial partition: by output symbol, blocks ordered by smallest member.
        std::map<std::string, std::vector<std::string>> by_output;
        for (const auto& s : states) by_output[m.output.at(s)].push_back(s);
        std::vector<std::vector<std::string>> groups;
        for (auto& [out, members] : by_output) {
            (void)out;
            groups.push_back(members);
        }
        std::sort(groups.begin(), groups.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        for (size_t i = 0; i < groups.size(); ++i)
            for (const auto& s : groups[i]) block[s] = i;
    }

    for (;;) {
        // Signature: own block plus successor blocks per input.
        std::map<std::vector<size_t>, std::vector<std::string>> by_sig;
        for (const auto& s : states) {
            std::vector<size_t> sig{block.at(s)};
            for (const auto& x : sorted_inputs) sig.push_back(block.at(m.transition.at({s, x})));
            by_sig[sig].push_back(s);
        }
        std::set<size_t> current_blocks;
        for (const auto& [s, i] : block) {
            (void)s;
            current_blocks.insert(i);
        }
        if (by_sig.size() == current_blocks.size()) break; // fixpoint: no block split further
        std::vector<std::vector<std::string>> groups;
        for (auto& [sig, members] : by_sig) {
            (void)sig;
            groups.push_back(members);
        }
        std::sort(groups.begin(), groups.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        for (size_t i = 0; i < groups.size(); ++i)
            for (const auto& s : groups[i]) block[s] = i;
    }

    // Canonical naming: BFS over quotient transitions from the initial block.
    size_t block_count = 0;
    for (const auto& [s, i] : block) {
        (void)s;
        block_count = std::max(block_count, i + 1);
    }
    std::vector<std::string> block_repr(block_count); // smallest member per block
    for (const auto& s : states) {
        std::string& r = block_repr[block.at(s)];
        if (r.empty() || s < r) r = s;
    }
    std::map<size_t, std::string> canonical; // block index -> "F<k>"
    std::vector<size_t> bfs_order;
    {
        std::deque<size_t> work{block.at(m.initial)};
        std::set<size_t> seen{block.at(m.initial)};
        while (!work.empty()) {
            size_t b = work.front();
            work.pop_front();
            canonical[b] = "F" + std::to_string(bfs_order.size());
            bfs_order.push_back(b);
            for (const auto& x : sorted_inputs) {
                size_t nb = block.at(m.transition.at({block_repr[b], x}));
                if (seen.insert(nb).second) work.push_back(nb);
            }
        }
    }
    // Every block is reachable because the machine is.

    AbstractionMap am;
    am.source = m.name;
    for (const auto& s : states) am.mapping[s] = canonical.at(block.at(s));

    // Aliases must be block-consistent; a block's alias is the shared one.
    for (const auto& [s, a] : m.aliases) {
        const std::string& id = am.mapping.at(s);
        auto it = am.display.find(id);
        if (it == am.display.end())
            am.display[id] = a;
        else if (it->second != a)
            throw AliasConflict("machine '" + m.name + "': states in one functional block carry aliases '" +
                                it->second + "' and '" + a + "'");
    }
    {
        std::set<std::string> used;
        for (const auto& [id, a] : am.display) {
            (void)id;
            if (!used.insert(a).second)
                throw AliasConflict("machine '" + m.name + "': alias '" + a +
                                    "' assigned to more than one functional block");
        }
    }

    FunctionalMachine fm;
    fm.inputs = sorted_inputs;
    fm.outputs = m.outputs;
    fm.initial = canonical.at(block.at(m.initial));
    fm.display = am.display;
    for (size_t k = 0; k < bfs_order.size(); ++k) {
        size_t b = bfs_order[k];
        std::string id = canonical.at(b);
        fm.states.push_back(id);
        fm.output[id] = m.output.at(block_repr[b]);
        for (const auto& x : sorted_inputs)
            fm.transition[{id, x}] = canonical.at(block.at(m.transition.at({block_repr[b], x})));
    }
    return {fm, am};
}

std::optional<BisimWitness> bisimilar(const EncodedMachine& m1, const EncodedMachine& m2) {
    auto in1 = m1.inputs, in2 = m2.inputs;
    std::sort(in1.begin(), in1.end());
    std::sort(in2.begin(), in2.end());
    if (in1 != in2) throw AlphabetMismatch("bisimilar: input alphabets differ");
    auto out1 = m1.outputs, out2 = m2.outputs;
    std::sort(out1.begin(), out1.end());
    std::sort(out2.begin(), out2.end());
    if (out1 != out2) throw AlphabetMismatch("bisimilar: output alphabets differ");

    EncodedMachine r1 = reachable(m1);
    EncodedMachine r2 = reachable(m2);
    auto [f1, a1] = quotient(r1);
    auto [f2, a2] = quotient(r2);
    // Canonical naming makes isomorphic pointed quotients literally equal
    // (compare structure only; display aliases do not matter).
    if (!(f1.states == f2.states && f1.initial == f2.initial && f1.transition == f2.transition &&
          f1.output == f2.output))
        return std::nullopt;

    BisimWitness w;
    std::map<std::string, std::vector<std::string>> blocks2; // canonical id -> states of m2
    for (const auto& [s, id] : a2.mapping) blocks2[id].push_back(s);
    for (const auto& [s1, id] : a1.mapping)
        for (const auto& s2 : blocks2.at(id)) w.relation.insert({s1, s2});
    return w;
}

bool check_coarse_graining(const EncodedMachine& m, const AbstractionMap& abs_map) {
    std::map<std::string, std::set<std::string>> outputs_per_block;
    for (const auto& [s, id] : abs_map.mapping) {
        auto it = m.output.find(s);
        if (it == m.output.end()) return false;
        outputs_per_block[id].insert(it->second);
    }
    for (const auto& [id, outs] : outputs_per_block) {
        (void)id;
        if (outs.size() != 1) return false; // g not well-defined on blocks
    }
    // g invertible would make the functional-state trace recoverable from the
    // outputs alone; require at least two blocks sharing an output symbol.
    std::set<std::string> distinct;
    for (const auto& [id, outs] : outputs_per_block) {
        (void)id;
        distinct.insert(*outs.begin());
    }
    return distinct.size() < outputs_per_block.size();
}

std::string abs_apply(const AbstractionMap& abs_map, const std::string& encoded_state) {
    auto it = abs_map.mapping.find(encoded_state);
    if (it == abs_map.mapping.end())
        throw UnknownState("abs: state '" + encoded_state + "' is not in the abstraction domain of '" +
                           abs_map.source + "'");
    auto d = abs_map.display.find(it->second);
    return d == abs_map.display.end() ? it->second : d->second;
}

} // namespace substrate
