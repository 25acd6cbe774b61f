#include "hyperltl/tableau.hpp"

#include "hyperltl/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace hyperltl {

namespace {

// Reference to a closure member: a positive subformula, possibly negated.
struct Ref {
    int idx = -1;
    bool neg = false;
};

struct Node {
    Formula f;
    Op op;
    Ref lhs, rhs;
};

/// Positive subformulas of an NNF body in post-order (children first).
class Positives {
public:
    explicit Positives(const Formula& psi) { root_ = visit(psi); }

    const std::vector<Node>& nodes() const { return nodes_; }
    Ref root() const { return root_; }

private:
    Ref visit(const Formula& f)
    {
        switch (f.op()) {
        case Op::Not:
            if (f.operand().op() != Op::Atom)
                throw ValidationError("formula is not in negation normal form: " + f.to_string());
            return {visit(f.operand()).idx, true};
        case Op::Atom:
        case Op::True:
        case Op::False:
        case Op::And:
        case Op::Or:
        case Op::Next:
        case Op::Until:
        case Op::Release:
            break;
        case Op::Exists:
        case Op::Forall:
            throw UnsupportedFragment("tableau input must be quantifier-free");
        default:
            throw ValidationError("formula is not desugared: " + f.to_string());
        }
        if (auto it = index_.find(f); it != index_.end())
            return {it->second, false};
        Node n{f, f.op(), {}, {}};
        if (f.num_children() > 0)
            n.lhs = visit(f.child(0));
        if (f.num_children() > 1)
            n.rhs = visit(f.child(1));
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back(std::move(n));
        index_.emplace(f, id);
        return {id, false};
    }

    std::vector<Node> nodes_;
    std::map<Formula, int> index_;
    Ref root_;
};

using Valuation = std::vector<bool>;

bool holds(const Valuation& v, Ref r) { return v[static_cast<std::size_t>(r.idx)] != r.neg; }

bool is_elementary(Op op) { return op == Op::Atom || op == Op::Next || op == Op::Until || op == Op::Release; }

/// Every valuation of the positives satisfying the consistency rules.
std::vector<Valuation> consistent_valuations(const Positives& p)
{
    const auto& nodes = p.nodes();
    std::vector<std::size_t> elementary;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (is_elementary(nodes[i].op))
            elementary.push_back(i);
    if (elementary.size() > 24)
        throw ResourceLimitExceeded("tableau with " + std::to_string(elementary.size())
                                    + " elementary formulas is too large");

    std::vector<Valuation> out;
    const std::size_t total = std::size_t{1} << elementary.size();
    Valuation v(nodes.size(), false);
    for (std::size_t bits = 0; bits < total; ++bits) {
        for (std::size_t k = 0; k < elementary.size(); ++k)
            v[elementary[k]] = (bits >> k) & 1;
        bool ok = true;
        for (std::size_t i = 0; i < nodes.size() && ok; ++i) {
            const Node& n = nodes[i];
            switch (n.op) {
            case Op::True: v[i] = true; break;
            case Op::False: v[i] = false; break;
            case Op::And: v[i] = holds(v, n.lhs) && holds(v, n.rhs); break;
            case Op::Or: v[i] = holds(v, n.lhs) || holds(v, n.rhs); break;
            case Op::Until: ok = !v[i] || holds(v, n.lhs) || holds(v, n.rhs); break;
            case Op::Release: ok = !v[i] || holds(v, n.rhs); break;
            default: break;
            }
        }
        if (ok)
            out.push_back(v);
    }
    return out;
}

/// Per valuation: the letter read when entering a state with that valuation.
std::vector<Letter> valuation_letters(const Positives& p, const std::vector<Valuation>& vals,
                                      const std::vector<std::string>& trace_vars,
                                      const std::vector<std::string>& atoms)
{
    const auto& nodes = p.nodes();
    std::vector<Letter> letters(vals.size(), Letter(trace_vars.size()));
    std::vector<std::pair<std::size_t, std::size_t>> atom_slots(nodes.size(), {0, 0});
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].op != Op::Atom)
            continue;
        const auto var = std::find(trace_vars.begin(), trace_vars.end(), nodes[i].f.var());
        if (var == trace_vars.end())
            throw UnboundVariableError(nodes[i].f.var());
        const auto ap = std::find(atoms.begin(), atoms.end(), nodes[i].f.ap());
        if (ap == atoms.end())
            throw ValidationError("proposition '" + nodes[i].f.ap() + "' missing from the atom list");
        atom_slots[i] = {static_cast<std::size_t>(var - trace_vars.begin()),
                         static_cast<std::size_t>(ap - atoms.begin())};
    }
    for (std::size_t k = 0; k < vals.size(); ++k)
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].op != Op::Atom)
                continue;
            auto& lit = letters[k].components[atom_slots[i].first];
            (vals[k][i] ? lit.pos : lit.neg) |= AtomSet{1} << atom_slots[i].second;
        }
    return letters;
}

/// What a state with valuation v demands of the next one.
std::vector<Ref> obligations(const Positives& p, const Valuation& v)
{
    std::vector<Ref> required;
    for (std::size_t i = 0; i < p.nodes().size(); ++i) {
        if (!v[i])
            continue;
        const Node& n = p.nodes()[i];
        if (n.op == Op::Next)
            required.push_back(n.lhs);
        else if (n.op == Op::Until && !holds(v, n.rhs))
            required.push_back({static_cast<int>(i), false});
        else if (n.op == Op::Release && !holds(v, n.lhs))
            required.push_back({static_cast<int>(i), false});
    }
    return required;
}

/// Membership of v in the acceptance set of each until, in node order.
std::vector<bool> until_marks(const Positives& p, const Valuation& v)
{
    std::vector<bool> marks;
    for (std::size_t i = 0; i < p.nodes().size(); ++i)
        if (p.nodes()[i].op == Op::Until)
            marks.push_back(!v[i] || holds(v, p.nodes()[i].rhs));
    return marks;
}

/// Replaces pairs of letters that differ only in the polarity of one atom by a
/// single letter leaving that atom free, until no such pair remains.
std::set<Letter> merge_letters(std::set<Letter> cur, std::size_t num_atoms)
{
    for (bool changed = true; changed;) {
        changed = false;
        const std::size_t arity = cur.empty() ? 0 : cur.begin()->arity();
        for (std::size_t c = 0; c < arity; ++c)
            for (std::size_t b = 0; b < num_atoms; ++b) {
                const AtomSet bit = AtomSet{1} << b;
                std::set<Letter> next;
                for (const Letter& l : cur) {
                    const Literal& lit = l.components[c];
                    if (!((lit.pos | lit.neg) & bit)) {
                        next.insert(l);
                        continue;
                    }
                    Letter flip = l, free = l;
                    flip.components[c].pos ^= bit;
                    flip.components[c].neg ^= bit;
                    free.components[c].pos &= ~bit;
                    free.components[c].neg &= ~bit;
                    if (cur.count(flip)) {
                        next.insert(std::move(free));
                        changed = true;
                    } else {
                        next.insert(l);
                    }
                }
                cur = std::move(next);
            }
    }
    return cur;
}

ConsistentSet to_set(const Positives& p, const Valuation& v)
{
    ConsistentSet s;
    for (std::size_t i = 0; i < p.nodes().size(); ++i) {
        const Formula& f = p.nodes()[i].f;
        s.insert(v[i] ? f : Formula::negation(f));
    }
    return s;
}

std::string state_name(const Positives& p, const Valuation& v)
{
    std::string s;
    for (std::size_t i = 0; i < p.nodes().size(); ++i) {
        if (!is_elementary(p.nodes()[i].op))
            continue;
        if (!s.empty())
            s += " ";
        const std::string text = p.nodes()[i].f.to_string();
        const bool simple = p.nodes()[i].op == Op::Atom;
        s += v[i] ? (simple ? text : "(" + text + ")") : "!" + (simple ? text : "(" + text + ")");
    }
    return s.empty() ? "-" : s;
}

} // namespace

std::vector<Formula> closure(const Formula& psi)
{
    const Positives p(psi);
    std::vector<Formula> out;
    for (const auto& n : p.nodes()) {
        out.push_back(n.f);
        out.push_back(Formula::negation(n.f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ConsistentSet> maximal_consistent_sets(const Formula& psi)
{
    const Positives p(psi);
    std::vector<ConsistentSet> out;
    for (const auto& v : consistent_valuations(p))
        out.push_back(to_set(p, v));
    return out;
}

Tableau build_tableau(const Formula& psi, const std::vector<std::string>& trace_vars,
                      const std::vector<std::string>& atoms)
{
    if (trace_vars.empty())
        throw ArityMismatch("tableau needs at least one trace variable");
    const Positives p(psi);
    const auto& nodes = p.nodes();
    const auto vals = consistent_valuations(p);

    const std::vector<Letter> letters = valuation_letters(p, vals, trace_vars, atoms);

    Tableau t{GeneralizedBuchi(trace_vars.size(), atoms), {ConsistentSet{}}, {}};
    GeneralizedBuchi& g = t.automaton;
    const StateId iota = g.add_state("init");
    g.add_initial(iota);

    std::vector<StateId> state_of(vals.size(), 0); // 0 = not yet created (ι is never a target)
    std::vector<std::size_t> val_of{0};
    std::deque<StateId> todo;
    auto intern = [&](std::size_t k) {
        if (state_of[k] == 0) {
            state_of[k] = g.add_state(state_name(p, vals[k]));
            t.sets.push_back(to_set(p, vals[k]));
            val_of.push_back(k);
            todo.push_back(state_of[k]);
        }
        return state_of[k];
    };

    for (std::size_t k = 0; k < vals.size(); ++k)
        if (holds(vals[k], p.root()))
            g.add_edge(iota, letters[k], intern(k));

    while (!todo.empty()) {
        const StateId s = todo.front();
        todo.pop_front();
        const std::vector<Ref> required = obligations(p, vals[val_of[s]]);
        for (std::size_t k = 0; k < vals.size(); ++k) {
            const bool ok = std::all_of(required.begin(), required.end(),
                                        [&](Ref r) { return holds(vals[k], r); });
            if (ok)
                g.add_edge(s, letters[k], intern(k));
        }
    }

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].op != Op::Until)
            continue;
        const std::size_t set = g.add_acceptance_set();
        t.untils.push_back(nodes[i].f);
        for (StateId s = 1; s < g.num_states(); ++s) {
            const Valuation& v = vals[val_of[s]];
            if (!v[i] || holds(v, nodes[i].rhs))
                g.add_to_set(set, s);
        }
    }
    return t;
}

BuchiAutomaton build_formula_automaton(const Formula& psi, const std::vector<std::string>& trace_vars,
                                       const std::vector<std::string>& atoms)
{
    // Tableau states that demand the same of their successors and lie in the same
    // acceptance sets have identical futures, so they are merged on the fly: a state
    // is (obligations, until marks) and the letter still comes from the full valuation.
    if (trace_vars.empty())
        throw ArityMismatch("tableau needs at least one trace variable");
    const Positives p(psi);
    const auto vals = consistent_valuations(p);
    const std::vector<Letter> letters = valuation_letters(p, vals, trace_vars, atoms);

    using Key = std::pair<std::vector<std::pair<int, bool>>, std::vector<bool>>;
    GeneralizedBuchi g(trace_vars.size(), atoms);
    const StateId iota = g.add_state("init");
    g.add_initial(iota);
    std::map<Key, StateId> index;
    std::vector<std::vector<Ref>> demands{{p.root()}};
    std::vector<std::vector<bool>> marks{{}};
    std::vector<StateId> target(vals.size(), 0);
    std::deque<StateId> todo{iota};

    auto intern = [&](std::size_t k) {
        if (target[k] != 0)
            return target[k];
        std::vector<Ref> req = obligations(p, vals[k]);
        Key key{{}, until_marks(p, vals[k])};
        for (const Ref& r : req)
            key.first.emplace_back(r.idx, r.neg);
        std::sort(key.first.begin(), key.first.end());
        key.first.erase(std::unique(key.first.begin(), key.first.end()), key.first.end());
        auto it = index.find(key);
        if (it == index.end()) {
            std::string name = "{";
            for (const auto& [idx, neg] : key.first) {
                if (name.size() > 1)
                    name += ", ";
                name += (neg ? "!" : "") + p.nodes()[static_cast<std::size_t>(idx)].f.to_string();
            }
            name += "}";
            const StateId s = g.add_state(std::move(name));
            demands.push_back(std::move(req));
            marks.push_back(key.second);
            todo.push_back(s);
            it = index.emplace(std::move(key), s).first;
        }
        return target[k] = it->second;
    };

    while (!todo.empty()) {
        const StateId s = todo.front();
        todo.pop_front();
        std::map<StateId, std::set<Letter>> out;
        for (std::size_t k = 0; k < vals.size(); ++k) {
            const bool ok = std::all_of(demands[s].begin(), demands[s].end(),
                                        [&](Ref r) { return holds(vals[k], r); });
            if (ok)
                out[intern(k)].insert(letters[k]);
        }
        for (auto& [t, group] : out)
            for (const Letter& letter : merge_letters(std::move(group), atoms.size()))
                g.add_edge(s, letter, t);
    }

    std::size_t untils = 0;
    for (const auto& n : p.nodes())
        untils += n.op == Op::Until;
    for (std::size_t j = 0; j < untils; ++j) {
        const std::size_t set = g.add_acceptance_set();
        for (StateId s = 1; s < g.num_states(); ++s)
            if (marks[s][j])
                g.add_to_set(set, s);
    }
    return degeneralize(g);
}

} // namespace hyperltl
