#include "hyperltl/automata.hpp"

#include "hyperltl/error.hpp"
#include "graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace hyperltl {

namespace {

AtomSet full_mask(std::size_t n) { return n >= 64 ? ~AtomSet{0} : ((AtomSet{1} << n) - 1); }

/// Maps bit positions of `from` onto positions of `to`; -1 when the atom is absent.
std::vector<int> atom_map(const std::vector<std::string>& from, const std::vector<std::string>& to)
{
    std::vector<int> m(from.size(), -1);
    for (std::size_t i = 0; i < from.size(); ++i) {
        auto it = std::find(to.begin(), to.end(), from[i]);
        if (it != to.end())
            m[i] = static_cast<int>(it - to.begin());
    }
    return m;
}

AtomSet remap(AtomSet v, const std::vector<int>& m)
{
    AtomSet out = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] >= 0 && (v >> i & 1))
            out |= AtomSet{1} << m[i];
    return out;
}

Letter remap(const Letter& l, const std::vector<int>& m)
{
    Letter out(l.arity());
    for (std::size_t c = 0; c < l.arity(); ++c) {
        out.components[c].pos = remap(l.components[c].pos, m);
        out.components[c].neg = remap(l.components[c].neg, m);
    }
    return out;
}

std::vector<std::string> merge_atoms(const std::vector<std::string>& a, const std::vector<std::string>& b)
{
    std::vector<std::string> out = a;
    for (const auto& x : b)
        if (std::find(out.begin(), out.end(), x) == out.end())
            out.push_back(x);
    if (out.size() > max_atoms)
        throw Error("more than 64 relevant atoms");
    return out;
}

std::string atom_set_string(AtomSet v, const std::vector<std::string>& atoms)
{
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if (v >> i & 1) {
            s += (first ? "" : ",") + atoms[i];
            first = false;
        }
    return s + "}";
}

detail::Adjacency adjacency(const TransitionGraph& a)
{
    detail::Adjacency adj(a.num_states());
    for (StateId s = 0; s < a.num_states(); ++s) {
        for (const auto& e : a.edges(s))
            adj[s].push_back(e.target);
        std::sort(adj[s].begin(), adj[s].end());
        adj[s].erase(std::unique(adj[s].begin(), adj[s].end()), adj[s].end());
    }
    return adj;
}

} // namespace

// ---------------------------------------------------------------------------
// Letters

Letter Letter::exactly(const Symbol& s, std::size_t num_atoms)
{
    Letter l(s.size());
    const AtomSet mask = full_mask(num_atoms);
    for (std::size_t c = 0; c < s.size(); ++c) {
        l.components[c].pos = s[c] & mask;
        l.components[c].neg = ~s[c] & mask;
    }
    return l;
}

bool Letter::satisfiable() const noexcept
{
    return std::all_of(components.begin(), components.end(), [](const Literal& l) { return l.satisfiable(); });
}

bool Letter::matches(const Symbol& s) const noexcept
{
    if (s.size() != components.size())
        return false;
    for (std::size_t c = 0; c < s.size(); ++c)
        if (!components[c].matches(s[c]))
            return false;
    return true;
}

Symbol Letter::concretize() const
{
    Symbol s(components.size());
    for (std::size_t c = 0; c < components.size(); ++c)
        s[c] = components[c].pos;
    return s;
}

std::optional<Letter> Letter::conjoin(const Letter& a, const Letter& b)
{
    if (a.arity() != b.arity())
        throw ArityMismatch("cannot conjoin letters of arity " + std::to_string(a.arity()) + " and "
                            + std::to_string(b.arity()));
    Letter out(a.arity());
    for (std::size_t c = 0; c < a.arity(); ++c) {
        out.components[c].pos = a.components[c].pos | b.components[c].pos;
        out.components[c].neg = a.components[c].neg | b.components[c].neg;
        if (!out.components[c].satisfiable())
            return std::nullopt;
    }
    return out;
}

std::string Letter::to_string(const std::vector<std::string>& atoms) const
{
    std::string s = "(";
    for (std::size_t c = 0; c < components.size(); ++c) {
        if (c)
            s += " | ";
        std::string part;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (components[c].pos >> i & 1)
                part += (part.empty() ? "+" : " +") + atoms[i];
            else if (components[c].neg >> i & 1)
                part += (part.empty() ? "-" : " -") + atoms[i];
        }
        s += part.empty() ? "*" : part;
    }
    return s + ")";
}

// ---------------------------------------------------------------------------
// Lasso words

const Symbol& LassoWord::at(std::size_t i) const
{
    if (i < stem.size())
        return stem[i];
    return cycle.at((i - stem.size()) % cycle.size());
}

std::string LassoWord::to_string() const
{
    auto sym = [&](const Symbol& s) {
        if (arity == 1)
            return atom_set_string(s.at(0), atoms);
        std::string out = "(";
        for (std::size_t c = 0; c < s.size(); ++c)
            out += (c ? "," : "") + atom_set_string(s[c], atoms);
        return out + ")";
    };
    std::string out = "stem =";
    for (const auto& s : stem)
        out += " " + sym(s);
    out += " ; cycle =";
    for (const auto& s : cycle)
        out += " " + sym(s);
    return out;
}

void validate(const LassoWord& w)
{
    if (w.cycle.empty())
        throw ValidationError("lasso word has an empty cycle");
    if (w.atoms.size() > max_atoms)
        throw ValidationError("lasso word has more than 64 atoms");
    for (const auto* part : {&w.stem, &w.cycle})
        for (const auto& s : *part)
            if (s.size() != w.arity)
                throw ValidationError("lasso symbol width differs from arity " + std::to_string(w.arity));
}

LassoWord canonical(const LassoWord& w)
{
    validate(w);
    LassoWord out = w;
    const std::size_t n = out.cycle.size();
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d)
            continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i)
            periodic = out.cycle[i] == out.cycle[i % d];
        if (periodic) {
            out.cycle.resize(d);
            break;
        }
    }
    while (!out.stem.empty() && out.stem.back() == out.cycle.back()) {
        out.stem.pop_back();
        std::rotate(out.cycle.rbegin(), out.cycle.rbegin() + 1, out.cycle.rend());
    }
    return out;
}

LassoWord with_atoms(const LassoWord& w, const std::vector<std::string>& atoms)
{
    if (atoms.size() > max_atoms)
        throw ValidationError("more than 64 atoms");
    const auto m = atom_map(w.atoms, atoms);
    LassoWord out;
    out.atoms = atoms;
    out.arity = w.arity;
    auto conv = [&](const Symbol& s) {
        Symbol t(s.size());
        for (std::size_t c = 0; c < s.size(); ++c)
            t[c] = remap(s[c], m);
        return t;
    };
    for (const auto& s : w.stem)
        out.stem.push_back(conv(s));
    for (const auto& s : w.cycle)
        out.cycle.push_back(conv(s));
    return out;
}

bool same_word(const LassoWord& a, const LassoWord& b)
{
    if (a.arity != b.arity)
        return false;
    const auto atoms = merge_atoms(a.atoms, b.atoms);
    const LassoWord x = canonical(with_atoms(a, atoms));
    const LassoWord y = canonical(with_atoms(b, atoms));
    return x.stem == y.stem && x.cycle == y.cycle;
}

LassoWord zip(std::span<const LassoWord> words)
{
    if (words.empty())
        throw ArityMismatch("zip of zero words");
    std::vector<std::string> atoms;
    std::size_t stem = 0;
    std::size_t period = 1;
    std::size_t arity = 0;
    for (const auto& w : words) {
        validate(w);
        atoms = merge_atoms(atoms, w.atoms);
        stem = std::max(stem, w.stem.size());
        period = std::lcm(period, w.cycle.size());
        arity += w.arity;
    }
    std::vector<LassoWord> aligned;
    for (const auto& w : words)
        aligned.push_back(with_atoms(w, atoms));

    LassoWord out;
    out.atoms = atoms;
    out.arity = arity;
    for (std::size_t i = 0; i < stem + period; ++i) {
        Symbol s;
        for (const auto& w : aligned) {
            const Symbol& x = w.at(i);
            s.insert(s.end(), x.begin(), x.end());
        }
        (i < stem ? out.stem : out.cycle).push_back(std::move(s));
    }
    return out;
}

std::vector<LassoWord> unzip(const LassoWord& w)
{
    validate(w);
    std::vector<LassoWord> out;
    for (std::size_t c = 0; c < w.arity; ++c) {
        LassoWord t;
        t.atoms = w.atoms;
        t.arity = 1;
        for (const auto& s : w.stem)
            t.stem.push_back({s[c]});
        for (const auto& s : w.cycle)
            t.cycle.push_back({s[c]});
        out.push_back(canonical(t));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Automaton containers

TransitionGraph::TransitionGraph(std::size_t arity, std::vector<std::string> atoms)
    : arity_(arity), atoms_(std::move(atoms))
{
    if (arity_ == 0)
        throw ArityMismatch("automaton arity must be positive");
    if (atoms_.size() > max_atoms)
        throw Error("more than 64 relevant atoms");
}

int TransitionGraph::atom_index(const std::string& atom) const
{
    auto it = std::find(atoms_.begin(), atoms_.end(), atom);
    return it == atoms_.end() ? -1 : static_cast<int>(it - atoms_.begin());
}

std::size_t TransitionGraph::num_edges() const noexcept
{
    std::size_t n = 0;
    for (const auto& e : edges_)
        n += e.size();
    return n;
}

void TransitionGraph::add_initial(StateId s)
{
    if (s >= num_states())
        throw Error("initial state out of range");
    if (std::find(initial_.begin(), initial_.end(), s) == initial_.end())
        initial_.push_back(s);
}

void TransitionGraph::validate_letter(const Letter& l) const
{
    if (l.arity() != arity_)
        throw ArityMismatch("letter arity " + std::to_string(l.arity()) + " differs from automaton arity "
                            + std::to_string(arity_));
}

void TransitionGraph::add_edge(StateId from, Letter letter, StateId to)
{
    if (from >= num_states() || to >= num_states())
        throw Error("edge endpoint out of range");
    validate_letter(letter);
    const AtomSet mask = full_mask(atoms_.size());
    for (auto& c : letter.components) {
        c.pos &= mask;
        c.neg &= mask;
    }
    if (!letter.satisfiable())
        return;
    edges_[from].push_back({std::move(letter), to});
}

StateId TransitionGraph::push_state(std::string name)
{
    edges_.emplace_back();
    names_.push_back(std::move(name));
    return static_cast<StateId>(edges_.size() - 1);
}

StateId BuchiAutomaton::add_state(bool accepting, std::string name)
{
    accepting_.push_back(accepting);
    return push_state(std::move(name));
}

bool BuchiAutomaton::all_accepting() const
{
    return std::all_of(accepting_.begin(), accepting_.end(), [](bool b) { return b; });
}

std::size_t BuchiAutomaton::num_accepting() const
{
    return static_cast<std::size_t>(std::count(accepting_.begin(), accepting_.end(), true));
}

StateId GeneralizedBuchi::add_state(std::string name)
{
    for (auto& s : sets_)
        s.push_back(false);
    return push_state(std::move(name));
}

std::size_t GeneralizedBuchi::add_acceptance_set()
{
    sets_.emplace_back(num_states(), false);
    return sets_.size() - 1;
}

void GeneralizedBuchi::add_to_set(std::size_t set, StateId s) { sets_.at(set).at(s) = true; }

AutomatonSize size_of(const TransitionGraph& a) { return {a.num_states(), a.num_edges()}; }

// ---------------------------------------------------------------------------
// Constructions

namespace {

/// Reachable synchronous product of `parts` copies; edge letters concatenate components.
/// Shared by self-composition; returns the tuple of component states per product state.
struct TupleProduct {
    std::vector<std::vector<StateId>> tuples;
    std::vector<std::vector<Edge>> edges;
    std::vector<StateId> initial;
};

TupleProduct tuple_product(const BuchiAutomaton& a, std::size_t n)
{
    TupleProduct out;
    std::map<std::vector<StateId>, StateId> index;
    std::deque<StateId> todo;
    auto intern = [&](const std::vector<StateId>& t) {
        auto [it, fresh] = index.emplace(t, static_cast<StateId>(out.tuples.size()));
        if (fresh) {
            out.tuples.push_back(t);
            out.edges.emplace_back();
            todo.push_back(it->second);
        }
        return it->second;
    };

    // all combinations of initial states
    std::vector<StateId> t(n);
    std::vector<std::size_t> idx(n, 0);
    const auto& init = a.initial();
    if (!init.empty()) {
        while (true) {
            for (std::size_t i = 0; i < n; ++i)
                t[i] = init[idx[i]];
            out.initial.push_back(intern(t));
            std::size_t i = n;
            while (i > 0 && ++idx[i - 1] == init.size())
                idx[--i] = 0;
            if (i == 0)
                break;
        }
    }

    while (!todo.empty()) {
        const StateId s = todo.front();
        todo.pop_front();
        const std::vector<StateId> src = out.tuples[s];
        bool dead = false;
        for (auto q : src)
            dead |= a.edges(q).empty();
        if (dead)
            continue;
        std::vector<std::size_t> e(n, 0);
        while (true) {
            Letter l(n);
            std::vector<StateId> dst(n);
            for (std::size_t i = 0; i < n; ++i) {
                const Edge& edge = a.edges(src[i])[e[i]];
                l.components[i] = edge.letter.components[0];
                dst[i] = edge.target;
            }
            const StateId d = intern(dst);
            out.edges[s].push_back({std::move(l), d});
            std::size_t i = n;
            while (i > 0 && ++e[i - 1] == a.edges(src[i - 1]).size())
                e[--i] = 0;
            if (i == 0)
                break;
        }
    }
    return out;
}

std::string tuple_name(const std::vector<StateId>& t, const TransitionGraph& a)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i)
            s += ",";
        s += a.name(t[i]).empty() ? std::to_string(t[i]) : a.name(t[i]);
    }
    return s + ")";
}

} // namespace

BuchiAutomaton self_compose(const BuchiAutomaton& a, std::size_t n)
{
    if (a.arity() != 1)
        throw ArityMismatch("self-composition expects an arity-1 automaton");
    if (n == 0)
        throw Error("self-composition needs n >= 1");

    const TupleProduct p = tuple_product(a, n);

    if (a.all_accepting()) {
        BuchiAutomaton out(n, a.atoms());
        for (const auto& t : p.tuples)
            out.add_state(true, tuple_name(t, a));
        for (StateId s = 0; s < p.edges.size(); ++s)
            for (const auto& e : p.edges[s])
                out.add_edge(s, e.letter, e.target);
        for (auto s : p.initial)
            out.add_initial(s);
        return out;
    }

    // One acceptance set per component, then the counter construction.
    GeneralizedBuchi g(n, a.atoms());
    for (const auto& t : p.tuples)
        g.add_state(tuple_name(t, a));
    for (std::size_t i = 0; i < n; ++i) {
        const auto set = g.add_acceptance_set();
        for (StateId s = 0; s < p.tuples.size(); ++s)
            if (a.is_accepting(p.tuples[s][i]))
                g.add_to_set(set, s);
    }
    for (StateId s = 0; s < p.edges.size(); ++s)
        for (const auto& e : p.edges[s])
            g.add_edge(s, e.letter, e.target);
    for (auto s : p.initial)
        g.add_initial(s);
    return degeneralize(g);
}

BuchiAutomaton intersect(const BuchiAutomaton& a, const BuchiAutomaton& b)
{
    if (a.arity() != b.arity())
        throw ArityMismatch("cannot intersect automata of arity " + std::to_string(a.arity()) + " and "
                            + std::to_string(b.arity()));
    const auto atoms = merge_atoms(a.atoms(), b.atoms());
    const auto ma = atom_map(a.atoms(), atoms);
    const auto mb = atom_map(b.atoms(), atoms);

    // mode 0: plain product keeping b's acceptance, 1: keeping a's, 2: two copies
    const int mode = a.all_accepting() ? 0 : (b.all_accepting() ? 1 : 2);

    BuchiAutomaton out(a.arity(), atoms);
    struct Key {
        StateId p, q;
        int copy;
        auto operator<=>(const Key&) const = default;
    };
    std::map<Key, StateId> index;
    std::deque<Key> todo;
    auto accepting = [&](const Key& k) {
        switch (mode) {
        case 0: return b.is_accepting(k.q);
        case 1: return a.is_accepting(k.p);
        default: return k.copy == 0 && a.is_accepting(k.p);
        }
    };
    auto intern = [&](const Key& k) {
        auto it = index.find(k);
        if (it != index.end())
            return it->second;
        std::string name = "(" + (a.name(k.p).empty() ? std::to_string(k.p) : a.name(k.p)) + ","
            + (b.name(k.q).empty() ? std::to_string(k.q) : b.name(k.q));
        if (mode == 2)
            name += "," + std::to_string(k.copy);
        name += ")";
        const StateId id = out.add_state(accepting(k), std::move(name));
        index.emplace(k, id);
        todo.push_back(k);
        return id;
    };

    for (auto p : a.initial())
        for (auto q : b.initial())
            out.add_initial(intern({p, q, 0}));

    while (!todo.empty()) {
        const Key k = todo.front();
        todo.pop_front();
        const StateId s = index.at(k);
        int next_copy = k.copy;
        if (mode == 2) {
            if (k.copy == 0 && a.is_accepting(k.p))
                next_copy = 1;
            else if (k.copy == 1 && b.is_accepting(k.q))
                next_copy = 0;
        }
        for (const auto& ea : a.edges(k.p)) {
            const Letter la = remap(ea.letter, ma);
            for (const auto& eb : b.edges(k.q)) {
                auto l = Letter::conjoin(la, remap(eb.letter, mb));
                if (!l)
                    continue;
                out.add_edge(s, std::move(*l), intern({ea.target, eb.target, next_copy}));
            }
        }
    }
    return out;
}

BuchiAutomaton project(const BuchiAutomaton& a, std::size_t k)
{
    if (k == 0 || k > a.arity())
        throw Error("projection width " + std::to_string(k) + " outside 1.." + std::to_string(a.arity()));
    BuchiAutomaton out(k, a.atoms());
    for (StateId s = 0; s < a.num_states(); ++s)
        out.add_state(a.is_accepting(s), a.name(s));
    for (StateId s = 0; s < a.num_states(); ++s)
        for (const auto& e : a.edges(s)) {
            Letter l(k);
            std::copy_n(e.letter.components.begin(), k, l.components.begin());
            out.add_edge(s, std::move(l), e.target);
        }
    for (auto s : a.initial())
        out.add_initial(s);
    return out;
}

BuchiAutomaton restrict_atoms(const BuchiAutomaton& a, const std::vector<std::string>& keep)
{
    std::vector<std::string> atoms;
    for (const auto& x : a.atoms())
        if (std::find(keep.begin(), keep.end(), x) != keep.end())
            atoms.push_back(x);
    const auto m = atom_map(a.atoms(), atoms);
    BuchiAutomaton out(a.arity(), atoms);
    for (StateId s = 0; s < a.num_states(); ++s)
        out.add_state(a.is_accepting(s), a.name(s));
    for (StateId s = 0; s < a.num_states(); ++s) {
        std::vector<Edge> seen;
        for (const auto& e : a.edges(s)) {
            Edge r{remap(e.letter, m), e.target};
            if (std::find_if(seen.begin(), seen.end(),
                             [&](const Edge& x) { return x.target == r.target && x.letter == r.letter; })
                != seen.end())
                continue;
            seen.push_back(r);
            out.add_edge(s, r.letter, r.target);
        }
    }
    for (auto s : a.initial())
        out.add_initial(s);
    return out;
}

BuchiAutomaton trim(const BuchiAutomaton& a)
{
    const auto adj = adjacency(a);
    const auto scc = detail::tarjan(adj, {a.initial().begin(), a.initial().end()});
    std::vector<bool> good(scc.count, false);
    for (StateId s = 0; s < a.num_states(); ++s)
        if (scc.comp[s] >= 0 && scc.nontrivial[scc.comp[s]] && a.is_accepting(s))
            good[scc.comp[s]] = true;
    std::vector<bool> target(a.num_states(), false);
    for (StateId s = 0; s < a.num_states(); ++s)
        target[s] = scc.comp[s] >= 0 && good[scc.comp[s]];
    const auto useful = detail::backward_reachable(adj, target);

    BuchiAutomaton out(a.arity(), a.atoms());
    std::vector<StateId> map(a.num_states(), 0);
    for (StateId s = 0; s < a.num_states(); ++s)
        if (scc.comp[s] >= 0 && useful[s])
            map[s] = out.add_state(a.is_accepting(s), a.name(s));
    for (StateId s = 0; s < a.num_states(); ++s) {
        if (scc.comp[s] < 0 || !useful[s])
            continue;
        for (const auto& e : a.edges(s))
            if (useful[e.target])
                out.add_edge(map[s], e.letter, map[e.target]);
    }
    for (auto s : a.initial())
        if (useful[s])
            out.add_initial(map[s]);
    return out;
}

BuchiAutomaton bisimulation_quotient(const BuchiAutomaton& a)
{
    const std::size_t n = a.num_states();
    std::vector<StateId> block(n);
    for (StateId s = 0; s < n; ++s)
        block[s] = a.is_accepting(s) ? 1 : 0;
    std::size_t blocks = 0;
    while (true) {
        using Signature = std::pair<StateId, std::vector<std::pair<Letter, StateId>>>;
        std::map<Signature, StateId> ids;
        std::vector<StateId> next(n);
        for (StateId s = 0; s < n; ++s) {
            Signature sig{block[s], {}};
            for (const auto& e : a.edges(s))
                sig.second.emplace_back(e.letter, block[e.target]);
            std::sort(sig.second.begin(), sig.second.end());
            sig.second.erase(std::unique(sig.second.begin(), sig.second.end()), sig.second.end());
            next[s] = ids.emplace(std::move(sig), static_cast<StateId>(ids.size())).first->second;
        }
        block = std::move(next);
        if (ids.size() == blocks)
            break;
        blocks = ids.size();
    }

    BuchiAutomaton out(a.arity(), a.atoms());
    std::vector<StateId> rep(blocks, static_cast<StateId>(-1));
    for (StateId s = 0; s < n; ++s)
        if (rep[block[s]] == static_cast<StateId>(-1))
            rep[block[s]] = s;
    for (std::size_t b = 0; b < blocks; ++b)
        out.add_state(a.is_accepting(rep[b]), a.name(rep[b]));
    for (std::size_t b = 0; b < blocks; ++b) {
        std::vector<std::pair<Letter, StateId>> es;
        for (const auto& e : a.edges(rep[b]))
            es.emplace_back(e.letter, block[e.target]);
        std::sort(es.begin(), es.end());
        es.erase(std::unique(es.begin(), es.end()), es.end());
        for (auto& [l, t] : es)
            out.add_edge(static_cast<StateId>(b), l, t);
    }
    for (auto s : a.initial())
        out.add_initial(block[s]);
    return out;
}

namespace {

/// σ ⊆ τ as symbol sets: τ constrains nothing that σ leaves open or flips.
bool covers(const Letter& tau, const Letter& sigma)
{
    for (std::size_t c = 0; c < tau.arity(); ++c) {
        const Literal& t = tau.components[c];
        const Literal& s = sigma.components[c];
        if ((t.pos & ~s.pos) != 0 || (t.neg & ~s.neg) != 0)
            return false;
    }
    return true;
}

/// Direct simulation: sim[q][r] iff r can match every step of q edge by edge,
/// visiting an accepting state whenever q does.
std::vector<std::vector<bool>> direct_simulation(const BuchiAutomaton& a)
{
    const std::size_t n = a.num_states();
    std::vector<std::vector<bool>> sim(n, std::vector<bool>(n, false));
    for (StateId q = 0; q < n; ++q)
        for (StateId r = 0; r < n; ++r)
            sim[q][r] = !a.is_accepting(q) || a.is_accepting(r);
    for (bool changed = true; changed;) {
        changed = false;
        for (StateId q = 0; q < n; ++q)
            for (StateId r = 0; r < n; ++r) {
                if (!sim[q][r] || q == r)
                    continue;
                const bool ok = std::all_of(a.edges(q).begin(), a.edges(q).end(), [&](const Edge& e) {
                    return std::any_of(a.edges(r).begin(), a.edges(r).end(), [&](const Edge& f) {
                        return sim[e.target][f.target] && covers(f.letter, e.letter);
                    });
                });
                if (!ok) {
                    sim[q][r] = false;
                    changed = true;
                }
            }
    }
    return sim;
}

} // namespace

BuchiAutomaton simulation_reduce(const BuchiAutomaton& input, std::size_t max_states)
{
    const BuchiAutomaton a = trim(input);
    const std::size_t n = a.num_states();
    if (n == 0 || n > max_states)
        return a;
    const auto sim = direct_simulation(a);

    // quotient by simulation equivalence
    std::vector<StateId> cls(n, static_cast<StateId>(-1));
    std::vector<StateId> rep;
    for (StateId q = 0; q < n; ++q) {
        if (cls[q] != static_cast<StateId>(-1))
            continue;
        cls[q] = static_cast<StateId>(rep.size());
        for (StateId r = q + 1; r < n; ++r)
            if (cls[r] == static_cast<StateId>(-1) && sim[q][r] && sim[r][q])
                cls[r] = cls[q];
        rep.push_back(q);
    }
    auto below = [&](StateId x, StateId y) { return sim[rep[x]][rep[y]]; };

    BuchiAutomaton out(a.arity(), a.atoms());
    for (StateId c = 0; c < rep.size(); ++c)
        out.add_state(a.is_accepting(rep[c]), a.name(rep[c]));
    for (StateId c = 0; c < rep.size(); ++c) {
        std::vector<std::pair<Letter, StateId>> es;
        for (StateId q = 0; q < n; ++q)
            if (cls[q] == c)
                for (const auto& e : a.edges(q))
                    es.emplace_back(e.letter, cls[e.target]);
        std::sort(es.begin(), es.end());
        es.erase(std::unique(es.begin(), es.end()), es.end());
        // drop "little brothers": edges dominated by a more general edge to a simulating state
        for (std::size_t i = 0; i < es.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < es.size() && !dominated; ++j)
                dominated = j != i && covers(es[j].first, es[i].first) && below(es[i].second, es[j].second)
                            && !(covers(es[i].first, es[j].first) && below(es[j].second, es[i].second) && i < j);
            if (!dominated)
                out.add_edge(c, es[i].first, es[i].second);
        }
    }
    std::vector<StateId> inits;
    for (auto s : a.initial())
        inits.push_back(cls[s]);
    std::sort(inits.begin(), inits.end());
    inits.erase(std::unique(inits.begin(), inits.end()), inits.end());
    for (auto i : inits) {
        const bool dominated = std::any_of(inits.begin(), inits.end(), [&](StateId j) {
            return j != i && below(i, j);
        });
        if (!dominated)
            out.add_initial(i);
    }
    return trim(out);
}

BuchiAutomaton degeneralize(const GeneralizedBuchi& g)
{
    const std::size_t m = g.num_sets();
    BuchiAutomaton out(g.arity(), g.atoms());
    if (m == 0) {
        for (StateId s = 0; s < g.num_states(); ++s)
            out.add_state(true, g.name(s));
        for (StateId s = 0; s < g.num_states(); ++s)
            for (const auto& e : g.edges(s))
                out.add_edge(s, e.letter, e.target);
        for (auto s : g.initial())
            out.add_initial(s);
        return out;
    }

    auto id = [m](StateId q, std::size_t i) { return static_cast<StateId>(q * m + i); };
    for (StateId q = 0; q < g.num_states(); ++q)
        for (std::size_t i = 0; i < m; ++i) {
            std::string name = g.name(q).empty() ? std::to_string(q) : g.name(q);
            if (m > 1)
                name += "#" + std::to_string(i);
            out.add_state(i == m - 1 && g.in_set(m - 1, q), std::move(name));
        }
    for (StateId q = 0; q < g.num_states(); ++q)
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j = g.in_set(i, q) ? (i + 1) % m : i;
            for (const auto& e : g.edges(q))
                out.add_edge(id(q, i), e.letter, id(e.target, j));
        }
    for (auto q : g.initial())
        out.add_initial(id(q, 0));
    return out;
}

// ---------------------------------------------------------------------------
// Emptiness (nested DFS)

std::optional<LassoWord> is_empty(const BuchiAutomaton& a)
{
    const std::size_t n = a.num_states();
    enum : std::uint8_t { White, Cyan, Blue };
    std::vector<std::uint8_t> color(n, White);
    std::vector<bool> red(n, false);

    struct Frame {
        StateId state;
        std::size_t next;
        const Letter* via; // letter of the edge that entered this frame
    };

    auto lasso_from = [&](const std::vector<Frame>& blue, const std::vector<Frame>& red_path,
                          const Letter& closing, StateId hit) {
        // blue = init .. seed, red_path = seed .. x, closing edge x -> hit (hit is on blue stack)
        std::vector<const Letter*> letters;
        std::size_t hit_pos = 0;
        for (std::size_t i = 0; i < blue.size(); ++i)
            if (blue[i].state == hit) {
                hit_pos = i;
                break;
            }
        LassoWord w;
        w.atoms = a.atoms();
        w.arity = a.arity();
        // letters entering blue[1..hit_pos] form the stem
        for (std::size_t i = 1; i <= hit_pos; ++i)
            w.stem.push_back(blue[i].via->concretize());
        for (std::size_t i = hit_pos + 1; i < blue.size(); ++i)
            w.cycle.push_back(blue[i].via->concretize());
        for (std::size_t i = 1; i < red_path.size(); ++i)
            w.cycle.push_back(red_path[i].via->concretize());
        w.cycle.push_back(closing.concretize());
        return w;
    };

    // The word's first letter is read on the edge leaving the initial state, so the
    // stem/cycle letters are the letters of edges taken along the path.
    std::vector<Frame> blue;
    for (StateId init : a.initial()) {
        if (color[init] != White)
            continue;
        blue.push_back({init, 0, nullptr});
        color[init] = Cyan;
        while (!blue.empty()) {
            Frame& fr = blue.back();
            const auto& es = a.edges(fr.state);
            if (fr.next < es.size()) {
                const Edge& e = es[fr.next++];
                if (color[e.target] == White) {
                    color[e.target] = Cyan;
                    blue.push_back({e.target, 0, &e.letter});
                }
                continue;
            }
            const StateId seed = fr.state;
            if (a.is_accepting(seed)) {
                // red search for a cyan state
                std::vector<Frame> rstack{{seed, 0, nullptr}};
                red[seed] = true;
                while (!rstack.empty()) {
                    Frame& rf = rstack.back();
                    const auto& res = a.edges(rf.state);
                    if (rf.next < res.size()) {
                        const Edge& e = res[rf.next++];
                        if (color[e.target] == Cyan) {
                            return lasso_from(blue, rstack, e.letter, e.target);
                        }
                        if (!red[e.target]) {
                            red[e.target] = true;
                            rstack.push_back({e.target, 0, &e.letter});
                        }
                        continue;
                    }
                    rstack.pop_back();
                }
            }
            color[seed] = Blue;
            blue.pop_back();
        }
    }
    return std::nullopt;
}

namespace {

/// Product of an automaton with the position graph of a lasso word.
struct LassoProduct {
    detail::Adjacency adj;
    std::vector<std::uint32_t> roots;
    std::size_t positions = 0;
};

LassoProduct lasso_product(const TransitionGraph& a, const LassoWord& word)
{
    if (word.arity != a.arity())
        throw ArityMismatch("word arity " + std::to_string(word.arity) + " differs from automaton arity "
                            + std::to_string(a.arity()));
    validate(word);
    const LassoWord w = with_atoms(word, a.atoms());
    LassoProduct p;
    p.positions = w.length();
    const std::size_t L = p.positions;
    p.adj.resize(a.num_states() * L);
    for (StateId q = 0; q < a.num_states(); ++q)
        for (std::size_t i = 0; i < L; ++i) {
            const std::size_t next = i + 1 < L ? i + 1 : w.stem.size();
            const Symbol& sym = w.at(i);
            for (const auto& e : a.edges(q))
                if (e.letter.matches(sym))
                    p.adj[q * L + i].push_back(static_cast<std::uint32_t>(e.target * L + next));
        }
    for (auto q : a.initial())
        p.roots.push_back(static_cast<std::uint32_t>(q * L));
    return p;
}

} // namespace

bool accepts(const BuchiAutomaton& a, const LassoWord& w)
{
    const auto p = lasso_product(a, w);
    const auto scc = detail::tarjan(p.adj, p.roots);
    for (std::size_t v = 0; v < p.adj.size(); ++v) {
        const int c = scc.comp[v];
        if (c >= 0 && scc.nontrivial[c] && a.is_accepting(static_cast<StateId>(v / p.positions)))
            return true;
    }
    return false;
}

bool accepts(const GeneralizedBuchi& g, const LassoWord& w)
{
    const auto p = lasso_product(g, w);
    const auto scc = detail::tarjan(p.adj, p.roots);
    const std::size_t m = g.num_sets();
    std::vector<std::vector<bool>> hits(scc.count, std::vector<bool>(m, false));
    for (std::size_t v = 0; v < p.adj.size(); ++v) {
        const int c = scc.comp[v];
        if (c < 0 || !scc.nontrivial[c])
            continue;
        for (std::size_t i = 0; i < m; ++i)
            if (g.in_set(i, static_cast<StateId>(v / p.positions)))
                hits[c][i] = true;
    }
    for (int c = 0; c < scc.count; ++c)
        if (scc.nontrivial[c] && std::all_of(hits[c].begin(), hits[c].end(), [](bool b) { return b; }))
            return true;
    return false;
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string dot_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

template <class Label, class Shape>
std::string render_dot(const TransitionGraph& a, const std::string& title, Label label, Shape shape)
{
    std::ostringstream os;
    os << "digraph \"" << dot_escape(title) << "\" {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=circle];\n";
    if (a.num_states() == 0) {
        os << "}\n";
        return os.str();
    }
    for (std::size_t i = 0; i < a.initial().size(); ++i) {
        os << "  init" << i << " [shape=point];\n";
        os << "  init" << i << " -> " << a.initial()[i] << ";\n";
    }
    for (StateId s = 0; s < a.num_states(); ++s)
        os << "  " << s << " [label=\"" << dot_escape(label(s)) << "\"" << shape(s) << "];\n";
    for (StateId s = 0; s < a.num_states(); ++s)
        for (const auto& e : a.edges(s))
            os << "  " << s << " -> " << e.target << " [label=\"" << dot_escape(e.letter.to_string(a.atoms()))
               << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace

std::string to_dot(const BuchiAutomaton& a, const std::string& title)
{
    return render_dot(
        a, title, [&](StateId s) { return a.name(s).empty() ? std::to_string(s) : a.name(s); },
        [&](StateId s) { return a.is_accepting(s) ? std::string(", shape=doublecircle") : std::string(); });
}

std::string to_dot(const GeneralizedBuchi& g, const std::string& title)
{
    return render_dot(
        g, title,
        [&](StateId s) {
            std::string l = g.name(s).empty() ? std::to_string(s) : g.name(s);
            std::string sets;
            for (std::size_t i = 0; i < g.num_sets(); ++i)
                if (g.in_set(i, s))
                    sets += (sets.empty() ? "" : ",") + std::to_string(i);
            return sets.empty() ? l : l + " {" + sets + "}";
        },
        [](StateId) { return std::string(); });
}

} // namespace hyperltl
