// Büchi complementation.
//
// Safety inputs (every trimmed state accepting) use the subset construction: a word
// is rejected iff some prefix has no run, i.e. the subset becomes empty.
//
// General inputs use the rank-based construction with tight level rankings. A
// macrostate is either a plain subset (phase 1, guessing when ranks become tight)
// or (S, f, O, i): f a tight ranking of S with odd maximum r, i an even rank and O
// the states of rank i still owing a visit to an odd rank. O is reset whenever it
// empties, cycling i through 0, 2, ..., r-1; those resets are the accepting states.

#include "hyperltl/automata.hpp"
#include "hyperltl/error.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>

namespace hyperltl {

namespace {

constexpr std::uint8_t absent = 0xFF;

struct Macro {
    bool ranked = false;
    std::vector<std::uint8_t> f; // per input state: absent, or rank (0 in phase 1)
    std::vector<bool> owing;     // O, ranked only
    std::uint8_t i = 0;
    std::uint8_t r = 0;

    bool empty() const
    {
        return std::all_of(f.begin(), f.end(), [](std::uint8_t x) { return x == absent; });
    }
    bool accepting() const
    {
        if (!ranked)
            return empty();
        return std::none_of(owing.begin(), owing.end(), [](bool b) { return b; });
    }
    std::string key() const
    {
        std::string k;
        k.reserve(f.size() * 2 + 3);
        k.push_back(ranked ? 'r' : 's');
        k.push_back(static_cast<char>(i));
        k.push_back(static_cast<char>(r));
        for (std::size_t q = 0; q < f.size(); ++q) {
            k.push_back(static_cast<char>(f[q]));
            if (ranked)
                k.push_back(owing[q] ? '1' : '0');
        }
        return k;
    }
    std::string name() const
    {
        std::string s = ranked ? "[" : "{";
        bool first = true;
        for (std::size_t q = 0; q < f.size(); ++q) {
            if (f[q] == absent)
                continue;
            s += first ? "" : ",";
            first = false;
            s += std::to_string(q);
            if (ranked) {
                s += ":" + std::to_string(f[q]);
                if (owing[q])
                    s += "*";
            }
        }
        if (ranked)
            s += " i=" + std::to_string(i) + "]";
        else
            s += "}";
        return s;
    }
};

class Engine {
public:
    Engine(const BuchiAutomaton& a, const ComplementOptions& opts)
        : a_(a), n_(a.arity()), m_(a.atoms().size()), opts_(opts)
    {
        safety_ = a.all_accepting();
        const std::size_t bits = n_ * m_;
        if (bits >= 63 || (std::size_t{1} << bits) > opts_.max_alphabet)
            throw ResourceLimitExceeded("complement alphabet of 2^" + std::to_string(bits)
                                        + " symbols exceeds the limit of " + std::to_string(opts_.max_alphabet));
        alphabet_ = std::size_t{1} << bits;
        if (!safety_ && 2 * a.num_states() > 250)
            throw ResourceLimitExceeded("rank-based complement of " + std::to_string(a.num_states())
                                        + " states exceeds the rank encoding");
    }

    bool safety() const { return safety_; }
    std::size_t alphabet() const { return alphabet_; }
    std::size_t max_rank() const { return max_rank_; }

    Symbol symbol(std::size_t idx) const
    {
        Symbol s(n_);
        const AtomSet mask = m_ == 0 ? 0 : ((AtomSet{1} << m_) - 1);
        for (std::size_t c = 0; c < n_; ++c)
            s[c] = (idx >> (c * m_)) & mask;
        return s;
    }

    Macro initial() const
    {
        Macro m;
        m.f.assign(a_.num_states(), absent);
        for (auto q : a_.initial())
            m.f[q] = 0;
        return m;
    }

    std::vector<Macro> successors(const Macro& cur, const Symbol& sigma)
    {
        const std::size_t N = a_.num_states();
        // bound[q'] = min rank of a predecessor (phase 1: presence only)
        std::vector<std::uint8_t> bound(N, absent);
        for (StateId q = 0; q < N; ++q) {
            if (cur.f[q] == absent)
                continue;
            for (const auto& e : a_.edges(q))
                if (e.letter.matches(sigma))
                    bound[e.target] = std::min(bound[e.target], cur.ranked ? cur.f[q] : std::uint8_t{0});
        }

        std::vector<Macro> out;
        if (!cur.ranked) {
            Macro next;
            next.f = bound;
            const bool dead = next.empty();
            out.push_back(next);
            if (safety_ || dead)
                return out;
            // jump into the ranked phase with any tight ranking
            std::size_t free_states = 0;
            for (StateId q = 0; q < N; ++q)
                if (bound[q] != absent && !a_.is_accepting(q))
                    ++free_states;
            for (std::size_t r = 1; r + 1 <= 2 * free_states; r += 2) {
                std::vector<std::uint8_t> cap(N, absent);
                for (StateId q = 0; q < N; ++q)
                    if (bound[q] != absent)
                        cap[q] = static_cast<std::uint8_t>(r);
                for_each_tight(cap, static_cast<std::uint8_t>(r), [&](const std::vector<std::uint8_t>& f) {
                    Macro m;
                    m.ranked = true;
                    m.f = f;
                    m.r = static_cast<std::uint8_t>(r);
                    m.i = 0;
                    m.owing.assign(N, false);
                    out.push_back(std::move(m));
                });
            }
            return out;
        }

        if (std::all_of(bound.begin(), bound.end(), [](std::uint8_t x) { return x == absent; }))
            return out;
        // owing successors: δ(O, σ)
        std::vector<bool> post_owing(N, false);
        const bool reset = std::none_of(cur.owing.begin(), cur.owing.end(), [](bool b) { return b; });
        if (!reset)
            for (StateId q = 0; q < N; ++q)
                if (cur.owing[q])
                    for (const auto& e : a_.edges(q))
                        if (e.letter.matches(sigma))
                            post_owing[e.target] = true;
        const std::uint8_t i_next = reset ? static_cast<std::uint8_t>((cur.i + 2) % (cur.r + 1)) : cur.i;

        for_each_tight(bound, cur.r, [&](const std::vector<std::uint8_t>& f) {
            Macro m;
            m.ranked = true;
            m.f = f;
            m.r = cur.r;
            m.i = i_next;
            m.owing.assign(N, false);
            for (StateId q = 0; q < N; ++q)
                if (f[q] == i_next && (reset || post_owing[q]))
                    m.owing[q] = true;
            out.push_back(std::move(m));
        });
        return out;
    }

private:
    // Calls fn for every ranking f <= cap (F-states even) whose maximum is r and
    // that uses every odd rank 1..r.
    template <class Fn>
    void for_each_tight(const std::vector<std::uint8_t>& cap, std::uint8_t r, Fn fn)
    {
        max_rank_ = std::max<std::size_t>(max_rank_, r);
        const std::size_t N = cap.size();
        std::vector<StateId> present;
        for (StateId q = 0; q < N; ++q)
            if (cap[q] != absent)
                present.push_back(q);
        std::vector<std::uint8_t> f(N, absent);
        std::vector<int> used(static_cast<std::size_t>(r) + 1, 0);
        const std::size_t odd_total = (r + 1) / 2;
        std::size_t odd_covered = 0;

        auto rec = [&](auto& self, std::size_t k) -> void {
            if (odd_total - odd_covered > present.size() - k)
                return;
            if (k == present.size()) {
                if (odd_covered == odd_total)
                    fn(f);
                return;
            }
            const StateId q = present[k];
            const std::uint8_t hi = std::min(cap[q], r);
            const bool acc = a_.is_accepting(q);
            for (int v = hi; v >= 0; --v) {
                if (acc && (v & 1))
                    continue;
                f[q] = static_cast<std::uint8_t>(v);
                const bool fresh = (v & 1) && used[v]++ == 0;
                if (!(v & 1))
                    ++used[v];
                if (fresh)
                    ++odd_covered;
                self(self, k + 1);
                if (fresh)
                    --odd_covered;
                --used[v];
            }
            f[q] = absent;
        };
        rec(rec, 0);
    }

    const BuchiAutomaton& a_;
    std::size_t n_;
    std::size_t m_;
    ComplementOptions opts_;
    bool safety_ = false;
    std::size_t alphabet_ = 1;
    std::size_t max_rank_ = 0;
};

BuchiAutomaton universal(std::size_t arity, const std::vector<std::string>& atoms)
{
    BuchiAutomaton u(arity, atoms);
    const StateId s = u.add_state(true, "univ");
    u.add_edge(s, Letter(arity), s);
    u.add_initial(s);
    return u;
}

void fill_stats(ComplementStats* stats, const BuchiAutomaton& input, const Engine* e, std::size_t macros)
{
    if (!stats)
        return;
    stats->input_states = input.num_states();
    stats->alphabet = e ? e->alphabet() : 0;
    stats->macrostates = macros;
    stats->max_rank = e ? e->max_rank() : 0;
    stats->safety_shortcut = e ? e->safety() : false;
}

} // namespace

BuchiAutomaton complement(const BuchiAutomaton& input, const ComplementOptions& opts, ComplementStats* stats)
{
    const BuchiAutomaton a = trim(input);
    if (a.num_states() == 0) {
        fill_stats(stats, a, nullptr, 1);
        return universal(input.arity(), input.atoms());
    }
    Engine engine(a, opts);

    BuchiAutomaton out(a.arity(), a.atoms());
    std::unordered_map<std::string, StateId> index;
    std::vector<Macro> macros;
    std::deque<StateId> todo;
    auto intern = [&](Macro m) {
        auto key = m.key();
        auto it = index.find(key);
        if (it != index.end())
            return it->second;
        if (macros.size() >= opts.max_states)
            throw ResourceLimitExceeded("complement exceeded " + std::to_string(opts.max_states) + " states");
        const StateId id = out.add_state(m.accepting(), m.name());
        index.emplace(std::move(key), id);
        macros.push_back(std::move(m));
        todo.push_back(id);
        return id;
    };
    out.add_initial(intern(engine.initial()));

    while (!todo.empty()) {
        const StateId s = todo.front();
        todo.pop_front();
        for (std::size_t idx = 0; idx < engine.alphabet(); ++idx) {
            const Symbol sigma = engine.symbol(idx);
            const Letter letter = Letter::exactly(sigma, a.atoms().size());
            for (auto& m : engine.successors(macros[s], sigma))
                out.add_edge(s, letter, intern(std::move(m)));
        }
    }
    fill_stats(stats, a, &engine, macros.size());
    return out;
}

BuchiAutomaton complement_intersect(const BuchiAutomaton& input, const BuchiAutomaton& guide,
                                    const ComplementOptions& opts, ComplementStats* stats)
{
    if (input.arity() != guide.arity())
        throw ArityMismatch("complement guide arity " + std::to_string(guide.arity()) + " differs from "
                            + std::to_string(input.arity()));
    if (!guide.all_accepting())
        return intersect(complement(input, opts, stats), guide);

    const BuchiAutomaton a = trim(input);
    if (a.num_states() == 0) {
        fill_stats(stats, a, nullptr, 1);
        return intersect(universal(input.arity(), input.atoms()), guide);
    }
    Engine engine(a, opts);
    const std::size_t n = a.arity();

    // union atom list: guide atoms first
    std::vector<std::string> atoms = guide.atoms();
    for (const auto& x : a.atoms())
        if (std::find(atoms.begin(), atoms.end(), x) == atoms.end())
            atoms.push_back(x);
    if (atoms.size() > max_atoms)
        throw Error("more than 64 relevant atoms");
    std::vector<int> guide_pos(a.atoms().size(), -1); // Q atom -> guide atom index
    std::vector<int> union_pos(a.atoms().size(), -1); // Q atom -> union index
    for (std::size_t j = 0; j < a.atoms().size(); ++j) {
        guide_pos[j] = guide.atom_index(a.atoms()[j]);
        union_pos[j] = static_cast<int>(std::find(atoms.begin(), atoms.end(), a.atoms()[j]) - atoms.begin());
    }
    const std::size_t m = a.atoms().size();

    BuchiAutomaton out(n, atoms);
    std::unordered_map<std::string, StateId> macro_index;
    std::vector<Macro> macros;
    auto macro_id = [&](Macro mc) {
        auto key = mc.key();
        auto it = macro_index.find(key);
        if (it != macro_index.end())
            return it->second;
        const auto id = static_cast<StateId>(macros.size());
        macro_index.emplace(std::move(key), id);
        macros.push_back(std::move(mc));
        return id;
    };

    std::unordered_map<std::uint64_t, StateId> index;
    std::deque<std::pair<StateId, StateId>> todo;
    auto intern = [&](StateId mc, StateId g) {
        const std::uint64_t key = (std::uint64_t{mc} << 32) | g;
        auto it = index.find(key);
        if (it != index.end())
            return it->second;
        if (index.size() >= opts.max_states)
            throw ResourceLimitExceeded("complement exceeded " + std::to_string(opts.max_states) + " states");
        const std::string gname = guide.name(g).empty() ? std::to_string(g) : guide.name(g);
        const StateId id = out.add_state(macros[mc].accepting(), macros[mc].name() + "," + gname);
        index.emplace(key, id);
        todo.emplace_back(mc, g);
        return id;
    };

    const StateId init = macro_id(engine.initial());
    for (auto g : guide.initial())
        out.add_initial(intern(init, g));

    std::unordered_map<std::uint64_t, std::vector<StateId>> succ_cache;
    while (!todo.empty()) {
        const auto [mc, g] = todo.front();
        todo.pop_front();
        const StateId s = index.at((std::uint64_t{mc} << 32) | g);
        for (const auto& ge : guide.edges(g)) {
            // enumerate the concrete Q-symbols compatible with the guide letter
            std::size_t fixed = 0, free_mask = 0;
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t j = 0; j < m; ++j) {
                    const std::size_t bit = c * m + j;
                    const int gp = guide_pos[j];
                    if (gp >= 0 && (ge.letter.components[c].pos >> gp & 1))
                        fixed |= std::size_t{1} << bit;
                    else if (gp < 0 || !(ge.letter.components[c].neg >> gp & 1))
                        free_mask |= std::size_t{1} << bit;
                }
            std::size_t sub = free_mask;
            while (true) {
                const std::size_t idx = fixed | sub;
                const Symbol sigma = engine.symbol(idx);
                const std::uint64_t ckey = (std::uint64_t{mc} << 32) ^ idx;
                auto it = succ_cache.find(ckey);
                if (it == succ_cache.end()) {
                    std::vector<StateId> ids;
                    for (auto& x : engine.successors(macros[mc], sigma))
                        ids.push_back(macro_id(std::move(x)));
                    it = succ_cache.emplace(ckey, std::move(ids)).first;
                }
                if (!it->second.empty()) {
                    Letter l(n);
                    for (std::size_t c = 0; c < n; ++c) {
                        l.components[c] = ge.letter.components[c]; // guide atoms keep their positions
                        for (std::size_t j = 0; j < m; ++j) {
                            const AtomSet bit = AtomSet{1} << union_pos[j];
                            if (sigma[c] >> j & 1)
                                l.components[c].pos |= bit;
                            else
                                l.components[c].neg |= bit;
                        }
                    }
                    const std::vector<StateId> targets = it->second;
                    for (auto t : targets)
                        out.add_edge(s, l, intern(t, ge.target));
                }
                if (sub == 0)
                    break;
                sub = (sub - 1) & free_mask;
            }
        }
    }
    fill_stats(stats, a, &engine, macros.size());
    return out;
}

} // namespace hyperltl
