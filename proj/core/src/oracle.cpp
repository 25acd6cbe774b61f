#include "hyperltl/oracle.hpp"

#include "hyperltl/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hyperltl {

namespace {

/// Positions 0..stem+period-1 of the aligned assignment; the last one wraps to `stem`.
class Evaluator {
public:
    explicit Evaluator(const TraceAssignment& pi) : pi_(pi)
    {
        std::size_t period = 1;
        for (const auto& [var, w] : pi) {
            validate(w);
            if (w.arity != 1)
                throw ArityMismatch("trace for '" + var + "' has arity " + std::to_string(w.arity));
            stem_ = std::max(stem_, w.stem.size());
            period = std::lcm(period, w.cycle.size());
        }
        size_ = stem_ + period;
    }

    bool eval(const Formula& f) { return value(f)[0]; }

private:
    using Row = std::vector<bool>;

    std::size_t succ(std::size_t i) const { return i + 1 < size_ ? i + 1 : stem_; }

    bool atom_at(const std::string& ap, const std::string& var, std::size_t i) const
    {
        auto it = pi_.find(var);
        if (it == pi_.end())
            throw UnboundVariableError(var);
        const LassoWord& w = it->second;
        const auto a = std::find(w.atoms.begin(), w.atoms.end(), ap);
        if (a == w.atoms.end())
            return false;
        return (w.at(i)[0] >> (a - w.atoms.begin())) & 1;
    }

    Row shift(const Row& r) const
    {
        Row out(size_);
        for (std::size_t i = 0; i < size_; ++i)
            out[i] = r[succ(i)];
        return out;
    }

    // x = a | (b & X x), least (lfp = true) or greatest fixpoint
    Row fixpoint(const Row& a, const Row& b, bool least) const
    {
        Row x(size_, !least);
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t k = size_; k-- > 0;) {
                const bool v = a[k] || (b[k] && x[succ(k)]);
                if (v != x[k]) {
                    x[k] = v;
                    changed = true;
                }
            }
        }
        return x;
    }

    Row value(const Formula& f)
    {
        Row r(size_);
        const Row all(size_, true), none(size_, false);
        auto map2 = [&](const Row& a, const Row& b, auto op) {
            Row out(size_);
            for (std::size_t i = 0; i < size_; ++i)
                out[i] = op(a[i], b[i]);
            return out;
        };
        auto neg = [&](const Row& a) {
            Row out(size_);
            for (std::size_t i = 0; i < size_; ++i)
                out[i] = !a[i];
            return out;
        };
        switch (f.op()) {
        case Op::Atom:
            for (std::size_t i = 0; i < size_; ++i)
                r[i] = atom_at(f.ap(), f.var(), i);
            return r;
        case Op::True: return all;
        case Op::False: return none;
        case Op::Not: return neg(value(f.operand()));
        case Op::And: return map2(value(f.lhs()), value(f.rhs()), [](bool a, bool b) { return a && b; });
        case Op::Or: return map2(value(f.lhs()), value(f.rhs()), [](bool a, bool b) { return a || b; });
        case Op::Implies: return map2(value(f.lhs()), value(f.rhs()), [](bool a, bool b) { return !a || b; });
        case Op::Iff: return map2(value(f.lhs()), value(f.rhs()), [](bool a, bool b) { return a == b; });
        case Op::Next: return shift(value(f.operand()));
        case Op::Eventually: return fixpoint(value(f.operand()), all, true);
        case Op::Globally: return fixpoint(none, value(f.operand()), false);
        case Op::Until: return fixpoint(value(f.rhs()), value(f.lhs()), true);
        case Op::WeakUntil: return fixpoint(value(f.rhs()), value(f.lhs()), false);
        case Op::Release: {
            // x = b & (a | X x), greatest
            const Row a = value(f.lhs()), b = value(f.rhs());
            Row x(size_, true);
            for (bool changed = true; changed;) {
                changed = false;
                for (std::size_t k = size_; k-- > 0;) {
                    const bool v = b[k] && (a[k] || x[succ(k)]);
                    if (v != x[k]) {
                        x[k] = v;
                        changed = true;
                    }
                }
            }
            return x;
        }
        case Op::TraceEq:
        case Op::TraceNeq: {
            Row same(size_, true);
            for (std::size_t i = 0; i < size_; ++i)
                for (const auto& ap : f.eq_atoms())
                    if (atom_at(ap, f.var(), i) != atom_at(ap, f.other_var(), i))
                        same[i] = false;
            Row g = fixpoint(none, same, false);
            return f.op() == Op::TraceEq ? g : neg(g);
        }
        case Op::Exists:
        case Op::Forall: throw UnsupportedFragment("quantifier inside a quantifier-free evaluation");
        }
        return r;
    }

    const TraceAssignment& pi_;
    std::size_t stem_ = 0;
    std::size_t size_ = 1;
};

} // namespace

bool eval_qf(const Formula& psi, const TraceAssignment& pi)
{
    if (pi.empty()) {
        // A closed body: evaluate over a dummy trace.
        TraceAssignment dummy;
        LassoWord w;
        w.cycle = {{0}};
        dummy.emplace("", w);
        return Evaluator(dummy).eval(psi);
    }
    return Evaluator(pi).eval(psi);
}

bool eval_closed(const Formula& phi, const std::vector<LassoWord>& traces, const TraceAssignment& pi)
{
    if (!phi.is_quantifier())
        return eval_qf(phi, pi);
    const bool exists = phi.op() == Op::Exists;
    TraceAssignment ext = pi;
    for (const auto& t : traces) {
        ext[phi.var()] = t;
        if (eval_closed(phi.body(), traces, ext) == exists)
            return exists;
    }
    return !exists;
}

std::vector<LassoWord> enumerate_lassos(const KripkeStructure& k, std::size_t stem_bound, std::size_t cycle_bound,
                                        std::size_t max_paths)
{
    if (cycle_bound == 0)
        throw ValidationError("cycle bound must be positive");
    k.validate();
    std::vector<AtomSet> label(k.num_states(), 0);
    for (std::size_t s = 0; s < k.num_states(); ++s)
        for (std::size_t i = 0; i < k.aps.size(); ++i)
            if (k.labels[s].count(k.aps[i]))
                label[s] |= AtomSet{1} << i;

    std::set<std::pair<std::vector<AtomSet>, std::vector<AtomSet>>> seen;
    std::vector<LassoWord> out;
    std::vector<std::size_t> path{k.initial};
    std::size_t explored = 0;
    const std::size_t max_len = stem_bound + cycle_bound;

    auto close = [&]() {
        const std::size_t len = path.size();
        const std::size_t last = path.back();
        for (std::size_t st = 0; st < len; ++st) {
            if (st > stem_bound || len - st > cycle_bound)
                continue;
            const auto& succ = k.successors[last];
            if (std::find(succ.begin(), succ.end(), path[st]) == succ.end())
                continue;
            LassoWord w;
            w.atoms = k.aps;
            for (std::size_t i = 0; i < len; ++i)
                (i < st ? w.stem : w.cycle).push_back({label[path[i]]});
            w = canonical(w);
            std::vector<AtomSet> a, b;
            for (auto& s : w.stem)
                a.push_back(s[0]);
            for (auto& s : w.cycle)
                b.push_back(s[0]);
            if (seen.emplace(std::move(a), std::move(b)).second)
                out.push_back(std::move(w));
        }
    };
    auto dfs = [&](auto& self) -> void {
        if (++explored > max_paths)
            throw ResourceLimitExceeded("lasso enumeration exceeded " + std::to_string(max_paths) + " paths");
        close();
        if (path.size() >= max_len)
            return;
        for (auto t : k.successors[path.back()]) {
            path.push_back(t);
            self(self);
            path.pop_back();
        }
    };
    dfs(dfs);
    return out;
}

bool is_trace_of(const KripkeStructure& k, const LassoWord& w)
{
    validate(w);
    if (w.arity != 1)
        return false;
    k.validate();
    // propositions shared by K and w: (index in K.aps, index in w.atoms)
    std::vector<std::pair<std::size_t, std::size_t>> shared;
    for (std::size_t i = 0; i < k.aps.size(); ++i) {
        auto it = std::find(w.atoms.begin(), w.atoms.end(), k.aps[i]);
        if (it != w.atoms.end())
            shared.emplace_back(i, static_cast<std::size_t>(it - w.atoms.begin()));
    }
    const std::size_t L = w.length();
    auto matches = [&](std::size_t s, std::size_t pos) {
        const AtomSet sym = w.at(pos)[0];
        for (auto [ki, wi] : shared)
            if (k.labels[s].count(k.aps[ki]) != ((sym >> wi) & 1))
                return false;
        return true;
    };
    auto next_pos = [&](std::size_t pos) { return pos + 1 < L ? pos + 1 : w.stem.size(); };
    auto id = [&](std::size_t s, std::size_t pos) { return s * L + pos; };

    if (!matches(k.initial, 0))
        return false;
    // reachable product nodes
    const std::size_t N = k.num_states() * L;
    std::vector<bool> reach(N, false);
    std::vector<std::size_t> stack{id(k.initial, 0)};
    reach[stack[0]] = true;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        const std::size_t s = v / L, pos = v % L, np = next_pos(pos);
        for (auto t : k.successors[s])
            if (matches(t, np) && !reach[id(t, np)]) {
                reach[id(t, np)] = true;
                stack.push_back(id(t, np));
            }
    }
    // an infinite path exists iff the reachable part has a cycle: peel off sinks
    std::vector<std::size_t> outdeg(N, 0);
    std::vector<std::vector<std::size_t>> preds(N);
    for (std::size_t v = 0; v < N; ++v) {
        if (!reach[v])
            continue;
        const std::size_t s = v / L, np = next_pos(v % L);
        for (auto t : k.successors[s])
            if (matches(t, np)) {
                ++outdeg[v];
                preds[id(t, np)].push_back(v);
            }
    }
    std::vector<bool> removed(N, false);
    std::vector<std::size_t> sinks;
    for (std::size_t v = 0; v < N; ++v)
        if (reach[v] && outdeg[v] == 0)
            sinks.push_back(v);
    while (!sinks.empty()) {
        const std::size_t v = sinks.back();
        sinks.pop_back();
        removed[v] = true;
        for (auto p : preds[v])
            if (--outdeg[p] == 0)
                sinks.push_back(p);
    }
    return !removed[id(k.initial, 0)];
}

} // namespace hyperltl
