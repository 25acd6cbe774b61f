#include "hyperltl/checker.hpp"

#include "hyperltl/error.hpp"
#include "hyperltl/oracle.hpp"
#include "hyperltl/tableau.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace hyperltl {

std::string Verdict::to_string() const
{
    std::string s = std::string("VERDICT: ") + (holds() ? "holds" : "fails") + "\n";
    for (const auto& n : notes)
        s += "NOTE: " + n + "\n";
    for (const auto& w : warnings)
        s += "WARNING: " + w + "\n";
    for (std::size_t i = 0; i < traces.size(); ++i)
        s += "TRACE " + trace_vars.at(i) + ": " + traces[i].to_string() + "\n";
    return s;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Context {
    const KripkeStructure& k;
    const CheckOptions& opts;
    Verdict& verdict;

    void stage(const std::string& name, const BuchiAutomaton& a)
    {
        verdict.stages.push_back({name, size_of(a)});
        if (opts.on_stage)
            opts.on_stage(name, a);
    }
};

std::vector<std::string> sorted_atoms(const Formula& f)
{
    const auto s = atoms_of(f);
    return {s.begin(), s.end()};
}

std::vector<std::string> missing_atoms(const KripkeStructure& k, const std::vector<std::string>& atoms)
{
    std::vector<std::string> out;
    for (const auto& a : atoms)
        if (std::find(k.aps.begin(), k.aps.end(), a) == k.aps.end())
            out.push_back(a);
    return out;
}

void warn_missing(Verdict& v, const std::vector<std::string>& missing)
{
    if (missing.empty())
        return;
    std::string list;
    for (const auto& a : missing)
        list += (list.empty() ? "" : ", ") + a;
    v.warnings.push_back("propositions not in the structure are unconstrained: " + list);
}

LassoWord minimize(const BuchiAutomaton& r, LassoWord w)
{
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < w.stem.size() && !changed; ++i) {
            LassoWord c = w;
            c.stem.erase(c.stem.begin() + static_cast<std::ptrdiff_t>(i));
            if (accepts(r, c)) {
                w = std::move(c);
                changed = true;
            }
        }
        for (std::size_t i = 0; i < w.cycle.size() && w.cycle.size() > 1 && !changed; ++i) {
            LassoWord c = w;
            c.cycle.erase(c.cycle.begin() + static_cast<std::ptrdiff_t>(i));
            if (accepts(r, c)) {
                w = std::move(c);
                changed = true;
            }
        }
    }
    return w;
}

void fill_traces(Verdict& v, const BuchiAutomaton& r, LassoWord witness, const CheckOptions& opts,
                 const std::vector<std::string>& keep_atoms)
{
    if (opts.minimize)
        witness = minimize(r, std::move(witness));
    for (auto& t : unzip(witness))
        v.traces.push_back(canonical(with_atoms(t, keep_atoms)));
}

Verdict universal_impl(const KripkeStructure& k, const Prenex& p, const CheckOptions& opts)
{
    Verdict v;
    Context ctx{k, opts, v};
    const auto start = Clock::now();
    const std::size_t n = p.prefix.size();
    for (const auto& q : p.prefix)
        v.trace_vars.push_back(q.var);

    const auto atoms = sorted_atoms(p.body);
    const auto extra = missing_atoms(k, atoms);
    warn_missing(v, extra);

    const BuchiAutomaton ak = kripke_to_buchi(k, extra);
    ctx.stage("kripke", ak);
    const BuchiAutomaton akn = self_compose(ak, n);
    ctx.stage("self-composition", akn);
    const BuchiAutomaton aneg = build_formula_automaton(to_nnf(Formula::negation(p.body)), v.trace_vars, atoms);
    ctx.stage("formula", aneg);
    const BuchiAutomaton product = intersect(akn, aneg);
    ctx.stage("product", product);

    if (auto w = is_empty(product)) {
        v.outcome = Verdict::Outcome::Fails;
        fill_traces(v, product, std::move(*w), opts, ak.atoms());
    }
    v.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return v;
}

Verdict forall_exists_impl(const KripkeStructure& k, const Prenex& p, std::size_t leading, const CheckOptions& opts)
{
    Verdict v;
    Context ctx{k, opts, v};
    const auto start = Clock::now();
    const std::size_t n = p.prefix.size();
    std::vector<std::string> vars;
    for (const auto& q : p.prefix)
        vars.push_back(q.var);
    v.trace_vars.assign(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(leading));

    const auto atoms = sorted_atoms(p.body);
    const auto extra = missing_atoms(k, atoms);
    warn_missing(v, extra);

    const BuchiAutomaton ak_full = kripke_to_buchi(k, extra);
    const BuchiAutomaton ak = restrict_atoms(ak_full, atoms);
    ctx.stage("kripke", ak);
    const BuchiAutomaton akn = self_compose(ak, n);
    ctx.stage("self-composition", akn);
    const BuchiAutomaton apsi = build_formula_automaton(to_nnf(p.body), vars, atoms);
    ctx.stage("formula", apsi);
    const BuchiAutomaton product = intersect(akn, apsi);
    ctx.stage("product", product);
    const BuchiAutomaton projected = project(product, leading);
    ctx.stage("projection", projected);
    const BuchiAutomaton reduced = simulation_reduce(bisimulation_quotient(trim(projected)));
    ctx.stage("reduced", reduced);
    const BuchiAutomaton guide = self_compose(ak_full, leading);
    ctx.stage("guide", guide);
    const BuchiAutomaton violating = complement_intersect(reduced, guide, opts.complement, &v.complement);
    ctx.stage("complement-product", violating);

    if (auto w = is_empty(violating)) {
        v.outcome = Verdict::Outcome::Fails;
        fill_traces(v, violating, std::move(*w), opts, ak_full.atoms());
    }
    v.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return v;
}

Prenex checkable(const Formula& phi)
{
    const auto fv = free_variables(phi);
    if (!fv.empty())
        throw UnboundVariableError(*fv.begin());
    Prenex p = split_prenex(phi);
    if (p.prefix.empty())
        throw UnsupportedFragment("formula has no trace quantifier");
    return p;
}

} // namespace

Verdict check_universal(const KripkeStructure& k, const Formula& phi, const CheckOptions& opts)
{
    k.validate();
    const Prenex p = checkable(phi);
    for (const auto& q : p.prefix)
        if (q.kind != Quantifier::Kind::Forall)
            throw UnsupportedFragment("check_universal needs a purely universal prefix");
    return universal_impl(k, p, opts);
}

Verdict check_forall_exists(const KripkeStructure& k, const Formula& phi, const CheckOptions& opts)
{
    k.validate();
    const Prenex p = checkable(phi);
    const FragmentClass fc = classify(phi);
    if (fc.kind != FragmentClass::Kind::ForallExists && fc.kind != FragmentClass::Kind::Universal)
        throw UnsupportedFragment("check_forall_exists needs a forall*exists* prefix, got " + fc.to_string());
    return forall_exists_impl(k, p, fc.leading, opts);
}

Verdict check(const KripkeStructure& k, const Formula& phi, const CheckOptions& opts)
{
    k.validate();
    const Prenex p = checkable(phi);
    const FragmentClass fc = classify(phi);
    switch (fc.kind) {
    case FragmentClass::Kind::Universal: return universal_impl(k, p, opts);
    case FragmentClass::Kind::ForallExists: return forall_exists_impl(k, p, fc.leading, opts);
    case FragmentClass::Kind::ExistsForall: {
        // K ⊨ ∃..∀.. ψ  iff  not K ⊨ ∀..∃.. ¬ψ
        const Formula dual = negate(phi);
        const Prenex dp = split_prenex(dual);
        Verdict v = fc.trailing == 0 ? universal_impl(k, dp, opts) : forall_exists_impl(k, dp, fc.leading, opts);
        v.notes.push_back("decided by checking the negated formula " + dual.to_string() + " and inverting");
        if (v.holds()) {
            v.outcome = Verdict::Outcome::Fails;
        } else {
            v.outcome = Verdict::Outcome::Holds;
            v.traces_are_witness = true;
        }
        return v;
    }
    case FragmentClass::Kind::QuantifierFree: throw UnsupportedFragment("formula has no trace quantifier");
    case FragmentClass::Kind::Unsupported: break;
    }
    throw UnsupportedFragment("formula with " + std::to_string(fc.alternations)
                              + " quantifier alternations is outside the supported fragment");
}

ValidationReport validate_counterexample(const KripkeStructure& k, const Formula& phi, const Verdict& v,
                                         const ValidationOptions& opts)
{
    ValidationReport r;
    const Prenex p = split_prenex(phi);
    if (v.traces.empty()) {
        r.ok = !v.holds() || !v.traces_are_witness;
        r.message = "no traces to validate";
        return r;
    }
    const std::size_t lead = v.traces.size();
    if (lead > p.prefix.size() || v.trace_vars.size() != lead) {
        r.message = "trace count does not match the quantifier prefix";
        return r;
    }
    const bool witness = v.traces_are_witness;
    const auto lead_kind = witness ? Quantifier::Kind::Exists : Quantifier::Kind::Forall;
    TraceAssignment pi;
    for (std::size_t i = 0; i < lead; ++i) {
        if (p.prefix[i].kind != lead_kind || p.prefix[i].var != v.trace_vars[i]) {
            r.message = "trace variable " + v.trace_vars[i] + " does not match the prefix";
            return r;
        }
        if (!is_trace_of(k, v.traces[i])) {
            r.message = "trace for " + v.trace_vars[i] + " is not a trace of the structure";
            return r;
        }
        pi[v.trace_vars[i]] = v.traces[i];
    }
    const std::vector<Quantifier> rest(p.prefix.begin() + static_cast<std::ptrdiff_t>(lead), p.prefix.end());
    const Formula remainder = join_prenex(rest, p.body);
    const bool expected = witness; // witness: remainder holds; counterexample: remainder fails

    if (rest.empty()) {
        r.ok = eval_qf(p.body, pi) == expected;
        r.message = r.ok ? "oracle confirms the traces" : "oracle disagrees on the reported traces";
        return r;
    }

    // Bounded search over K-lassos for the inner block.
    std::size_t bound = std::max<std::size_t>(1, k.num_states() * opts.factor);
    std::vector<LassoWord> lassos;
    while (true) {
        try {
            lassos = enumerate_lassos(k, bound, bound, opts.max_paths);
            break;
        } catch (const ResourceLimitExceeded&) {
            if (bound == 1)
                throw;
            --bound;
        }
    }
    r.exhaustive = false;
    r.ok = eval_closed(remainder, lassos, pi) == expected;
    r.message = std::string(r.ok ? "bounded evidence" : "oracle disagrees") + " over " + std::to_string(lassos.size())
        + " lassos with stem and cycle <= " + std::to_string(bound);
    return r;
}

} // namespace hyperltl
