#include "hyperltl/policies.hpp"

#include "hyperltl/error.hpp"

#include <algorithm>
#include <set>

namespace hyperltl {

namespace {

bool is_true(const Formula& f) { return f.op() == Op::True; }
bool is_false(const Formula& f) { return f.op() == Op::False; }

Formula conj(const std::vector<Formula>& parts)
{
    std::vector<Formula> kept;
    for (const auto& f : parts) {
        if (is_false(f))
            return Formula::falsity();
        if (!is_true(f))
            kept.push_back(f);
    }
    if (kept.empty())
        return Formula::truth();
    Formula out = kept[0];
    for (std::size_t i = 1; i < kept.size(); ++i)
        out = Formula::conjunction(out, kept[i]);
    return out;
}

Formula disj(const std::vector<Formula>& parts)
{
    std::vector<Formula> kept;
    for (const auto& f : parts) {
        if (is_true(f))
            return Formula::truth();
        if (!is_false(f))
            kept.push_back(f);
    }
    if (kept.empty())
        return Formula::falsity();
    Formula out = kept[0];
    for (std::size_t i = 1; i < kept.size(); ++i)
        out = Formula::disjunction(out, kept[i]);
    return out;
}

Formula neg(const Formula& f)
{
    if (is_true(f))
        return Formula::falsity();
    if (is_false(f))
        return Formula::truth();
    return Formula::negation(f);
}

Formula imp(const Formula& a, const Formula& b)
{
    if (is_true(a))
        return b;
    if (is_false(a) || is_true(b))
        return Formula::truth();
    return Formula::implies(a, b);
}

Formula glob(const Formula& f) { return is_true(f) || is_false(f) ? f : Formula::globally(f); }
Formula nxt(const Formula& f) { return is_true(f) || is_false(f) ? f : Formula::next(f); }

/// ⋀_{a ∈ atoms} (a[x] <-> a[y])
Formula agree(const AtomList& atoms, const std::string& x, const std::string& y)
{
    std::vector<Formula> parts;
    for (const auto& a : atoms)
        parts.push_back(Formula::iff(Formula::atom(a, x), Formula::atom(a, y)));
    return conj(parts);
}

Formula prefix(const std::vector<std::pair<bool, std::string>>& quants, Formula body)
{
    for (auto it = quants.rbegin(); it != quants.rend(); ++it)
        body = it->first ? Formula::forall(it->second, body) : Formula::exists(it->second, body);
    return body;
}

void require_disjoint(const AtomList& a, const AtomList& b, const std::string& what)
{
    for (const auto& x : a)
        if (std::find(b.begin(), b.end(), x) != b.end())
            throw ValidationError(what + " share the proposition '" + x + "'");
}

} // namespace

Formula noninference(const AtomList& high_in, const AtomList& low, std::vector<std::string>* warnings)
{
    require_disjoint(high_in, low, "high and low sets");
    if (low.empty() && warnings)
        warnings->push_back("empty low set: noninference only requires a trace without high input");
    std::vector<Formula> lambda;
    for (const auto& h : high_in)
        lambda.push_back(Formula::negation(Formula::atom(h, "q")));
    const Formula body = conj({glob(conj(lambda)), glob(agree(low, "p", "q"))});
    return prefix({{true, "p"}, {false, "q"}}, body);
}

Formula observational_determinism(const AtomList& low_in, const AtomList& low_out)
{
    const Formula body = imp(agree(low_in, "p", "q"), glob(agree(low_out, "p", "q")));
    return prefix({{true, "p"}, {true, "q"}}, body);
}

Formula generalized_noninterference(const AtomList& high_in, const AtomList& low)
{
    require_disjoint(high_in, low, "high and low sets");
    const Formula body = conj({glob(agree(high_in, "p", "r")), glob(agree(low, "q", "r"))});
    return prefix({{true, "p"}, {true, "q"}, {false, "r"}}, body);
}

Formula declassification_password(const AtomList& low_in, const std::string& pw, const AtomList& low_out)
{
    const Formula ante = conj({agree(low_in, "p", "q"), nxt(agree({pw}, "p", "q"))});
    const Formula body = imp(ante, glob(agree(low_out, "p", "q")));
    return prefix({{true, "p"}, {true, "q"}}, body);
}

Formula quantitative_ni(std::size_t n_bits, const AtomList& low_in, const AtomList& low_out,
                        std::vector<std::string>* warnings)
{
    if (n_bits > 5)
        throw ValidationError("quantitative noninterference with more than 5 bits needs over 33 quantifiers");
    if (n_bits >= 3 && warnings)
        warnings->push_back("quantitative noninterference with " + std::to_string(n_bits) + " bits uses "
                            + std::to_string((std::size_t{1} << n_bits) + 1) + " trace quantifiers");
    const std::size_t count = (std::size_t{1} << n_bits) + 1;
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < count; ++i)
        vars.push_back("p" + std::to_string(i));

    std::vector<Formula> parts;
    for (std::size_t i = 1; i < count; ++i)
        parts.push_back(glob(agree(low_in, vars[i], vars[0])));
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j)
            parts.push_back(neg(glob(agree(low_out, vars[i], vars[j]))));

    std::vector<std::pair<bool, std::string>> quants;
    for (const auto& v : vars)
        quants.emplace_back(true, v);
    return prefix(quants, neg(conj(parts)));
}

Formula gm_noninterference(const AtomList& high_users, const AtomList& low_users, const StateMachine& signature,
                           std::vector<std::string>* warnings)
{
    const std::set<std::string> users(signature.users.begin(), signature.users.end());
    for (const auto* group : {&high_users, &low_users})
        for (const auto& u : *group)
            if (!users.count(u))
                throw ValidationError("'" + u + "' is not a user of the state machine");
    for (const auto& u : high_users)
        if (std::find(low_users.begin(), low_users.end(), u) != low_users.end() && warnings)
            warnings->push_back("user '" + u + "' is both high and low");

    AtomList low_inputs, low_outputs;
    std::vector<Formula> high_step;
    for (const auto& u : signature.users) {
        const bool high = std::find(high_users.begin(), high_users.end(), u) != high_users.end();
        for (const auto& c : signature.commands) {
            if (high)
                high_step.push_back(Formula::atom(input_atom(u, c), "p"));
            else
                low_inputs.push_back(input_atom(u, c));
        }
    }
    for (const auto& u : signature.users)
        if (std::find(low_users.begin(), low_users.end(), u) != low_users.end())
            for (const auto& v : signature.outputs)
                low_outputs.push_back(output_atom(u, v));

    const Formula eq_in = agree(low_inputs, "p", "q");
    const Formula eq_out = agree(low_outputs, "p", "q");
    const Formula guarded = imp(conj({disj(high_step), glob(nxt(eq_in))}), glob(nxt(eq_out)));
    const Formula body = Formula::weak_until(eq_in, conj({neg(eq_in), guarded}));
    return prefix({{true, "p"}, {true, "q"}}, body);
}

} // namespace hyperltl
