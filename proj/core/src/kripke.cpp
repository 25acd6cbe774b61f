#include "hyperltl/kripke.hpp"

#include "hyperltl/error.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace hyperltl {

std::size_t KripkeStructure::index_of(const std::string& state) const
{
    auto it = std::find(states.begin(), states.end(), state);
    if (it == states.end())
        throw ValidationError("unknown state '" + state + "'");
    return static_cast<std::size_t>(it - states.begin());
}

std::size_t KripkeStructure::add_state(std::string name, std::set<std::string> label)
{
    states.push_back(std::move(name));
    labels.push_back(std::move(label));
    successors.emplace_back();
    return states.size() - 1;
}

void KripkeStructure::add_transition(std::size_t from, std::size_t to)
{
    auto& succ = successors.at(from);
    if (std::find(succ.begin(), succ.end(), to) == succ.end())
        succ.push_back(to);
}

void KripkeStructure::validate() const
{
    if (states.empty())
        throw ValidationError("structure has no states");
    if (successors.size() != states.size() || labels.size() != states.size())
        throw ValidationError("state, label and transition tables differ in size");
    if (initial >= states.size())
        throw ValidationError("initial state out of range");
    if (aps.size() > max_atoms)
        throw ValidationError("more than 64 atomic propositions");
    std::set<std::string> names;
    for (const auto& s : states)
        if (!names.insert(s).second)
            throw ValidationError("duplicate state '" + s + "'");
    const std::set<std::string> ap_set(aps.begin(), aps.end());
    if (ap_set.size() != aps.size())
        throw ValidationError("duplicate atomic proposition");
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (successors[s].empty())
            throw ValidationError("state " + states[s] + " has no successors");
        for (auto t : successors[s])
            if (t >= states.size())
                throw ValidationError("state " + states[s] + " has a successor out of range");
        for (const auto& a : labels[s])
            if (!ap_set.count(a))
                throw ValidationError("label of state " + states[s] + " uses undeclared proposition '" + a + "'");
    }
}

namespace {

std::vector<std::string> words(const std::string& s)
{
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;)
        out.push_back(w);
    return out;
}

} // namespace

KripkeStructure parse_kripke(std::string_view text)
{
    KripkeStructure k;
    std::optional<std::string> init;
    std::map<std::string, std::size_t> line_of_label, line_of_trans;
    std::vector<std::pair<std::size_t, std::pair<std::string, std::vector<std::string>>>> labels, trans;
    bool have_aps = false, have_states = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        const auto first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        const auto colon = raw.find(':');
        const auto arrow = raw.find("->");
        auto head = words(raw.substr(0, std::min(colon, arrow)));
        if (head.empty())
            throw ParseError("missing keyword", lineno, first + 1);
        const std::string& kw = head[0];
        if (kw == "aps" || kw == "states" || kw == "init") {
            if (colon == std::string::npos || head.size() != 1)
                throw ParseError("expected '" + kw + ":'", lineno, first + 1);
            auto rest = words(raw.substr(colon + 1));
            if (kw == "aps") {
                if (have_aps)
                    throw ParseError("duplicate 'aps' line", lineno, first + 1);
                have_aps = true;
                k.aps = rest;
            } else if (kw == "states") {
                if (have_states)
                    throw ParseError("duplicate 'states' line", lineno, first + 1);
                have_states = true;
                for (auto& s : rest)
                    k.add_state(s);
            } else {
                if (rest.size() != 1 || init)
                    throw ParseError("expected exactly one initial state", lineno, first + 1);
                init = rest[0];
            }
        } else if (kw == "label") {
            if (colon == std::string::npos || head.size() != 2)
                throw ParseError("expected 'label STATE: ATOMS'", lineno, first + 1);
            labels.push_back({lineno, {head[1], words(raw.substr(colon + 1))}});
        } else if (kw == "trans") {
            if (arrow == std::string::npos || head.size() != 2)
                throw ParseError("expected 'trans STATE -> STATES'", lineno, first + 1);
            trans.push_back({lineno, {head[1], words(raw.substr(arrow + 2))}});
        } else {
            throw ParseError("unknown keyword '" + kw + "'", lineno, first + 1);
        }
    }
    if (!have_states)
        throw ParseError("missing 'states' line", lineno, 1);
    if (!init)
        throw ParseError("missing 'init' line", lineno, 1);

    k.initial = k.index_of(*init);
    std::vector<bool> labelled(k.num_states(), false), stepped(k.num_states(), false);
    for (auto& [ln, entry] : labels) {
        const std::size_t s = k.index_of(entry.first);
        if (labelled[s])
            throw ParseError("second label line for state " + entry.first, ln, 1);
        labelled[s] = true;
        k.labels[s] = {entry.second.begin(), entry.second.end()};
    }
    for (auto& [ln, entry] : trans) {
        const std::size_t s = k.index_of(entry.first);
        if (stepped[s])
            throw ParseError("second trans line for state " + entry.first, ln, 1);
        stepped[s] = true;
        for (auto& t : entry.second)
            k.add_transition(s, k.index_of(t));
    }
    for (std::size_t s = 0; s < k.num_states(); ++s) {
        if (!labelled[s])
            throw ValidationError("state " + k.states[s] + " has no label line");
        if (!stepped[s])
            throw ValidationError("state " + k.states[s] + " has no successors");
    }
    k.validate();
    return k;
}

KripkeStructure load_kripke(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_kripke(ss.str());
}

std::string to_text(const KripkeStructure& k)
{
    std::ostringstream os;
    os << "aps:";
    for (const auto& a : k.aps)
        os << ' ' << a;
    os << "\nstates:";
    for (const auto& s : k.states)
        os << ' ' << s;
    os << "\ninit: " << k.states.at(k.initial) << '\n';
    for (std::size_t s = 0; s < k.num_states(); ++s) {
        os << "label " << k.states[s] << ':';
        for (const auto& a : k.aps)
            if (k.labels[s].count(a))
                os << ' ' << a;
        os << '\n';
    }
    for (std::size_t s = 0; s < k.num_states(); ++s) {
        os << "trans " << k.states[s] << " ->";
        for (auto t : k.successors[s])
            os << ' ' << k.states[t];
        os << '\n';
    }
    return os.str();
}

BuchiAutomaton kripke_to_buchi(const KripkeStructure& k, const std::vector<std::string>& extra_aps)
{
    k.validate();
    std::vector<std::string> atoms = k.aps;
    for (const auto& x : extra_aps) {
        if (std::find(k.aps.begin(), k.aps.end(), x) != k.aps.end())
            throw ValidationError("extra proposition '" + x + "' already belongs to the structure");
        if (std::find(atoms.begin(), atoms.end(), x) == atoms.end())
            atoms.push_back(x);
    }
    BuchiAutomaton a(1, atoms);
    const StateId init = a.add_state(true, "init");
    for (const auto& s : k.states)
        a.add_state(true, s);

    std::vector<Letter> letter(k.num_states(), Letter(1));
    for (std::size_t s = 0; s < k.num_states(); ++s)
        for (std::size_t i = 0; i < k.aps.size(); ++i) {
            if (k.labels[s].count(k.aps[i]))
                letter[s].components[0].pos |= AtomSet{1} << i;
            else
                letter[s].components[0].neg |= AtomSet{1} << i;
        }

    a.add_edge(init, letter[k.initial], static_cast<StateId>(k.initial + 1));
    for (std::size_t s = 0; s < k.num_states(); ++s)
        for (auto t : k.successors[s])
            a.add_edge(static_cast<StateId>(s + 1), letter[t], static_cast<StateId>(t + 1));
    a.add_initial(init);
    return a;
}

void StateMachine::resize_tables()
{
    next.assign(states.size(), std::vector<std::vector<std::size_t>>(users.size()));
    for (std::size_t s = 0; s < states.size(); ++s)
        for (auto& row : next[s])
            row.assign(commands.size(), s);
    observe.assign(states.size(), std::vector<std::size_t>(users.size(), 0));
}

void StateMachine::validate() const
{
    if (states.empty() || users.empty() || commands.empty() || outputs.empty())
        throw ValidationError("state machine needs states, users, commands and outputs");
    if (initial >= states.size())
        throw ValidationError("initial machine state out of range");
    if (next.size() != states.size() || observe.size() != states.size())
        throw ValidationError("transition or output table is not total");
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (next[s].size() != users.size() || observe[s].size() != users.size())
            throw ValidationError("tables of state " + states[s] + " are not total");
        for (std::size_t u = 0; u < users.size(); ++u) {
            if (next[s][u].size() != commands.size())
                throw ValidationError("do(" + states[s] + "," + users[u] + ",·) is not total");
            for (auto t : next[s][u])
                if (t >= states.size())
                    throw ValidationError("do(" + states[s] + "," + users[u] + ",·) leaves the state set");
            if (observe[s][u] >= outputs.size())
                throw ValidationError("out(" + states[s] + "," + users[u] + ") is not an output value");
        }
    }
}

std::string input_atom(const std::string& user, const std::string& command) { return "in_" + user + "_" + command; }

std::string output_atom(const std::string& user, const std::string& value) { return "out_" + user + "_" + value; }

KripkeStructure encode_state_machine(const StateMachine& m)
{
    m.validate();
    KripkeStructure k;
    for (const auto& u : m.users)
        for (const auto& c : m.commands)
            k.aps.push_back(input_atom(u, c));
    for (const auto& u : m.users)
        for (const auto& v : m.outputs)
            k.aps.push_back(output_atom(u, v));

    auto observations = [&](std::size_t s) {
        std::set<std::string> l;
        for (std::size_t u = 0; u < m.users.size(); ++u)
            l.insert(output_atom(m.users[u], m.outputs[m.observe[s][u]]));
        return l;
    };
    const std::size_t U = m.users.size(), C = m.commands.size();
    auto id = [&](std::size_t s, std::size_t u, std::size_t c) { return 1 + (s * U + u) * C + c; };

    k.add_state(m.states[m.initial], observations(m.initial));
    for (std::size_t s = 0; s < m.states.size(); ++s)
        for (std::size_t u = 0; u < U; ++u)
            for (std::size_t c = 0; c < C; ++c) {
                auto l = observations(s);
                l.insert(input_atom(m.users[u], m.commands[c]));
                k.add_state(m.states[s] + "." + m.users[u] + "." + m.commands[c], std::move(l));
            }
    auto step_from = [&](std::size_t kstate, std::size_t s) {
        for (std::size_t u = 0; u < U; ++u)
            for (std::size_t c = 0; c < C; ++c)
                k.add_transition(kstate, id(m.next[s][u][c], u, c));
    };
    step_from(0, m.initial);
    for (std::size_t s = 0; s < m.states.size(); ++s)
        for (std::size_t u = 0; u < U; ++u)
            for (std::size_t c = 0; c < C; ++c)
                step_from(id(s, u, c), s);
    k.initial = 0;
    k.validate();
    return k;
}

} // namespace hyperltl
