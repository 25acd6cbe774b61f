#include "cli.hpp"

#include "hyperltl/checker.hpp"
#include "hyperltl/error.hpp"
#include "hyperltl/kripke.hpp"
#include "hyperltl/policies.hpp"
#include "hyperltl/tableau.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace hyperltl::cli {

namespace {

namespace fs = std::filesystem;

struct PolicyParams {
    std::string name;
    std::vector<std::string> high, low, low_in, low_out, users, commands, outputs;
    std::string pw = "pw";
    std::size_t bits = 1;
};

struct FormulaSource {
    std::string formula;
    PolicyParams policy;
};

const std::vector<std::string> policy_names{"ni", "od", "gni", "declass", "qni", "gm"};

void add_policy_params(CLI::App& app, PolicyParams& p)
{
    app.add_option("--high", p.high, "High propositions (gm: high users)")->delimiter(',');
    app.add_option("--low", p.low, "Low propositions (gm: low users)")->delimiter(',');
    app.add_option("--low-in", p.low_in, "Low input propositions")->delimiter(',');
    app.add_option("--low-out", p.low_out, "Low output propositions")->delimiter(',');
    app.add_option("--pw", p.pw, "Password proposition for declass")->capture_default_str();
    app.add_option("--bits", p.bits, "Leakage bound in bits for qni")->capture_default_str();
    app.add_option("--users", p.users, "gm: machine users (default: read from in_/out_ atoms)")->delimiter(',');
    app.add_option("--commands", p.commands, "gm: machine commands")->delimiter(',');
    app.add_option("--outputs", p.outputs, "gm: machine output values")->delimiter(',');
}

void add_formula_source(CLI::App& app, FormulaSource& s)
{
    auto* f = app.add_option("-f,--formula", s.formula, "Formula file, or formula text if no such file exists");
    auto* p = app.add_option("--policy", s.policy.name, "Policy template")->check(CLI::IsMember(policy_names));
    f->excludes(p);
    add_policy_params(app, s.policy);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Users, commands and outputs recovered from in_u_c / out_u_v proposition names.
void signature_from_atoms(const std::vector<std::string>& aps, StateMachine& m)
{
    auto add = [](std::vector<std::string>& v, const std::string& x) {
        if (std::find(v.begin(), v.end(), x) == v.end())
            v.push_back(x);
    };
    for (const auto& a : aps) {
        for (const std::string prefix : {"in_", "out_"}) {
            if (a.rfind(prefix, 0) != 0)
                continue;
            const std::string rest = a.substr(prefix.size());
            const auto sep = rest.find('_');
            if (sep == std::string::npos)
                continue;
            add(m.users, rest.substr(0, sep));
            add(prefix == "in_" ? m.commands : m.outputs, rest.substr(sep + 1));
        }
    }
}

Formula make_policy(const PolicyParams& p, const KripkeStructure* k, std::vector<std::string>& warnings)
{
    if (p.name == "ni")
        return noninference(p.high, p.low, &warnings);
    if (p.name == "od")
        return observational_determinism(p.low_in, p.low_out);
    if (p.name == "gni")
        return generalized_noninterference(p.high, p.low);
    if (p.name == "declass")
        return declassification_password(p.low_in, p.pw, p.low_out);
    if (p.name == "qni")
        return quantitative_ni(p.bits, p.low_in, p.low_out, &warnings);
    if (p.name == "gm") {
        StateMachine m;
        m.users = p.users;
        m.commands = p.commands;
        m.outputs = p.outputs;
        if ((m.users.empty() || m.commands.empty() || m.outputs.empty()) && k) {
            StateMachine derived;
            signature_from_atoms(k->aps, derived);
            if (m.users.empty())
                m.users = derived.users;
            if (m.commands.empty())
                m.commands = derived.commands;
            if (m.outputs.empty())
                m.outputs = derived.outputs;
        }
        if (m.users.empty() || m.commands.empty() || m.outputs.empty())
            throw ValidationError("gm needs --users, --commands and --outputs");
        return gm_noninterference(p.high, p.low, m, &warnings);
    }
    throw ValidationError("unknown policy '" + p.name + "'");
}

std::optional<Formula> resolve_formula(const FormulaSource& s, const KripkeStructure* k,
                                       std::vector<std::string>& warnings)
{
    if (!s.policy.name.empty())
        return make_policy(s.policy, k, warnings);
    if (s.formula.empty())
        return std::nullopt;
    std::error_code ec;
    if (fs::is_regular_file(s.formula, ec))
        return parse_formula(read_file(s.formula));
    return parse_formula(s.formula);
}

std::string file_name(std::size_t index, const std::string& stage)
{
    std::ostringstream os;
    os << std::setw(2) << std::setfill('0') << index << '-' << stage << ".dot";
    return os.str();
}

struct CheckArgs {
    std::string kripke;
    FormulaSource source;
    std::string dump_dir;
    bool stats = false;
    bool validate = true;
    bool minimize = true;
    std::size_t max_states = ComplementOptions{}.max_states;
    std::size_t max_alphabet = ComplementOptions{}.max_alphabet;
    std::size_t lasso_factor = ValidationOptions{}.factor;
};

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err)
{
    const KripkeStructure k = load_kripke(a.kripke);
    std::vector<std::string> warnings;
    const auto phi = resolve_formula(a.source, &k, warnings);
    if (!phi)
        throw ValidationError("check needs --formula or --policy");
    for (const auto& w : warnings)
        err << "warning: " << w << '\n';

    CheckOptions opts;
    opts.complement.max_states = a.max_states;
    opts.complement.max_alphabet = a.max_alphabet;
    opts.minimize = a.minimize;
    std::size_t dumped = 0;
    if (!a.dump_dir.empty()) {
        fs::create_directories(a.dump_dir);
        opts.on_stage = [&](const std::string& stage, const BuchiAutomaton& automaton) {
            std::ofstream f(fs::path(a.dump_dir) / file_name(dumped++, stage));
            f << to_dot(automaton, stage);
        };
    }

    const Verdict v = check(k, *phi, opts);
    out << v.to_string();
    if (a.validate && (!v.holds() || v.traces_are_witness) && !v.traces.empty()) {
        ValidationOptions vo;
        vo.factor = a.lasso_factor;
        const ValidationReport r = validate_counterexample(k, *phi, v, vo);
        out << "VALIDATION: " << (r.ok ? "ok" : "failed") << " (" << r.message << ")\n";
        if (!r.ok)
            err << "warning: the oracle does not confirm the reported traces\n";
    }
    if (a.stats) {
        for (const auto& s : v.stages)
            out << "STAGE " << s.name << ": states=" << s.size.states << " edges=" << s.size.edges << '\n';
        if (v.complement.input_states > 0)
            out << "COMPLEMENT: input=" << v.complement.input_states << " alphabet=" << v.complement.alphabet
                << " macrostates=" << v.complement.macrostates << " max_rank=" << v.complement.max_rank
                << (v.complement.safety_shortcut ? " subset" : " rank") << '\n';
        out << "TIME: " << std::fixed << std::setprecision(6) << v.seconds << "s\n";
    }
    return v.holds() ? Holds : Fails;
}

int cmd_policy(const PolicyParams& p, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> warnings;
    const Formula f = make_policy(p, nullptr, warnings);
    for (const auto& w : warnings)
        err << "warning: " << w << '\n';
    out << f.to_string() << '\n';
    return 0;
}

struct InspectArgs {
    std::string path;
    FormulaSource source;
    std::string stage;
    bool text = false;
    std::size_t max_states = ComplementOptions{}.max_states;
};

int cmd_inspect(const InspectArgs& a, std::ostream& out, std::ostream& err)
{
    const std::string content = read_file(a.path);
    std::optional<KripkeStructure> k;
    try {
        k = parse_kripke(content);
    } catch (const ParseError&) {
    }

    if (!k) {
        // A formula file: show its tableau automaton.
        const Formula phi = parse_formula(content);
        const Prenex p = split_prenex(phi);
        std::vector<std::string> vars;
        for (const auto& q : p.prefix)
            vars.push_back(q.var);
        for (const auto& v : free_variables(p.body))
            if (std::find(vars.begin(), vars.end(), v) == vars.end())
                vars.push_back(v);
        if (vars.empty())
            vars.push_back("p");
        const auto atom_set = atoms_of(p.body);
        const std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
        const Tableau t = build_tableau(to_nnf(p.body), vars, atoms);
        if (a.stage.empty() || a.stage == "tableau")
            out << to_dot(t.automaton, "tableau");
        else if (a.stage == "formula")
            out << to_dot(degeneralize(t.automaton), "formula");
        else {
            err << "error: formula files offer the stages tableau and formula\n";
            return Usage;
        }
        return 0;
    }

    if (a.text) {
        out << to_text(*k);
        return 0;
    }
    std::vector<std::string> warnings;
    const auto phi = resolve_formula(a.source, &*k, warnings);
    if (!phi) {
        if (!a.stage.empty() && a.stage != "kripke") {
            err << "error: stage '" << a.stage << "' needs --formula or --policy\n";
            return Usage;
        }
        out << to_dot(kripke_to_buchi(*k), "kripke");
        return 0;
    }
    const std::string wanted = a.stage.empty() ? "product" : a.stage;
    std::optional<BuchiAutomaton> found;
    std::vector<std::string> seen;
    CheckOptions opts;
    opts.complement.max_states = a.max_states;
    opts.on_stage = [&](const std::string& name, const BuchiAutomaton& automaton) {
        seen.push_back(name);
        if (name == wanted)
            found = automaton;
    };
    check(*k, *phi, opts);
    if (!found) {
        err << "error: no stage '" << wanted << "'; available:";
        for (const auto& s : seen)
            err << ' ' << s;
        err << '\n';
        return Usage;
    }
    out << to_dot(*found, wanted);
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Model checker for HyperLTL with at most one quantifier alternation", "hyperltl"};
    app.require_subcommand(1);

    CheckArgs check_args;
    auto* check_cmd = app.add_subcommand("check", "Check a Kripke structure against a formula or policy");
    check_cmd->add_option("kripke", check_args.kripke, "Kripke structure file")->required();
    add_formula_source(*check_cmd, check_args.source);
    check_cmd->add_option("--dump-dot", check_args.dump_dir, "Write every pipeline automaton as DOT into DIR");
    check_cmd->add_flag("--stats", check_args.stats, "Print automaton sizes per stage and the running time");
    check_cmd->add_option("--max-complement-states", check_args.max_states, "Cap on complement states")
        ->capture_default_str();
    check_cmd->add_option("--max-alphabet", check_args.max_alphabet, "Cap on concrete complement symbols")
        ->capture_default_str();
    check_cmd->add_option("--lasso-factor", check_args.lasso_factor,
                          "Validation lasso bounds are |S| times this factor")
        ->capture_default_str();
    check_cmd->add_flag("--validate,!--no-validate", check_args.validate,
                        "Confirm reported traces with the brute-force oracle (default on)");
    check_cmd->add_flag("--minimize,!--no-minimize", check_args.minimize,
                        "Shorten counterexamples (default on)");

    PolicyParams policy_args;
    auto* policy_cmd = app.add_subcommand("policy", "Print a policy formula");
    policy_cmd->add_option("name", policy_args.name, "Policy template")
        ->required()
        ->check(CLI::IsMember(policy_names));
    add_policy_params(*policy_cmd, policy_args);

    InspectArgs inspect_args;
    auto* inspect_cmd = app.add_subcommand("inspect", "Print automata as DOT");
    inspect_cmd->add_option("path", inspect_args.path, "Kripke structure or formula file")->required();
    add_formula_source(*inspect_cmd, inspect_args.source);
    inspect_cmd->add_option("--stage", inspect_args.stage,
                            "kripke, self-composition, formula, product, projection, reduced, guide, "
                            "complement-product (structures) or tableau, formula (formula files)");
    inspect_cmd->add_flag("--text", inspect_args.text, "Print the normalized Kripke text instead");
    inspect_cmd->add_option("--max-complement-states", inspect_args.max_states, "Cap on complement states");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : Usage;
    }

    try {
        if (*check_cmd)
            return cmd_check(check_args, out, err);
        if (*policy_cmd)
            return cmd_policy(policy_args, out, err);
        return cmd_inspect(inspect_args, out, err);
    } catch (const ResourceLimitExceeded& e) {
        err << "inconclusive: resource limit: " << e.what() << '\n';
        return ResourceLimit;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return Usage;
    }
}

} // namespace hyperltl::cli
