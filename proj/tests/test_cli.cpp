#include <doctest.h>

#include "cli.hpp"
#include "testing.hpp"

#include <filesystem>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = hyperltl::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

} // namespace

using hyperltl::cli::Exit;
using testing::data_path;

TEST_CASE("check with a policy")
{
    const Result r = cli({"check", data_path("prog1.ks"), "--policy", "od", "--low-out", "l"});
    CHECK(r.code == Exit::Fails);
    CHECK(contains(r.out, "VERDICT: fails"));
    CHECK(contains(r.out, "TRACE p:"));
    CHECK(contains(r.out, "VALIDATION: ok"));

    const Result h = cli({"check", data_path("const.ks"), "--policy", "gni", "--high", "h", "--low", "l"});
    CHECK(h.code == Exit::Holds);
    CHECK(contains(h.out, "VERDICT: holds"));
}

TEST_CASE("check with an inline formula and stats")
{
    const Result r = cli({"check", data_path("prog1.ks"), "-f", "exists p. forall q. G (l[q] -> l[p])", "--stats"});
    CHECK(r.code == Exit::Holds);
    CHECK(contains(r.out, "NOTE: decided by checking the negated formula"));
    CHECK(contains(r.out, "STAGE kripke: states="));
    CHECK(contains(r.out, "TIME:"));
}

TEST_CASE("dot dumps")
{
    const auto dir = std::filesystem::temp_directory_path() / "hyperltl-cli-dots";
    std::filesystem::remove_all(dir);
    const Result r = cli({"check", data_path("prog1.ks"), "--policy", "ni", "--high", "h", "--low", "l", "--dump-dot",
                          dir.string(), "--no-validate"});
    CHECK(r.code == Exit::Fails);
    std::size_t files = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        files += e.path().extension() == ".dot";
    CHECK(files == 8);
    std::filesystem::remove_all(dir);
}

TEST_CASE("policy printing")
{
    const Result r = cli({"policy", "gni", "--high", "h", "--low", "l"});
    CHECK(r.code == 0);
    CHECK(r.out == "forall p. forall q. exists r. G (h[p] <-> h[r]) & G (l[q] <-> l[r])\n");
    const Result q = cli({"policy", "qni", "--bits", "3", "--low-out", "o"});
    CHECK(q.code == 0);
    CHECK(contains(q.err, "warning:"));
    CHECK(cli({"policy", "nonsense"}).code == Exit::Usage);
}

TEST_CASE("inspect")
{
    const Result k = cli({"inspect", data_path("prog1.ks")});
    CHECK(k.code == 0);
    CHECK(k.out.rfind("digraph", 0) == 0);
    const Result t = cli({"inspect", data_path("prog1.ks"), "--text"});
    CHECK(contains(t.out, "aps: h l"));
    const Result p = cli({"inspect", data_path("policies/od.hltl")});
    CHECK(p.code == 0);
    CHECK(p.out.rfind("digraph", 0) == 0);
    const Result bad = cli({"inspect", data_path("prog1.ks"), "-f", data_path("policies/od.hltl"), "--stage", "nope"});
    CHECK(bad.code == Exit::Usage);
    CHECK(contains(bad.err, "product"));
}

TEST_CASE("errors and limits")
{
    CHECK(cli({"check", data_path("missing.ks"), "--policy", "od", "--low-out", "l"}).code == Exit::Usage);
    CHECK(cli({"check", data_path("prog1.ks"), "-f", "forall p. (l[p]"}).code == Exit::Usage);
    CHECK(cli({"check", data_path("prog1.ks")}).code == Exit::Usage);
    CHECK(cli({}).code == Exit::Usage);
    CHECK(cli({"--help"}).code == 0);
    const Result limit = cli({"check", data_path("prog1.ks"), "--policy", "ni", "--high", "h", "--low", "l",
                              "--max-complement-states", "1"});
    CHECK(limit.code == Exit::ResourceLimit);
    CHECK(contains(limit.err, "inconclusive"));
}
