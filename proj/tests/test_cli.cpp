#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "fixtures.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(HYPERB_TOOL_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

std::filesystem::path temp_file(const std::string& stem) {
    return std::filesystem::temp_directory_path() /
           (stem + "-" + std::to_string(::getpid()) + ".json");
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("classes single dimension") {
    const auto r = run("classes --variant ls --n 10");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "classes variant=ls n=10 cross_checks=ok"));
    CHECK(contains(r.output, "  10  zero"));
    CHECK(contains(r.output, "  k   w_k^2    criterion oracle"));
    CHECK(contains(r.output, "  i   p_i"));
}

TEST_CASE("classes range sweep and formats") {
    const auto r = run("classes --variant ls --n-min 4 --n-max 6");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "n=4"));
    CHECK(contains(r.output, "n=6"));

    const auto csv = run("classes --variant ls-cover --n 6 --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(contains(csv.output, "variant,n,kind,index,nonzero,criterion,oracle"));
    CHECK(contains(csv.output, "ls-cover,6,w,2,1,,"));
    CHECK(contains(csv.output, "ls-cover,6,w,1,0,,"));

    const auto js = run("classes --variant ls --n 6 --json");
    CHECK(js.exit_code == 0);
    CHECK(contains(js.output, "\"variant\": \"ls\""));
    CHECK(run("classes --variant ls --n 6 --json").output == js.output); // deterministic
}

TEST_CASE("classes caps and bad input") {
    CHECK(run("classes --variant ls --n 25").exit_code == 4);
    CHECK(run("classes --variant ls-cover --n 17").exit_code == 4);
    CHECK(run("classes --variant ls-cover --n 2").exit_code == 3);
}

TEST_CASE("conjecture scan") {
    const auto r = run("classes --conjecture --scan-n-max 12 --i-max 1");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "conjecture scan n_max=12 i_max=1"));
    CHECK(contains(r.output, "  1   8    nonzero    proven"));
    CHECK(contains(r.output, "proven_confirmed yes"));
    CHECK(contains(r.output, "evidence_gap no"));
    CHECK(run("classes --conjecture --scan-n-max 30 --i-max 1").exit_code == 4);
}

TEST_CASE("cubulate variants") {
    const auto r = run("cubulate --variant ls --n 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "counts 16 48 48 16"));
    CHECK(contains(r.output, "chi 0"));
    CHECK(contains(r.output, "box_side 4"));
    CHECK(contains(r.output, "foldable yes"));
    CHECK(contains(r.output, "orientable no"));
    CHECK(contains(r.output, "flat yes"));

    const auto t = run("cubulate --variant torus --n 2");
    CHECK(t.exit_code == 0);
    CHECK(contains(t.output, "counts 1 2 1"));
    CHECK(contains(t.output, "foldable no"));

    CHECK(run("cubulate --variant ls --n 7").exit_code == 4);
    CHECK(run("cubulate --variant user-group").exit_code == 3); // --group missing
}

TEST_CASE("cubulate writes deterministic JSON") {
    const auto out = temp_file("cubulate-out");
    const auto r = run("cubulate --variant hat-torus --n 2 --out " + out.string());
    CHECK(r.exit_code == 0);
    const std::string first = slurp(out);
    CHECK(contains(first, "\"version\": 1"));
    CHECK(run("cubulate --variant hat-torus --n 2 --out " + out.string()).exit_code == 0);
    CHECK(slurp(out) == first);
    std::filesystem::remove(out);
}

TEST_CASE("user group round trip") {
    const auto group = temp_file("klein-group");
    {
        std::ofstream out(group);
        out << R"({"dim": 2, "generators": [
            {"signs": [1, 1], "translation": [4, 0]},
            {"signs": [-1, 1], "translation": [0, 2]}]})";
    }
    const auto cub = run("cubulate --variant user-group --group " + group.string());
    CHECK(cub.exit_code == 0);
    CHECK(contains(cub.output, "orientable no"));

    const auto hyp = run("hyperbolize --variant user-group --group " + group.string());
    CHECK(hyp.exit_code == 0);
    CHECK(contains(hyp.output, "pieces 8"));
    CHECK(contains(hyp.output, "boundary_facets 0"));

    // half-integer translations cannot be cubulated
    const auto bad = temp_file("bad-group");
    {
        std::ofstream out(bad);
        out << R"({"dim": 2, "generators": [
            {"signs": [1, 1], "translation": [[1, 1], 0]},
            {"signs": [1, 1], "translation": [0, 2]}]})";
    }
    CHECK(run("cubulate --variant user-group --group " + bad.string()).exit_code == 3);
    std::filesystem::remove(group);
    std::filesystem::remove(bad);
}

TEST_CASE("hyperbolize variants") {
    const auto r = run("hyperbolize --variant hat-torus --n 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "pieces 4"));
    CHECK(contains(r.output, "gluings 8"));
    CHECK(contains(r.output, "boundary_facets 0"));
    CHECK(contains(r.output, "degree_chain box_side=2 d1=1 d2=1 piece_source=4"));
    CHECK(contains(r.output, "injrad_bound 1/4"));

    CHECK(run("hyperbolize --variant torus --n 2").exit_code == 3); // not foldable
    CHECK(run("hyperbolize --variant ls --n 7").exit_code == 4);

    const auto sc = run("hyperbolize --variant single-cube --n 3");
    CHECK(sc.exit_code == 0);
    CHECK(contains(sc.output, "pieces 1"));
    CHECK(contains(sc.output, "boundary_facets 6"));
}

TEST_CASE("hyperbolize from a complex file") {
    const auto cplx = temp_file("cubulated");
    CHECK(run("cubulate --variant ls --n 2 --out " + cplx.string()).exit_code == 0);
    const auto out = temp_file("hyperbolized");
    const auto r = run("hyperbolize --in " + cplx.string() + " --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "pieces 8"));
    const std::string first = slurp(out);
    CHECK(contains(first, "\"pieces\": 8"));
    CHECK(contains(first, "\"input_hash\""));
    CHECK(run("hyperbolize --in " + cplx.string() + " --out " + out.string()).exit_code == 0);
    CHECK(slurp(out) == first); // byte identical
    CHECK(run("hyperbolize --in /nonexistent/path.json").exit_code == 3);
    std::filesystem::remove(cplx);
    std::filesystem::remove(out);
}

TEST_CASE("verify sweeps") {
    const auto r = run("verify --sweep catalan");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "catalan PASS (52 cases)"));
    CHECK(contains(r.output, "overall PASS"));

    const auto w = run("verify --sweep wk2 --n-max 8");
    CHECK(w.exit_code == 0);
    CHECK(contains(w.output, "wk2 PASS"));

    const auto c = run("verify --sweep covers");
    CHECK(c.exit_code == 0);
    CHECK(contains(c.output, "covers PASS"));
}

TEST_CASE("verify fixtures") {
    const auto good = temp_file("fixture-good");
    {
        std::ofstream out(good);
        out << hyperb::cube_complex_to_json(hyperb::single_cube_complex(2));
    }
    const auto g = run("verify --fixture " + good.string());
    CHECK(g.exit_code == 0);
    CHECK(contains(g.output, "PASS"));

    const auto broken = temp_file("fixture-broken");
    {
        std::ofstream out(broken);
        out << fixtures::broken_boundary_json();
    }
    CHECK(run("verify --fixture " + broken.string()).exit_code == 2);

    const auto truncated = temp_file("fixture-truncated");
    {
        std::ofstream out(truncated);
        out << fixtures::truncated_json();
    }
    CHECK(run("verify --fixture " + truncated.string()).exit_code == 3);

    for (const auto& p : {good, broken, truncated}) std::filesystem::remove(p);
}

TEST_CASE("thread count env var is honored") {
    const auto r = run("verify --sweep wk2 --n-max 10");
    CHECK(r.exit_code == 0);
    const std::string cmd = std::string("HYPERB_THREADS=1 ") + HYPERB_TOOL_PATH +
                            " verify --sweep wk2 --n-max 10 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    CHECK(WEXITSTATUS(pclose(pipe)) == 0);
    CHECK(out == r.output); // worker count must not change the report
}
