#include <catch_amalgamated.hpp>

#include <json.hpp>
#include <sstream>

#include "relequiv/cli.hpp"

using namespace relequiv;

namespace {

const std::string data_dir = RELEQUIV_DATA_DIR;

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run_spec(const std::string& command, const std::string& spec_text, CliOptions opt = {}) {
    std::ostringstream out, err;
    const GroupSpec spec = parse_spec(spec_text);
    const int code = run(command, spec, opt, out, err);
    return {code, out.str(), err.str()};
}

Outcome run_paper(const std::string& command, CliOptions opt = {}) {
    std::ostringstream out, err;
    const int code = run_file(command, data_dir + "/z3xz3.json", opt, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("molien in every format") {
    CliOptions opt;
    const auto text = run_paper("molien", opt);
    CHECK(text.code == exit_ok);
    CHECK(contains(text.out, "Phi_0(t) = 1 + 2*t^2 + 4*t^3 + 3*t^4 + 8*t^5 + 12*t^6\n"));
    CHECK(contains(text.out, "Psi_2(t) = 1 + 3*t^2 + 6*t^3 + 6*t^4 + 14*t^5 + 21*t^6\n"));

    opt.format = Format::json;
    opt.j = 1;
    const auto json = nlohmann::json::parse(run_paper("molien", opt).out);
    CHECK(json["phi"][0] == nlohmann::json({0, 1, 1, 2, 5, 6, 9}));
    CHECK(json["psi"][0] == nlohmann::json({0, 1, 2, 4, 8, 12, 18}));
    CHECK(json["group"]["order"] == 9);

    opt.format = Format::csv;
    opt.dmax = 2;
    CHECK(run_paper("molien", opt).out == "# Phi_1\ndegree,dim\n0,0\n1,1\n2,1\n\n# Psi_1\ndegree,dim\n0,0\n1,1\n2,2\n");

    opt.format = Format::latex;
    CHECK(contains(run_paper("molien", opt).out, "\\Phi_{1}(t) = t + t^{2} + \\cdots"));
}

TEST_CASE("generator commands") {
    const auto inv = run_paper("invariants");
    CHECK(inv.code == exit_ok);
    CHECK(contains(inv.out, "z2b^2"));
    const auto gf = run_paper("general-form");
    CHECK(gf.code == exit_ok);
    CHECK(contains(gf.out, "g_0 = (f1*z1 + f2*z1b^2, f3*z2 + f4*z2b^2)"));
    CHECK(contains(gf.out, "g_2 = (f11*z1*z2b + f12*z1b^2*z2b + f13*z1*z2^2 + f14*z1b^2*z2^2, f15)"));
    CHECK(run_paper("basis").code == exit_ok);
    CliOptions opt;
    opt.format = Format::json;
    const auto eq = run_paper("equivariants", opt);
    CHECK(eq.code == exit_ok);
    CHECK_NOTHROW(nlohmann::json::parse(eq.out));
}

TEST_CASE("check passes on the bundled spec") {
    const auto r = run_paper("check");
    CHECK(r.code == exit_ok);
    CHECK(contains(r.out, "0 failed"));
    CHECK(!contains(r.out, "FAIL "));
}

TEST_CASE("exit codes") {
    const std::string ok = R"({"m": 2, "variables": ["x"], "rho_generators": [[["-1"]]], "sigma_values": [1]})";
    CHECK(run_spec("molien", ok).code == exit_ok);

    CliOptions bad_j;
    bad_j.j = 2;
    CHECK(run_spec("molien", ok, bad_j).code == exit_parse);
    CHECK(run_spec("frobnicate", ok).code == exit_parse);
    {
        std::ostringstream out, err;
        CHECK(run_file("molien", data_dir + "/missing.json", {}, out, err) == exit_parse);
        CHECK(contains(err.str(), "cannot open"));
    }

    const auto group = run_spec("molien", R"({"m": 3, "variables": ["x"], "rho_generators": [[["-1"]]], "sigma_values": [1]})");
    CHECK(group.code == exit_group);
    CHECK(contains(group.err, "sigma ill-defined"));

    CliOptions small_bound;
    small_bound.k_degree_bound = 1;
    const auto val = run_paper("invariants", small_bound);
    CHECK(val.code == exit_validation);
    CHECK(contains(val.err, "degree bound insufficient"));

    // a wrong expected series makes check fail
    const auto fail = run_spec("check", R"({"m": 2, "variables": ["x"], "rho_generators": [[["-1"]]], "sigma_values": [1],
                                           "expected": {"phi": [[1, 1], [0, 1]]}})");
    CHECK(fail.code == exit_inconsistent);
    CHECK(contains(fail.out, "FAIL expected series"));
}

TEST_CASE("output is deterministic") {
    CliOptions opt;
    opt.threads = 4;
    CHECK(run_paper("check", opt).out == run_paper("check").out);
    CHECK(run_paper("equivariants", opt).out == run_paper("equivariants", opt).out);
    CHECK(run_paper("molien", opt).out == run_paper("molien").out);
}

TEST_CASE("seeded faults in the spec make check fail") {
    const GroupSpec base = load_spec(data_dir + "/z3xz3.json");
    const Cyclotomic w = Cyclotomic::root_of_unity(1, 3);
    int mutations = 0, invisible = 0;
    auto try_fault = [&](const GroupSpec& spec) {
        ++mutations;
        std::ostringstream out, err;
        const int code = run("check", spec, {}, out, err);
        // A mutation that leaves every series unchanged is indistinguishable
        // from the original data; all others must be caught.
        bool same = true;
        const auto g = build_group(spec);
        for (int j = 0; j < 3; ++j)
            same = same && molien_series(g, j, SeriesKind::invariant, 6) == base.expected_phi[std::size_t(j)] &&
                   molien_series(g, j, SeriesKind::equivariant, 6) == base.expected_psi[std::size_t(j)];
        if (same)
            ++invisible;
        else
            CHECK(code != exit_ok);
    };
    // Multiply one diagonal entry of one generator by a cube root of unity.
    for (std::size_t g = 0; g < base.rho_generators.size(); ++g)
        for (std::size_t i = 0; i < base.rho_generators[g].rows(); ++i) {
            INFO("rho generator " << g << " entry " << i);
            GroupSpec spec = base;
            spec.rho_generators[g](i, i) *= w;
            try_fault(spec);
        }
    for (std::size_t g = 0; g < base.eta_generators.size(); ++g)
        for (std::size_t i = 0; i < base.eta_generators[g].rows(); ++i) {
            INFO("eta generator " << g << " entry " << i);
            GroupSpec spec = base;
            spec.eta_generators[g](i, i) *= w;
            try_fault(spec);
        }
    CHECK(mutations == 12);
    // Only eta(gen 0) = diag(E(3)^2, 1) survives: swapping z1 and z1b maps it
    // back to the original group.
    CHECK(invisible == 1);
}
