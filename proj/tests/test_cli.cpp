#include <doctest.h>

#include <sstream>

#include "silab/checks.hpp"
#include "silab/errors.hpp"
#include "silab/report.hpp"
#include "silab/scenario.hpp"

using namespace silab;

TEST_CASE("scenario parsing") {
    std::istringstream in(R"(# a scenario
[scenario]
name = demo
seed = 42
checks = tree-identity certificate

[model]
kind = monomer-dimer
family = path
family-params = n=4
fugacity = 1.5
pin-unoccupied = 2

[params]
delta = 0.1

[tolerances]
tree-identity = 1e-6
)");
    Scenario sc = parse_scenario(in);
    CHECK(sc.name == "demo");
    CHECK(sc.seed == 42);
    CHECK(sc.checks == std::vector<std::string>{"tree-identity", "certificate"});
    CHECK(sc.model.kind == "monomer-dimer");
    CHECK(sc.model.family == "path");
    CHECK(sc.model.fugacity == std::vector<double>{1.5});
    CHECK(sc.model.pin_unoccupied == std::vector<int>{2});
    CHECK(sc.param_num("delta", 0.0) == doctest::Approx(0.1));
    CHECK(sc.tolerance("tree-identity", 1e-8) == doctest::Approx(1e-6));
    CHECK(sc.tolerance("certificate", 1e-7) == doctest::Approx(1e-7));

    ModelInstance m = instantiate(sc.model, "");
    CHECK(m.kind() == ModelKind::MonomerDimer);
    CHECK(m.graph().n_vertices() == 4);
    CHECK(m.fugacity()[0] == doctest::Approx(1.5));
    CHECK(m.is_pinned_unoccupied(2));
}

TEST_CASE("scenario parse errors carry positions") {
    std::istringstream bad("[scenario]\nname demo\n");
    CHECK_THROWS_AS(parse_scenario(bad), ParseError);
    std::istringstream bad2("[nope]\nx = 1\n");
    CHECK_THROWS_AS(parse_scenario(bad2), ParseError);
    std::istringstream bad3("[model]\nkind = voter\n");
    Scenario sc = parse_scenario(bad3);
    CHECK_THROWS_AS(instantiate(sc.model, ""), ParamError);
}

TEST_CASE("model files") {
    std::istringstream in(R"(kind = hardcore
family = star
family-params = d=3
fugacity = 1.0
)");
    ModelSpec spec = parse_model(in);
    ModelInstance m = instantiate(spec, "");
    CHECK(m.kind() == ModelKind::Hardcore);
    CHECK(m.graph().n_vertices() == 4);

    std::istringstream per_elem("kind = hardcore\nfamily = path\nfamily-params = n=3\nfugacity = 1 2 3\n");
    ModelInstance m2 = instantiate(parse_model(per_elem), "");
    CHECK(m2.fugacity() == std::vector<double>{1.0, 2.0, 3.0});

    std::istringstream wrong("kind = hardcore\nfamily = path\nfamily-params = n=3\nfugacity = 1 2\n");
    CHECK_THROWS_AS(instantiate(parse_model(wrong), ""), ParamError);
}

TEST_CASE("check registry executes every id") {
    CHECK(check_registry().size() == 12);

    Scenario sc;
    sc.name = "registry";
    sc.seed = 3;
    sc.model.kind = "monomer-dimer";
    sc.model.family = "random-tree";
    sc.model.family_params = {{"n", "8"}, {"seed", "5"}};
    sc.model.fugacity = {0.1};
    sc.params["height-max"] = "4";
    sc.params["d-max"] = "40";
    sc.params["grid"] = "500";
    sc.params["trials"] = "50";
    sc.params["n"] = "24";

    for (const auto& id : check_registry()) {
        Scenario local = sc;
        if (id == "beta-sums") {
            local.model.kind = "hardcore";
            local.model.fugacity = {1.0};
        }
        if (id == "girth-bound") {
            local.model.family = "cycle";
            local.model.family_params = {{"n", "5"}};
            local.model.fugacity = {1.0};
        }
        auto records = run_check(id, local, "");
        CHECK_FALSE(records.empty());
    }
}

TEST_CASE("scenario reports are deterministic and verdicts aggregate") {
    Scenario sc;
    sc.name = "det";
    sc.seed = 9;
    sc.checks = {"tree-identity", "certificate", "scalar-scan"};
    sc.model.kind = "monomer-dimer";
    sc.model.family = "random-tree";
    sc.model.family_params = {{"n", "9"}, {"seed", "2"}};
    sc.model.fugacity = {1.0};
    sc.params["d-max"] = "50";
    sc.params["grid"] = "400";

    Report r1 = run_scenario(sc, "");
    Report r2 = run_scenario(sc, "");
    CHECK(r1.all_pass_or_void());

    auto strip_runtime = [](const std::string& s) {
        auto pos = s.rfind("runtime_seconds=");
        return s.substr(0, pos);
    };
    CHECK(strip_runtime(render_machine(r1)) == strip_runtime(render_machine(r2)));
    CHECK(render_machine(r1).find("verdict=pass") != std::string::npos);

    // empty check list: empty report, still a pass
    Scenario empty;
    empty.name = "empty";
    Report re = run_scenario(empty, "");
    CHECK(re.records.empty());
    CHECK(re.all_pass_or_void());
}

TEST_CASE("machine report format is one record per line") {
    Report rep;
    rep.scenario_name = "fmt";
    rep.seed = 1;
    CheckRecord rec;
    rec.check_id = "demo";
    rec.inputs = "n=3 lambda=1";
    rec.measured = {{"value", 0.125}};
    rec.bound_desc = "demo bound";
    rec.bound_value = 1.0;
    rec.slack = 0.875;
    rec.verdict = Verdict::Pass;
    rep.records.push_back(rec);
    const std::string text = render_machine(rep);
    CHECK(text.find("check=demo inputs=n=3,lambda=1 value=0.125") != std::string::npos);
    CHECK(text.find("verdict=pass") != std::string::npos);
    CHECK(render_table(rep).find("demo") != std::string::npos);
}
