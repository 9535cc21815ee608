#include <doctest.h>

#include <random>
#include <set>
#include <string>

#include "hecke/calc.hpp"

using namespace hecke;

namespace {

std::string fixture(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

BlockSpec load(const std::string& name) { return load_spec(fixture(name)); }

} // namespace

TEST_CASE("load_spec on the shipped fixtures") {
    CHECK_NOTHROW(load("sl2_trivial.json"));
    CHECK_NOTHROW(load("sl2_quadratic.json"));
    CHECK_NOTHROW(load("gl2_regular.json"));
    CHECK_NOTHROW(load("gl2_theta3.json"));
    CHECK_NOTHROW(load("sl3_trivial.json"));
    CHECK_NOTHROW(load("sl2sl2_swap.json"));
    CHECK_NOTHROW(load("ramified_a1.json"));
    CHECK_NOTHROW(load("gl3_levi.json"));
    CHECK_NOTHROW(load("torus_only.json"));
    CHECK_NOTHROW(load("invalid_ellipticity.json")); // parses; fails later
    // s not Frobenius-stable is a semantic load error
    CHECK_THROWS_AS(load("invalid_stability.json"), ValidationError);
    CHECK_THROWS_AS(load("no_such_file.json"), ValidationError);
}

TEST_CASE("parse errors carry context") {
    CHECK_THROWS_AS(parse_spec_json("{ not json", "inline"), ValidationError);
    CHECK_THROWS_AS(parse_spec_json("{\"schema_version\": 99}", "inline"),
                    ValidationError);
}

TEST_CASE("pipeline: SL2 principal series with trivial theta") {
    BlockSpec spec = load("sl2_trivial.json");
    Report r = run_pipeline(spec, nullptr);
    CHECK(r.theta_roots.size() == 2);
    CHECK(r.apartment_certified);
    CHECK(r.inclusion_certified);
    REQUIRE(r.classes.size() == 1);
    const auto& c = r.classes[0];
    CHECK(c.in_theta);
    CHECK(c.theta_type == "A1");
    CHECK(c.levi_type == "torus");
    CHECK(c.q_exponent == Rat(1));
    CHECK(c.q_value == Rat(3));
    CHECK(c.relevant == 1);
    CHECK(r.presentation.num_gens == 2);
    CHECK(r.presentation.m[0][1] == 0); // affine A1
    REQUIRE(r.parameters.size() == 2);
    CHECK(r.parameters[0] == QPoly::monomial(Rat(1)));
    CHECK(r.parameters[1] == QPoly::monomial(Rat(1)));
    CHECK(r.presentation_complete);
}

TEST_CASE("pipeline: SL2 with the quadratic theta has no theta walls") {
    BlockSpec spec = load("sl2_quadratic.json");
    Report r = run_pipeline(spec, nullptr);
    CHECK(r.theta_roots.empty());
    REQUIRE(r.classes.size() == 1);
    CHECK_FALSE(r.classes[0].in_theta);
    CHECK(r.classes[0].q_value == Rat(1));
    CHECK(r.classes[0].relevant == 0);
    CHECK(r.presentation.num_gens == 0);
    CHECK(r.omega_size == 1);
}

TEST_CASE("pipeline: GL2 with distinct characters is irreducible everywhere") {
    BlockSpec spec = load("gl2_regular.json");
    Report r = run_pipeline(spec, nullptr);
    CHECK(r.theta_roots.empty());
    for (const auto& c : r.classes) {
        CHECK_FALSE(c.in_theta);
        CHECK(c.relevant == 0);
    }
    CHECK(r.presentation.num_gens == 0);
}

TEST_CASE("pipeline: GL2 with theta1 = theta2 of order 3") {
    BlockSpec spec = load("gl2_theta3.json");
    Report r = run_pipeline(spec, nullptr);
    CHECK(r.theta_roots.size() == 2);
    REQUIRE(r.classes.size() == 1);
    CHECK(r.classes[0].in_theta);
    CHECK(r.classes[0].q_exponent == Rat(1));
    CHECK(r.classes[0].q_value == Rat(7));
    CHECK(r.presentation.num_gens == 2);
}

TEST_CASE("pipeline: SL3 gives the affine A2 presentation") {
    BlockSpec spec = load("sl3_trivial.json");
    Report r = run_pipeline(spec, nullptr);
    CHECK(r.classes.size() == 3);
    for (const auto& c : r.classes) {
        CHECK(c.in_theta);
        CHECK(c.q_exponent == Rat(1));
        CHECK(c.q_value == Rat(2));
        CHECK(c.relevant == 1);
    }
    CHECK(r.presentation.num_gens == 3);
    for (int s = 0; s < 3; ++s)
        for (int t = s + 1; t < 3; ++t) CHECK(r.presentation.m[s][t] == 3);
}

TEST_CASE("pipeline: twisted SL2 x SL2 gives the q^2 parameter") {
    BlockSpec spec = load("sl2sl2_swap.json");
    Report r = run_pipeline(spec, nullptr);
    REQUIRE(r.classes.size() == 1);
    CHECK(r.classes[0].theta_type == "A1x2");
    CHECK(r.classes[0].q_exponent == Rat(2));
    CHECK(r.classes[0].q_value == Rat(4));
    CHECK(r.presentation.num_gens == 2);
    for (const auto& p : r.parameters) CHECK(p == QPoly::monomial(Rat(2)));
}

TEST_CASE("pipeline: ramified A1 normalizes to half scale") {
    BlockSpec spec = load("ramified_a1.json");
    Report r = run_pipeline(spec, nullptr);
    for (const auto& [idx, ra] : r.normalization.scale) CHECK(ra == Rat(1, 2));
    REQUIRE(r.classes.size() == 1);
    CHECK(r.classes[0].in_theta);
    CHECK(r.classes[0].q_exponent == Rat(1));
    CHECK(r.classes[0].q_value == Rat(3));
    CHECK(r.inclusion_certified);
}

TEST_CASE("pipeline: GL3 with Levi and half-integral theta is supercuspidal-like") {
    BlockSpec spec = load("gl3_levi.json");
    Report r = run_pipeline(spec, nullptr);
    CHECK(r.theta_roots.size() == 2);
    CHECK(r.m_theta.size() == 2); // M_theta = G_theta
    for (const auto& c : r.classes) {
        CHECK_FALSE(c.in_theta);
        CHECK(c.relevant == 0);
    }
    CHECK(r.presentation.num_gens == 0);
}

TEST_CASE("pipeline: torus-only spec emits an empty wall list") {
    BlockSpec spec = load("torus_only.json");
    Report r = run_pipeline(spec, nullptr);
    CHECK(r.classes.empty());
    CHECK(r.presentation.num_gens == 0);
    std::string machine = emit_report(r, "machine");
    CHECK(machine.find("\"walls\"") != std::string::npos);
}

TEST_CASE("pipeline: ellipticity mismatch raises a certificate failure") {
    BlockSpec spec = load("invalid_ellipticity.json");
    CHECK_THROWS_AS(run_pipeline(spec, nullptr), CertificateError);
}

TEST_CASE("relevance verdict equals q_s != 1 wherever resolved") {
    for (const char* name :
         {"sl2_trivial.json", "sl2_quadratic.json", "gl2_regular.json",
          "gl2_theta3.json", "sl3_trivial.json", "sl2sl2_swap.json",
          "ramified_a1.json", "gl3_levi.json"}) {
        Report r = run_pipeline(load(name), nullptr);
        for (const auto& c : r.classes) {
            if (!c.q_value) continue;
            CHECK((c.relevant == 1) == (*c.q_value != Rat(1)));
        }
    }
}

TEST_CASE("oracle cross-checks agree with the pipeline") {
    for (const char* name :
         {"sl2_trivial.json", "sl2_quadratic.json", "gl2_regular.json",
          "gl2_theta3.json", "sl2sl2_swap.json", "ramified_a1.json",
          "su3_iwahori.json"}) {
        BlockSpec spec = load(name);
        spec.options.check_oracle = true;
        Report r = run_pipeline(spec, nullptr);
        CHECK(!r.oracle_checks.empty());
        for (const auto& oc : r.oracle_checks) CHECK(oc.match);
    }
}

TEST_CASE("machine reports are deterministic and carry the schema") {
    BlockSpec spec = load("sl2_trivial.json");
    Report r1 = run_pipeline(spec, nullptr);
    Report r2 = run_pipeline(spec, nullptr);
    std::string a = emit_report(r1, "machine");
    std::string b = emit_report(r2, "machine");
    CHECK(a == b);
    for (const char* key : {"\"walls\"", "\"q_s\"", "\"coxeter_matrix\"",
                            "\"certificates\"", "\"schema_version\""})
        CHECK(a.find(key) != std::string::npos);
    CHECK_THROWS_AS(emit_report(r1, "yaml"), ValidationError);
}

TEST_CASE("parameter tables") {
    ParameterTable t = load_parameter_table(fixture("params_default.json"));
    CHECK(t.entries.size() == 3);
    CHECK(t.find("A1", "torus", "trivial") != nullptr);
    CHECK(t.find("A1", "torus", "trivial")->exponent == Rat(1));
    CHECK(t.find("E8", "torus", "trivial") == nullptr);

    CHECK_NOTHROW(parse_parameter_table_json("{\"schema_version\": 1}", "inline"));
    std::string dup = R"({"schema_version": 1, "entries": [
        {"type": "A1", "levi": "torus", "cuspidal": "trivial", "exponent": "1"},
        {"type": "A1", "levi": "torus", "cuspidal": "trivial", "exponent": "2"}]})";
    CHECK_THROWS_AS(parse_parameter_table_json(dup, "inline"), ValidationError);
    std::string neg = R"({"schema_version": 1, "entries": [
        {"type": "A1", "levi": "torus", "cuspidal": "trivial", "exponent": "-1"}]})";
    CHECK_THROWS_AS(parse_parameter_table_json(neg, "inline"), ValidationError);
}

TEST_CASE("pipeline: M = G has no walls at all") {
    std::string text = R"({
      "schema_version": 1,
      "root_datum": {"rank": 2, "roots": [[1,-1],[-1,1]], "coroots": [[1,-1],[-1,1]]},
      "levi": [0, 1],
      "theta": {"s": ["0", "0"]},
      "point": {"x0": ["0", "0"]},
      "options": {"q": 3}
    })";
    BlockSpec spec = parse_spec_json(text, "inline");
    Report r = run_pipeline(spec, nullptr);
    CHECK(r.classes.empty());
    CHECK(r.presentation.num_gens == 0);
}

TEST_CASE("pipeline: cuspidal Levi datum needs the table") {
    BlockSpec spec = load("gl3_levi_s0.json");

    // Without a table, the wall class is honestly undecided.
    Report bare = run_pipeline(spec, nullptr);
    REQUIRE(bare.classes.size() == 1);
    CHECK(bare.classes[0].in_theta);
    CHECK(bare.classes[0].theta_type == "A2");
    CHECK(bare.classes[0].levi_type == "A1");
    CHECK(bare.classes[0].relevant == -1);
    CHECK_FALSE(bare.presentation_complete);
    CHECK(bare.presentation.num_gens == 0);
    std::string machine = emit_report(bare, "machine");
    CHECK(machine.find("not decidable here") != std::string::npos);

    // A user table entry for the class resolves it.
    std::string table_text = R"({"schema_version": 1, "entries": [
        {"type": "A2", "levi": "A1", "cuspidal": "sigma", "exponent": "2",
         "provenance": "user-supplied"}]})";
    ParameterTable table = parse_parameter_table_json(table_text, "inline");
    Report resolved = run_pipeline(spec, &table);
    REQUIRE(resolved.classes.size() == 1);
    CHECK(resolved.classes[0].q_exponent == Rat(2));
    CHECK(resolved.classes[0].q_value == Rat(9));
    CHECK(resolved.classes[0].relevant == 1);
    CHECK(resolved.presentation_complete);
    CHECK(resolved.presentation.num_gens == 2);
    for (const auto& p : resolved.parameters) CHECK(p == QPoly::monomial(Rat(2)));
}

TEST_CASE("pipeline: cyclic triple gives the cubic parameter") {
    BlockSpec spec = load("sl2cubed_cycle.json");
    spec.options.check_oracle = true; // exercises SL2(F_8)
    Report r = run_pipeline(spec, nullptr);
    REQUIRE(r.classes.size() == 1);
    CHECK(r.classes[0].theta_type == "A1x3");
    CHECK(r.classes[0].q_exponent == Rat(3));
    CHECK(r.classes[0].q_value == Rat(8));
    REQUIRE(!r.oracle_checks.empty());
    for (const auto& oc : r.oracle_checks) {
        CHECK(oc.group == "SL2(F_8)");
        CHECK(oc.match);
    }
}

TEST_CASE("pipeline: swap fixture at q = 3 checks against SL2(F_9)") {
    BlockSpec spec = load("sl2sl2_swap.json");
    spec.options.q = 3;
    spec.options.check_oracle = true;
    Report r = run_pipeline(spec, nullptr);
    REQUIRE(r.classes.size() == 1);
    CHECK(r.classes[0].q_value == Rat(9));
    REQUIRE(!r.oracle_checks.empty());
    for (const auto& oc : r.oracle_checks) {
        CHECK(oc.group == "SL2(F_9)");
        CHECK(oc.match);
    }
}

TEST_CASE("theta parameter denominators are bounded") {
    RootDatum d = validate_root_datum(1, {{2}, {-2}}, {{1}, {-1}});
    CHECK_THROWS_AS(
        make_theta_datum(d, {Rat(1, 1000003)}, FrobeniusAction::identity(1)),
        ValidationError);
}

TEST_CASE("pipeline: quasi-split twisted datum mixes oracle and table classes") {
    BlockSpec spec = load("su3_iwahori.json");

    // Without a table: the short-wall class resolves by the oracle shape,
    // the twisted-A2 class stays undecided.
    Report bare = run_pipeline(spec, nullptr);
    REQUIRE(bare.classes.size() == 2);
    int decided = -1, undecided = -1;
    for (int i = 0; i < 2; ++i)
        (bare.classes[i].relevant == 1 ? decided : undecided) = i;
    REQUIRE(decided >= 0);
    REQUIRE(undecided >= 0);
    CHECK(bare.classes[decided].theta_type == "A1");
    CHECK(bare.classes[decided].q_exponent == Rat(1));
    CHECK(bare.classes[undecided].theta_type == "2^A2");
    CHECK(bare.classes[undecided].relevant == -1);
    CHECK_FALSE(bare.presentation_complete);

    // With the example table the presentation closes up with unequal
    // parameters q and q^3 in an affine A1 shape.
    ParameterTable table =
        load_parameter_table(fixture("params_unitary_example.json"));
    Report full = run_pipeline(spec, &table);
    CHECK(full.presentation_complete);
    CHECK(full.presentation.num_gens == 2);
    CHECK(full.presentation.m[0][1] == 0);
    REQUIRE(full.parameters.size() == 2);
    std::multiset<std::string> params{full.parameters[0].str(),
                                      full.parameters[1].str()};
    CHECK(params == std::multiset<std::string>{"q", "q^3"});
    // specialized values at q = 2
    std::multiset<std::string> values;
    for (const auto& c : full.classes)
        if (c.q_value) values.insert(c.q_value->str());
    CHECK(values == std::multiset<std::string>{"2", "8"});
}

TEST_CASE("omega block feeds the twisted extension") {
    std::string text = R"({
      "schema_version": 1,
      "root_datum": {"rank": 1, "roots": [[2],[-2]], "coroots": [[1],[-1]]},
      "levi": [],
      "theta": {"s": ["0"]},
      "point": {"x0": ["1/5"]},
      "options": {"q": 3},
      "omega": {
        "size": 2,
        "table": [[0, 1], [1, 0]],
        "s_action": [[0, 1], [1, 0]],
        "mu": [["1", "1"], ["1", "-1"]]
      }
    })";
    BlockSpec spec = parse_spec_json(text, "inline");
    Report r = run_pipeline(spec, nullptr);
    CHECK(r.omega_size == 2);
    CHECK(r.presentation.num_gens == 2);

    // A bad omega block (action not a permutation of S) fails.
    std::string bad_action = R"({
      "schema_version": 1,
      "root_datum": {"rank": 1, "roots": [[2],[-2]], "coroots": [[1],[-1]]},
      "levi": [],
      "theta": {"s": ["0"]},
      "point": {"x0": ["1/5"]},
      "omega": {
        "size": 2,
        "table": [[0, 1], [1, 0]],
        "s_action": [[0, 1], [0, 0]]
      }
    })";
    BlockSpec spec_bad = parse_spec_json(bad_action, "inline");
    CHECK_THROWS_AS(run_pipeline(spec_bad, nullptr), ValidationError);
}

TEST_CASE("randomized theta sweep: pipeline completes and oracle agrees") {
    // Random stable characters over several data; every resolved class must
    // satisfy relevance <=> q != 1 and pass the oracle cross-check (the
    // oracle throws a CertificateError on any mismatch).
    std::mt19937 rng(4242);
    struct Base {
        RootDatum d;
        FrobeniusAction f;
        QVec x0;
        long long q;
    };
    std::vector<Base> bases;
    bases.push_back({validate_root_datum(1, {{2}, {-2}}, {{1}, {-1}}),
                     FrobeniusAction::identity(1),
                     {Rat(1, 5)},
                     3});
    bases.push_back({validate_root_datum(2, {{1, -1}, {-1, 1}}, {{1, -1}, {-1, 1}}),
                     FrobeniusAction::identity(2),
                     {Rat(1, 5), Rat(0)},
                     5});
    bases.push_back({validate_root_datum(
                         2, {{2, -1}, {-1, 2}, {1, 1}, {-2, 1}, {1, -2}, {-1, -1}},
                         {{1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}, {-1, -1}}),
                     FrobeniusAction::identity(2),
                     {Rat(1, 7), Rat(1, 49)},
                     2});
    bases.push_back(
        {validate_root_datum(
             2,
             {{1, -1}, {-1, 1}, {1, 1}, {-1, -1}, {2, 0}, {-2, 0}, {0, 2}, {0, -2}},
             {{1, -1}, {-1, 1}, {1, 1}, {-1, -1}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}),
         FrobeniusAction::identity(2),
         {Rat(1, 7), Rat(1, 49)},
         3});
    {
        RootDatum d = validate_root_datum(2, {{2, 0}, {-2, 0}, {0, 2}, {0, -2}},
                                          {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
        FrobeniusAction f = validate_frobenius(d, {{0, 1}, {1, 0}}, 2);
        bases.push_back({d, f, {Rat(1, 5), Rat(1, 5)}, 2});
    }

    int executed = 0;
    for (const auto& base : bases) {
        for (int trial = 0; trial < 15; ++trial) {
            QVec s(base.d.rank);
            for (auto& x : s) x = Rat((int)(rng() % 12), 1 + (int)(rng() % 6));
            BlockSpec spec;
            spec.datum = base.d;
            spec.frob = base.f;
            spec.levels.assign(base.d.roots.size(), LevelSet{Rat(0), Rat(1)});
            try {
                spec.theta = make_theta_datum(base.d, s, base.f);
            } catch (const ValidationError&) {
                continue; // not Frobenius-stable
            }
            spec.x0 = base.x0;
            spec.options.q = base.q;
            spec.options.check_oracle = true;
            Report r = run_pipeline(spec, nullptr);
            for (const auto& c : r.classes)
                if (c.q_value) CHECK((c.relevant == 1) == (*c.q_value != Rat(1)));
            for (const auto& oc : r.oracle_checks) CHECK(oc.match);
            ++executed;
        }
    }
    CHECK(executed >= 50);
}

TEST_CASE("pipeline resolves from the table when the oracle shape fails") {
    // Feed the ramified fixture through the table path by renaming its class:
    // with the default table present, the principal-series path still wins,
    // so the table must not change the result.
    BlockSpec spec = load("sl2_trivial.json");
    ParameterTable table = load_parameter_table(fixture("params_default.json"));
    Report with = run_pipeline(spec, &table);
    Report without = run_pipeline(spec, nullptr);
    CHECK(emit_report(with, "machine") == emit_report(without, "machine"));
}
