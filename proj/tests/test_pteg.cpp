#include <doctest.h>

#include "maxplus/errors.hpp"
#include "maxplus/pteg.hpp"

#include "support.hpp"

using namespace maxplus;
using testsupport::fig1_a0;
using testsupport::fig1_a1;
using testsupport::fig1_b0;
using testsupport::fig1_b1;
using testsupport::fig1_c;
using testsupport::fig1_i;
using testsupport::fig1_p;
using testsupport::fig1_period_set;
using testsupport::fig1_pteg;
using testsupport::fig1_spec;
using testsupport::fig1_star6;
using testsupport::rat;
using testsupport::Rng;

namespace {

EventGraphSpec empty_period_spec() {
    // Two places in opposite directions whose constant circuit has weight
    // 4 > 0 for every lambda: x2 - x1 >= 5 and x2 - x1 <= 1.
    EventGraphSpec spec;
    spec.transitions = {"a", "b"};
    spec.places = {
        {0, 1, 0, rat("5"), std::nullopt},
        {1, 0, 0, rat("0"), rat("1")},
    };
    return spec;
}

} // namespace

TEST_SUITE("pteg") {

TEST_CASE("validate_spec accepts the example model") {
    CHECK(validate_spec(fig1_spec()).empty());
}

TEST_CASE("validate_spec rejects broken places") {
    EventGraphSpec spec = fig1_spec();
    spec.places[0].lower = rat("5");
    spec.places[0].upper = rat("3");
    auto diagnostics = validate_spec(spec);
    REQUIRE(diagnostics.size() == 1);
    CHECK(diagnostics[0].place == 0);
    CHECK(diagnostics[0].message.find("crossed interval") != std::string::npos);

    spec = fig1_spec();
    spec.places[1].from = 7;
    CHECK(validate_spec(spec).size() == 1);

    spec = fig1_spec();
    spec.places[2].lower = rat("-1");
    CHECK(!validate_spec(spec).empty());

    spec = fig1_spec();
    spec.places[3].marking = -2;
    CHECK(!validate_spec(spec).empty());

    spec = fig1_spec();
    spec.transitions[1] = "t1";
    CHECK(!validate_spec(spec).empty());

    // Duplicate places whose intersection vanishes.
    spec = fig1_spec();
    spec.places.push_back({0, 1, 0, rat("7"), std::nullopt}); // merged with [2,3]
    auto dup = validate_spec(spec);
    REQUIRE(dup.size() == 1);
    CHECK(dup[0].message.find("empty interval") != std::string::npos);

    // Normalization size guard.
    spec = fig1_spec();
    spec.places[0].marking = 900000000;
    CHECK(!validate_spec(spec).empty());
}

TEST_CASE("normalization counts fresh transitions") {
    EventGraphSpec spec;
    spec.transitions = {"a", "b"};
    spec.places = {{0, 1, 3, rat("1"), rat("2")}};
    Normalization norm = normalize(spec);
    CHECK(norm.spec.transition_count() == 4);
    CHECK(norm.graph.n == 4);
    CHECK(norm.transition_map == std::vector<int>{0, 1});

    // Chain: a -> q1 -> q2 -> b, zero-time hops then the original interval.
    REQUIRE(norm.spec.places.size() == 3);
    CHECK(norm.spec.places[0].from == 0);
    CHECK(norm.spec.places[0].marking == 1);
    CHECK(norm.spec.places[0].lower == 0);
    CHECK(norm.spec.places[0].upper == rat("0"));
    CHECK(norm.spec.places[2].to == 1);
    CHECK(norm.spec.places[2].lower == rat("1"));
    CHECK(norm.spec.places[2].upper == rat("2"));

    EventGraphSpec two;
    two.transitions = {"a", "b", "c"};
    two.places = {{0, 1, 2, rat("0"), std::nullopt}, {1, 2, 2, rat("1"), rat("4")}};
    CHECK(normalize(two).spec.transition_count() == 5);
}

TEST_CASE("normalization is the identity on 0/1 markings") {
    Normalization norm = normalize(fig1_spec());
    CHECK(norm.spec == fig1_spec());
    CHECK(norm.graph.a0 == fig1_a0());
    CHECK(norm.graph.a1 == fig1_a1());
    CHECK(norm.graph.b0 == fig1_b0());
    CHECK(norm.graph.b1 == fig1_b1());
}

TEST_CASE("normalize rejects invalid specs") {
    EventGraphSpec spec = fig1_spec();
    spec.places[0].lower = rat("9");
    spec.places[0].upper = rat("1");
    CHECK_THROWS_AS(normalize(spec), ValidationError);
}

TEST_CASE("dynamics matrices of the example model") {
    Pteg g = dynamics_matrices(fig1_spec());
    CHECK(g.a0 == fig1_a0());
    CHECK(g.a1 == fig1_a1());
    CHECK(g.b0 == fig1_b0());
    CHECK(g.b1 == fig1_b1());
}

TEST_CASE("dynamics matrices corner cases") {
    EventGraphSpec empty;
    empty.transitions = {"a", "b"};
    Pteg g = dynamics_matrices(empty);
    CHECK(g.a0 == MpMatrix::all_bottom(2, 2));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            CHECK(g.b0(i, j) == ExtScalar::top());
            CHECK(g.b1(i, j) == ExtScalar::top());
        }
    }

    // Duplicates merge to the tightest interval [2, 5].
    EventGraphSpec dup;
    dup.transitions = {"a", "b"};
    dup.places = {{0, 1, 1, rat("1"), rat("5")}, {0, 1, 1, rat("2"), rat("9")}};
    Pteg merged = dynamics_matrices(dup);
    CHECK(merged.a1(1, 0) == ExtScalar(2));
    CHECK(merged.b1(1, 0) == ExtScalar(5));

    EventGraphSpec marked;
    marked.transitions = {"a"};
    marked.places = {{0, 0, 2, rat("0"), std::nullopt}};
    CHECK_THROWS_AS(dynamics_matrices(marked), DomainError);
}

TEST_CASE("pic reduction of the example model") {
    PicTriple t = pic_reduction(fig1_pteg());
    CHECK(t.p == fig1_p());
    CHECK(t.i == fig1_i());
    CHECK(t.c == fig1_c());
}

TEST_CASE("pic reduction corner cases") {
    EventGraphSpec empty;
    empty.transitions = {"a", "b"};
    PicTriple t = pic_reduction(dynamics_matrices(empty));
    CHECK(t.p == MpMatrix::all_bottom(2, 2));
    CHECK(t.i == MpMatrix::identity(2));
    CHECK(t.c == MpMatrix::all_bottom(2, 2));
}

TEST_CASE("tensor blocks") {
    TensorBlocks t2 = tensor_blocks(2, rat("4"));
    CHECK(t2.p == testsupport::mp({{"-inf", "0"}, {"8", "-inf"}}));
    CHECK(t2.i == testsupport::mp({{"-inf", "-8"}, {"0", "-inf"}}));
    CHECK(t2.c == MpMatrix::identity(2));

    TensorBlocks t1 = tensor_blocks(1, rat("4"));
    CHECK(t1.p == testsupport::mp({{"4"}}));
    CHECK(t1.i == testsupport::mp({{"-4"}}));
    CHECK(t1.c == testsupport::mp({{"0"}}));

    CHECK_THROWS_AS(tensor_blocks(0, rat("1")), DomainError);
}

TEST_CASE("tensor block identities (randomized lambda)") {
    Rng rng(61);
    for (int d = 1; d <= 5; ++d) {
        Rat lambda = rng.nonneg_rational(9, 3);
        TensorBlocks t = tensor_blocks(d, lambda);
        MpMatrix scaled_identity = scalar_mul(ExtScalar(Rat(d) * lambda), MpMatrix::identity(d));
        MpMatrix neg_scaled = scalar_mul(ExtScalar(Rat(-d) * lambda), MpMatrix::identity(d));
        CHECK(mpow(t.p, d) == scaled_identity);
        CHECK(mpow(t.i, d) == neg_scaled);
        CHECK(otimes(t.p, t.i) == MpMatrix::identity(d));
        CHECK(otimes(t.i, t.p) == MpMatrix::identity(d));
    }
}

TEST_CASE("tensor system star reproduces the documented matrix") {
    MpMatrix system = tensor_system(fig1_pteg(), 2, rat("4"));
    CHECK(kleene_star(system) == fig1_star6());
}

TEST_CASE("tensor system for d = 1 is the evaluated parametric matrix") {
    for (const char* lambda : {"7/2", "4", "0", "11/3"}) {
        CHECK(tensor_system(fig1_pteg(), 1, rat(lambda)) ==
              eval_pic(fig1_p(), fig1_i(), fig1_c(), rat(lambda)));
    }
}

TEST_CASE("lambda shifts touch only the wrap-around blocks") {
    const int n = 3;
    const int d = 3;
    MpMatrix base = tensor_system(fig1_pteg(), d, rat("7/2"));
    MpMatrix shifted = tensor_system(fig1_pteg(), d, rat("4"));
    for (int i = 0; i < d * n; ++i) {
        for (int j = 0; j < d * n; ++j) {
            int block_row = i / n;
            int block_col = j / n;
            bool wrap = (block_row == d - 1 && block_col == 0) ||
                        (block_row == 0 && block_col == d - 1);
            if (!wrap) {
                CHECK(base(i, j) == shifted(i, j));
            }
        }
    }
}

TEST_CASE("tensor PIC evaluation identity") {
    for (int d : {1, 2, 3}) {
        PicTriple stacked = tensor_pic(fig1_pteg(), d);
        for (const char* lambda : {"7/2", "4", "0"}) {
            Rat mu = Rat(d) * rat(lambda);
            CHECK(eval_pic(stacked.p, stacked.i, stacked.c, mu) ==
                  tensor_system(fig1_pteg(), d, rat(lambda)));
        }
    }
}

TEST_CASE("tensor PIC at lambda zero merges into the constant part") {
    PicTriple stacked = tensor_pic(fig1_pteg(), 2);
    CHECK(tensor_system(fig1_pteg(), 2, rat("0")) ==
          oplus(oplus(stacked.p, stacked.i), stacked.c));
}

TEST_CASE("period sets of the example model") {
    Pteg g = fig1_pteg();
    for (int d : {1, 2, 3, 4}) {
        CHECK(period_set(g, d, PeriodMode::theorem2, SolverKind::fast) == fig1_period_set());
        CHECK(period_set(g, d, PeriodMode::theorem2, SolverKind::exact) == fig1_period_set());
        CHECK(period_set(g, d, PeriodMode::tensor, SolverKind::fast) == fig1_period_set());
        CHECK(period_set(g, d, PeriodMode::tensor, SolverKind::exact) == fig1_period_set());
    }
}

TEST_CASE("period set of a place-free graph") {
    EventGraphSpec empty;
    empty.transitions = {"a", "b", "c"};
    Pteg g = dynamics_matrices(empty);
    CHECK(period_set(g, 1) == FeasibleSet::at_least(rat("0")));
    CHECK(period_set(g, 3, PeriodMode::tensor) == FeasibleSet::at_least(rat("0")));
    CHECK(bounded_consistency(g));
}

TEST_CASE("inconsistent constant constraints yield the empty period set") {
    Pteg g = dynamics_matrices(empty_period_spec());
    CHECK(period_set(g, 1) == FeasibleSet::empty());
    CHECK(period_set(g, 2, PeriodMode::tensor) == FeasibleSet::empty());
    CHECK(!bounded_consistency(g));
    CHECK(bounded_consistency(fig1_pteg()));
}

TEST_CASE("trajectory extension rule") {
    Trajectory t(2, rat("4"), {{rat("0"), rat("5/2")}, {rat("7/2"), rat("13/2")}});
    CHECK(t.at(0) == std::vector<Rat>{rat("0"), rat("5/2")});
    CHECK(t.at(1) == std::vector<Rat>{rat("7/2"), rat("13/2")});
    CHECK(t.at(2) == std::vector<Rat>{rat("8"), rat("21/2")});
    CHECK(t.at(5) == std::vector<Rat>{rat("39/2"), rat("45/2")});
    CHECK_THROWS_AS(t.at(-1), DomainError);
    CHECK_THROWS_AS(Trajectory(0, rat("1"), {}), DomainError);
    CHECK_THROWS_AS(Trajectory(1, rat("-1"), {{rat("0")}}), DomainError);
    CHECK_THROWS_AS(Trajectory(2, rat("1"), {{rat("0")}}), DimensionError);
}

TEST_CASE("synthesis reproduces the documented trajectory") {
    std::vector<Rat> u(6, Rat(0));
    Trajectory t = synthesize(fig1_pteg(), 2, rat("4"), u);
    CHECK(t.at(0) == std::vector<Rat>{rat("0"), rat("5/2"), rat("6")});
    CHECK(t.at(1) == std::vector<Rat>{rat("7/2"), rat("13/2"), rat("10")});
    CHECK(validate_trajectory(fig1_pteg(), t, 10).pass());
}

TEST_CASE("synthesis validates for many seed parameters") {
    Rng rng(65);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rat> u = rng.finite_vector(6, 15, 4);
        Trajectory t = synthesize(fig1_pteg(), 2, rat("4"), u);
        CHECK(validate_trajectory(fig1_pteg(), t, 6).pass());
    }
}

TEST_CASE("synthesis is shift-equivariant in u") {
    std::vector<Rat> u(6, Rat(0));
    Trajectory base = synthesize(fig1_pteg(), 2, rat("4"), u);
    std::vector<Rat> shifted_u(6, rat("7/3"));
    Trajectory shifted = synthesize(fig1_pteg(), 2, rat("4"), shifted_u);
    for (long k = 0; k <= 4; ++k) {
        std::vector<Rat> a = base.at(k);
        std::vector<Rat> b = shifted.at(k);
        for (size_t v = 0; v < a.size(); ++v) {
            CHECK(b[v] == a[v] + rat("7/3"));
        }
    }
}

TEST_CASE("synthesis at the lower endpoint validates") {
    std::vector<Rat> u(3, Rat(0));
    Trajectory t = synthesize(fig1_pteg(), 1, rat("7/2"), u);
    CHECK(validate_trajectory(fig1_pteg(), t, 12).pass());
}

TEST_CASE("synthesis rejects inadmissible periods with a witness") {
    std::vector<Rat> u(3, Rat(0));
    CHECK_THROWS_AS(synthesize(fig1_pteg(), 1, rat("5"), u), PositiveCircuitError);
    CHECK_THROWS_AS(synthesize(fig1_pteg(), 1, rat("3"), u), PositiveCircuitError);
    std::vector<Rat> u6(6, Rat(0));
    CHECK_THROWS_AS(synthesize(fig1_pteg(), 2, rat("5"), u6), PositiveCircuitError);
    CHECK_THROWS_AS(synthesize(fig1_pteg(), 2, rat("4"), u), DimensionError);
}

TEST_CASE("trajectory validation pinpoints violations") {
    std::vector<Rat> u(6, Rat(0));
    Trajectory good = synthesize(fig1_pteg(), 2, rat("4"), u);
    auto seeds = good.seeds();
    seeds[0][0] = rat("-1");
    Trajectory bad(2, rat("4"), seeds);
    TrajectoryReport report = validate_trajectory(fig1_pteg(), bad, 10);
    CHECK(!report.pass());
    bool found_b0 = false;
    for (const auto& v : report.violations) {
        if (v.constraint == "B0" && v.i == 1 && v.j == 0 && v.k == 0) {
            found_b0 = true;
        }
    }
    CHECK(found_b0);
}

TEST_CASE("any non-decreasing trajectory fits a place-free graph") {
    EventGraphSpec empty;
    empty.transitions = {"a", "b"};
    Pteg g = dynamics_matrices(empty);
    Trajectory t(1, rat("3"), {{rat("0"), rat("10")}});
    CHECK(validate_trajectory(g, t, 5).pass());
}

TEST_CASE("one-periodic oracle on the example model") {
    EventGraphSpec spec = fig1_spec();
    CHECK(oracle_1periodic(spec, rat("4")));
    CHECK(oracle_1periodic(spec, rat("7/2")));
    CHECK(oracle_1periodic(spec, rat("15/4")));
    CHECK(!oracle_1periodic(spec, rat("3")));
    CHECK(!oracle_1periodic(spec, rat("5")));
    CHECK(!oracle_1periodic(spec, rat("-1")));
}

TEST_CASE("one-periodic oracle on a double-marked self-loop") {
    EventGraphSpec spec;
    spec.transitions = {"a"};
    spec.places = {{0, 0, 2, rat("10"), rat("10")}};
    CHECK(oracle_1periodic(spec, rat("5")));
    CHECK(!oracle_1periodic(spec, rat("9/2")));
    CHECK(!oracle_1periodic(spec, rat("11/2")));

    Normalization norm = normalize(spec);
    CHECK(period_set(norm.graph, 1) == FeasibleSet::point(rat("5")));
}

TEST_CASE("oracle agrees with the normalized period set (randomized)") {
    Rng rng(62);
    for (int trial = 0; trial < 25; ++trial) {
        EventGraphSpec spec = rng.raw_spec(static_cast<int>(rng.uniform(1, 4)), 3);
        Normalization norm = normalize(spec);
        FeasibleSet set = period_set(norm.graph, 1);
        for (int probe = 0; probe < 20; ++probe) {
            Rat lambda = rng.nonneg_rational(12, 4);
            CAPTURE(trial);
            CAPTURE(rat_str(lambda));
            CHECK(oracle_1periodic(spec, lambda) == set.contains(lambda));
        }
    }
}

TEST_CASE("period sets are d-invariant and non-negative (randomized)") {
    Rng rng(63);
    for (int trial = 0; trial < 25; ++trial) {
        Pteg g = rng.pteg(static_cast<int>(rng.uniform(1, 4)));
        FeasibleSet base = period_set(g, 1);
        if (!base.is_empty()) {
            CHECK(!base.lo_unbounded());
            CHECK(base.lo() >= 0);
        }
        for (int d : {2, 3}) {
            CHECK(period_set(g, d, PeriodMode::tensor) == base);
        }
    }
}

TEST_CASE("synthesized trajectories validate across the period set (randomized)") {
    Rng rng(64);
    int accepted = 0;
    while (accepted < 15) {
        Pteg g = rng.pteg(static_cast<int>(rng.uniform(1, 4)));
        FeasibleSet set = period_set(g, 1);
        if (set.is_empty() || set.lo_unbounded()) {
            continue;
        }
        ++accepted;
        Rat lambda = set.hi_unbounded() ? Rat(set.lo() + 1) : Rat((set.lo() + set.hi()) / 2);
        for (int d : {1, 2}) {
            std::vector<Rat> u;
            for (int k = 0; k < d * g.n; ++k) {
                u.push_back(rng.rational(5, 2));
            }
            Trajectory t = synthesize(g, d, lambda, u);
            CHECK(validate_trajectory(g, t, 3 * d).pass());
        }
        if (!set.hi_unbounded()) {
            std::vector<Rat> u(g.n, Rat(0));
            CHECK_THROWS_AS(synthesize(g, 1, set.hi() + rat("1/1000"), u),
                            PositiveCircuitError);
            if (set.lo() > 0) {
                CHECK_THROWS_AS(synthesize(g, 1, set.lo() - rat("1/1000"), u),
                                PositiveCircuitError);
            }
        }
    }
}

} // TEST_SUITE
