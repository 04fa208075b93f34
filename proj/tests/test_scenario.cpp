#include "oncodp/errors.hpp"
#include "oncodp/scenario.hpp"
#include "oncodp/scenario_io.hpp"

#include <doctest.h>

using namespace oncodp;

namespace {

template <class E, class F> std::string path_of(F&& f) {
    try {
        f();
    } catch (const E& e) {
        return e.path();
    }
    return "<no throw>";
}

} // namespace

TEST_CASE("reference scenario is accepted") {
    const auto sc = io::preset("base");
    CHECK_NOTHROW(validate_scenario(sc));
    CHECK(&validate_scenario(sc) == &sc);
}

TEST_CASE("row that sums to 1.1 is a RowSumError naming the row") {
    auto sc = io::preset("base");
    sc.actions[1].phi_row = {0.0, 0.6, 0.5};
    CHECK_THROWS_AS(validate_scenario(sc), RowSumError);
    CHECK(path_of<RowSumError>([&] { validate_scenario(sc); }) == "/scenario/actions/1/phi_row");
    try {
        validate_scenario(sc);
    } catch (const RowSumError& e) {
        CHECK(std::string(e.what()).find("M2") != std::string::npos);
        CHECK(std::string(e.what()).find("1.1") != std::string::npos);
    }
}

TEST_CASE("negative probability is a SignError at the entry") {
    auto sc = io::preset("base");
    sc.actions[0].phi_row = {0.0, 1.2, -0.2};
    CHECK(path_of<SignError>([&] { validate_scenario(sc); }) == "/scenario/actions/0/phi_row/2");
}

TEST_CASE("exponent below one is a StructureError") {
    auto sc = io::preset("base");
    sc.reward.d_phi = 0.5;
    CHECK(path_of<StructureError>([&] { validate_scenario(sc); }) == "/scenario/reward/d_phi");
    sc.reward.d_phi = 2.0;
    sc.reward.d_tau = 0.99;
    CHECK(path_of<StructureError>([&] { validate_scenario(sc); }) == "/scenario/reward/d_tau");
}

TEST_CASE("action type counts and order") {
    auto sc = io::preset("base");
    SUBCASE("two type1") {
        sc.actions[1].kind = ModalityKind::Type1;
        CHECK_THROWS_AS(validate_scenario(sc), StructureError);
    }
    SUBCASE("no type2") {
        sc.actions.erase(sc.actions.begin() + 1);
        CHECK_THROWS_AS(validate_scenario(sc), StructureError);
    }
    SUBCASE("no type3") {
        sc.actions.pop_back();
        CHECK_THROWS_AS(validate_scenario(sc), StructureError);
    }
    SUBCASE("surveillance first") {
        std::rotate(sc.actions.rbegin(), sc.actions.rbegin() + 1, sc.actions.rend());
        CHECK_THROWS_AS(validate_scenario(sc), StructureError);
    }
    SUBCASE("duplicate names") {
        sc.actions[1].name = "M1";
        CHECK(path_of<StructureError>([&] { validate_scenario(sc); }) == "/scenario/actions/1/name");
    }
}

TEST_CASE("one-increment structural zeros") {
    auto sc = io::preset("base");
    SUBCASE("treatment cannot lower side effect") {
        sc.actions[1].phi_row = {0.1, 0.5, 0.4};
        CHECK(path_of<StructureError>([&] { validate_scenario(sc); }) ==
              "/scenario/actions/1/phi_row/0");
    }
    SUBCASE("treatment cannot grow tumor") {
        sc.actions[0].tau_row = {0.7, 0.2, 0.1};
        CHECK(path_of<StructureError>([&] { validate_scenario(sc); }) ==
              "/scenario/actions/0/tau_row/2");
    }
    SUBCASE("surveillance cannot shrink tumor") {
        sc.actions[2].tau_row = {0.1, 0.2, 0.7};
        CHECK(path_of<StructureError>([&] { validate_scenario(sc); }) ==
              "/scenario/actions/2/tau_row/0");
    }
}

TEST_CASE("dominance chain with several type2 modalities") {
    auto sc = io::preset("table5-four-actions");
    CHECK_NOTHROW(validate_scenario(sc));
    std::swap(sc.actions[1], sc.actions[2]);
    CHECK_THROWS_AS(validate_scenario(sc), StructureError);
}

TEST_CASE("bounds and horizon") {
    auto sc = io::preset("base");
    sc.horizon = 0;
    CHECK(path_of<StructureError>([&] { validate_scenario(sc); }) == "/scenario/horizon");
    sc.horizon = 3;
    sc.m = 0;
    CHECK(path_of<StructureError>([&] { validate_scenario(sc); }) == "/scenario/m");
}

TEST_CASE("every preset validates and its treatment order is risk/reward dominant") {
    for (const auto& name : io::preset_names()) {
        CAPTURE(name);
        const auto sc = io::preset(name);
        CHECK_NOTHROW(validate_scenario(sc));
        CHECK(sc.horizon == 3);
        CHECK(sc.m == 10);
        CHECK(sc.n == 10);
        for (std::size_t i = 1; i < sc.actions.size(); ++i) {
            CHECK(sc.actions[i].phi_row.up <= sc.actions[i - 1].phi_row.up);
            CHECK(sc.actions[i].tau_row.down <= sc.actions[i - 1].tau_row.down);
        }
    }
}
