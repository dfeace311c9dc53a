#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "zmc/catalog.hpp"
#include "zmc/constraints.hpp"

using namespace zmc;

TEST_CASE("registry lists every entry once") {
    const auto names = entry_names();
    CHECK(names.size() == 27);
    CHECK(std::set<std::string>(names.begin(), names.end()).size() == names.size());
    const auto summaries = list_entries();
    REQUIRE(summaries.size() == names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        CHECK(summaries[i].name == names[i]);
        CHECK_FALSE(summaries[i].implicit_string.empty());
        CHECK_FALSE(summaries[i].section_ref.empty());
    }
}

TEST_CASE("aliases resolve to the same surface") {
    const std::vector<std::pair<std::string, std::string>> pairs{
        {"exp-same-sign", "3.1-exp-same-sign"},
        {"4.1.2-m-1", "scherk-timelike"},
        {"scherk-timelike-second-kind", "4.1.1-m-1"},
        {"tanh-triple", "4.1.4"},
        {"4.2.2-m0.5", "4.2.2-m-surface"},
        {"5.1", "k-neg-example-1"}};
    for (const auto& [alias, name] : pairs) {
        CAPTURE(alias);
        const CatalogEntry a = instantiate(alias), b = instantiate(name);
        CHECK(a.name == b.name);
        CHECK(a.surface.constants() == b.surface.constants());
    }
    const auto accepted = accepted_names();
    CHECK(std::find(accepted.begin(), accepted.end(), "4.2.1") != accepted.end());
}

TEST_CASE("family parameters") {
    CHECK(instantiate("4.2.1", {{"m", 0.5}}).surface.constants() == instantiate("4.2.1-v-surface").surface.constants());
    const CatalogEntry e = instantiate("4.2.1", {{"m", 2.0}});
    CHECK(residual_norm(e.surface.constants()) <= 1e-12);
    CHECK_FALSE(e.class_stated);
    CHECK(instantiate("4.2.1-m1").class_stated);

    CHECK_THROWS_AS(instantiate("no-such-surface"), UnknownEntry);
    CHECK_THROWS_AS(instantiate("4.2.1", {{"m", -1.0}}), ParamOutOfRange);
    CHECK_THROWS_AS(instantiate("4.2.1", {{"m", 0.0}}), ParamOutOfRange);
    CHECK_THROWS_AS(instantiate("4.2.1", {{"q", 1.0}}), ParamOutOfRange);
    CHECK_THROWS_AS(instantiate("4.2.1", {{"m", NAN}}), ParamOutOfRange);
    CHECK_THROWS_AS(instantiate("4.1.1", {{"m", 0.5}}), ParamOutOfRange);
}

TEST_CASE("closed forms agree with the numerical profiles") {
    int with_forms = 0;
    for (const std::string& name : entry_names()) {
        const CatalogEntry e = instantiate(name);
        if (!e.has_closed_forms()) continue;
        CAPTURE(name);
        CHECK(closed_form_crosscheck(e, 100) <= 1e-8);
        ++with_forms;
    }
    CHECK(with_forms >= 20);
}

TEST_CASE("declared periods and lightlike loci hold") {
    for (const std::string& name : entry_names()) {
        CAPTURE(name);
        const CatalogEntry e = instantiate(name);
        for (const PeriodClaim& c : e.periods) {
            CHECK(period_check(e, c, 50) <= 1e-12);
        }
        for (const Line& l : e.lightlike_loci) {
            const LocusReport r = lightlike_locus_check(e.surface, l);
            CHECK(r.samples > 0);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("serialized catalog has one record per entry") {
    const std::string data = serialize_catalog();
    std::size_t records = 0;
    for (std::size_t at = 0; (at = data.find("\n[entry]\n", at)) != std::string::npos; ++at) ++records;
    CHECK(records == 27);
    for (const std::string& name : entry_names()) {
        CHECK(data.find("name = " + name + "\n") != std::string::npos);
    }
    const std::string rec =
        serialize_record("probe", instantiate("4.1.4").surface.constants(), {1, 1, -1}, {}, std::nullopt, {});
    CHECK(rec.rfind("[entry]", 0) == 0);
    CHECK(rec.find("name = probe") != std::string::npos);
}
