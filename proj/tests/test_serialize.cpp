#include <gtest/gtest.h>

#include "gapred/serialize.hpp"
#include "support.hpp"

using namespace gapred;

namespace {

template <class T>
void expect_round_trip(const T& x) {
    std::string text = serialize(x);
    T back = deserialize_as<T>(text);
    EXPECT_EQ(back, x);
    EXPECT_EQ(serialize(back), text);
}

}  // namespace

TEST(Serialize, SetSystemRoundTrip) {
    expect_round_trip(SetSystem{4, {{0, 1}, {2, 3}}});
    expect_round_trip(SetSystem{});
}

TEST(Serialize, EveryKindRoundTrips) {
    expect_round_trip(ColoredSetSystem{SetSystem{3, {{0}, {1, 2}}}, {1, 0}, 2});
    expect_round_trip(WeightedSetSystem{ColoredSetSystem{SetSystem{2, {{0}, {0, 1}}}, {0, 0}, 1}, {3, 1}});
    expect_round_trip(WeightedSetSystem{SetSystem{2, {{1}}}, {2, 5}});
    expect_round_trip(ValuedTwoCsp{{{"a", 2}, {"b", 1}}, {{0, 1, {{Rational(1, 3)}, {Rational(0)}}}}});
    expect_round_trip(WeightedTwoCsp{{{"a", 2}, {"b", 2}}, {{1, 0, 4, {{0, 0}, {1, 1}}}}});
    expect_round_trip(line_metric({0, 2, 3}, {0, 1}, {1, 2}));
    expect_round_trip(MaxCoverInstance{{{0}, {1}}, {{0, 1}}, {{0, 0}, {1, 1}}});
}

TEST(Serialize, DocumentCarriesKindAndVersion) {
    Json j = Json::parse(serialize(SetSystem{1, {{0}}}));
    EXPECT_EQ(j["kind"], "set_system");
    EXPECT_EQ(j["version"], kDocumentVersion);
}

TEST(Serialize, OutOfRangeElementIsValidationError) {
    std::string doc = R"({"kind":"set_system","version":1,"universe_size":4,"sets":[[0,7]]})";
    EXPECT_THROW(deserialize(doc), ValidationError);
}

TEST(Serialize, RationalIsNormalizedWithNote) {
    std::string doc = R"({"kind":"vcsp","version":1,
        "variables":[{"name":"a","alphabet_size":1},{"name":"b","alphabet_size":1}],
        "edges":[{"u":0,"v":1,"value_table":[[[6,8]]]}]})";
    std::vector<std::string> notes;
    auto csp = deserialize_as<ValuedTwoCsp>(doc, &notes);
    EXPECT_EQ(csp.edges[0].table[0][0], Rational(3, 4));
    ASSERT_EQ(notes.size(), 1u);
    EXPECT_NE(notes[0].find("normalized 6/8 to 3/4"), std::string::npos) << notes[0];
}

TEST(Serialize, MalformedJsonReportsBytePosition) {
    try {
        deserialize(R"({"kind": "set_system", )");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(e.position().find("byte"), std::string::npos);
    }
}

TEST(Serialize, SchemaErrorsNameTheField) {
    try {
        deserialize(R"({"kind":"set_system","version":1,"universe_size":"four","sets":[]})");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), "/universe_size");
    }
    EXPECT_THROW(deserialize(R"({"kind":"nope","version":1})"), ParseError);
    EXPECT_THROW(deserialize(R"({"kind":"set_system","version":99,"universe_size":0,"sets":[]})"), ParseError);
    EXPECT_THROW(deserialize_as<MetricInstance>(serialize(SetSystem{})), ParseError);
}

TEST(Serialize, RandomInstancesRoundTripBitExact) {
    Rng rng(21);
    for (int it = 0; it < 100; ++it) {
        int k = static_cast<int>(rng.range(1, 3));
        auto any = ref::random_system(rng, 10, 6, k, it % 2 == 1);
        std::visit([](const auto& x) { expect_round_trip(x); }, any);
        expect_round_trip(gen_valued_csp({3, 3, static_cast<int>(rng.range(1, 3)), 7, rng.next()}));
        expect_round_trip(ref::random_metric(rng, static_cast<int>(rng.range(2, 7)), 2, 20));
        expect_round_trip(gen_maxcover({2, 2, 2, 2, Rational(1, 2), rng.next(), it % 3 == 0}));
    }
}
