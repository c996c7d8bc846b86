#include <gtest/gtest.h>

#include <cmath>

#include "json.hpp"
#include "pii/table.hpp"

using namespace pii;

TEST(Serialize, EmptyTableIsHeaderOnly) {
    DistributionTable t;
    t.kind = "E2";
    EXPECT_EQ(serialize(t, "csv"), "s,value\n");
}

TEST(Serialize, SingleRowCsv) {
    DistributionTable t;
    t.samples = {{0.0, 1.0}};
    EXPECT_EQ(to_csv(t), "s,value\n0,1\n");
}

TEST(Serialize, JsonRoundTrip) {
    DistributionTable t = tabulate("E2", 0.5, range_grid(-1.0, 1.0, 0.25), [](double s) { return std::exp(-s * s) / 3.0; });
    t.meta["tolerance"] = 1e-12;
    const std::string text = serialize(t, "json");
    const DistributionTable back = table_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(back, t);
    const nlohmann::json j = nlohmann::json::parse(text);
    EXPECT_EQ(j["meta"]["kind"], "E2");
    EXPECT_EQ(j["rows"].size(), 9u);
}

TEST(Serialize, CsvDigitsRoundTrip) {
    DistributionTable t;
    t.samples = {{0.1, 1.0 / 3.0}, {-7.25, std::exp(-40.0)}, {1e-300, 0.99999999999999989}};
    const std::string csv = to_csv(t);
    std::size_t pos = csv.find('\n') + 1;
    for (const auto& [s, v] : t.samples) {
        const std::size_t comma = csv.find(',', pos), end = csv.find('\n', pos);
        EXPECT_EQ(std::stod(csv.substr(pos, comma - pos)), s);
        EXPECT_EQ(std::stod(csv.substr(comma + 1, end - comma - 1)), v);
        pos = end + 1;
    }
}

TEST(Serialize, UnknownFormatRejected) { EXPECT_THROW(serialize(DistributionTable{}, "xml"), std::invalid_argument); }

TEST(RangeGrid, InclusiveEndpoint) {
    const auto g = range_grid(-8.0, 4.0, 0.1);
    ASSERT_EQ(g.size(), 121u);
    EXPECT_DOUBLE_EQ(g.front(), -8.0);
    EXPECT_NEAR(g.back(), 4.0, 1e-12);
    EXPECT_EQ(range_grid(1.0, 1.0, 0.5).size(), 1u);
}

TEST(RangeGrid, InvalidRangesRejected) {
    EXPECT_THROW(range_grid(0.0, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(range_grid(0.0, 1.0, -0.1), std::invalid_argument);
    EXPECT_THROW(range_grid(2.0, 1.0, 0.1), std::invalid_argument);
    EXPECT_THROW(range_grid(0.0, 1.0, 1e-9), std::invalid_argument);
}

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(-8.0), "-8");
    EXPECT_EQ(std::stod(format_double(0.1 + 0.2)), 0.1 + 0.2);
}
