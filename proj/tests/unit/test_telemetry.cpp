#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <string>

#include "vortexform/telemetry.hpp"

using namespace vortexform;

TEST(Telemetry, HeaderHasUniqueNames) {
    const auto& h = telemetry_header();
    std::set<std::string> names(h.begin(), h.end());
    EXPECT_EQ(names.size(), static_cast<std::size_t>(kTelemetryColumns));
    EXPECT_STREQ(h[0], "t");
    for (const char* n : {"beta_f", "T", "x_e", "y_e", "z_e", "d_hat_V", "T_c"}) EXPECT_TRUE(names.count(n)) << n;
}

TEST(Telemetry, CsvRowsAndPrecision) {
    std::ostringstream os;
    CsvTelemetryWriter w(os);
    TelemetryRow r;
    r.v[0] = 1.0 / 3.0;
    r.v[50] = -123456789.0;
    w.write(r);
    w.write(r);
    EXPECT_EQ(w.rows(), 2);
    std::istringstream is(os.str());
    std::string header, line;
    std::getline(is, header);
    std::getline(is, line);
    EXPECT_EQ(std::count(header.begin(), header.end(), ','), kTelemetryColumns - 1);
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), kTelemetryColumns - 1);
    EXPECT_EQ(line.substr(0, line.find(',')), "0.333333333");
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "-123456789");
}
