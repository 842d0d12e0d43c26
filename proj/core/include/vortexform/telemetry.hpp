#pragma once

#include <array>
#include <functional>
#include <ostream>

namespace vortexform {

inline constexpr int kTelemetryColumns = 51;

// Column order: t, leader (9), follower (13), reference (6), errors (6),
// estimates (9), commands (4), flags (3).
const std::array<const char*, kTelemetryColumns>& telemetry_header();

struct TelemetryRow {
    std::array<double, kTelemetryColumns> v{};
};

using TelemetrySink = std::function<void(const TelemetryRow&)>;

// CSV with a header row, 9 significant digits.
class CsvTelemetryWriter {
public:
    explicit CsvTelemetryWriter(std::ostream& os);
    void write(const TelemetryRow& row);
    long rows() const { return rows_; }

private:
    std::ostream& os_;
    long rows_ = 0;
};

}  // namespace vortexform
