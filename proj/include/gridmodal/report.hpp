#pragma once

// Text, CSV and SVG emission plus CSV readers. Numbers use six significant
// digits in the C locale; output is byte-deterministic.

#include "gridmodal/modal.hpp"
#include "gridmodal/netred.hpp"
#include "gridmodal/operating.hpp"
#include "gridmodal/sim.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gridmodal::report {

/// %.6g, never "-0".
std::string num(double v);

/// Fixed with `decimals` places, never "-0.000".
std::string fixed(double v, int decimals);

/// "-0.118 ± 12.476j" for a pair, "-3.766" for a real mode.
std::string eigenvalue_text(const modal::Mode& mode, int decimals = 3);

std::string operating_point_text(const operating::OperatingPoint& op, const netred::NetworkParams& net);
std::string operating_point_csv(const operating::OperatingPoint& op);

/// Rows "Label, eigenvalue, Freq (Hz), zeta" grouped Swing, TurbineGovernor,
/// Governor, Real, Unclassified. Real modes print "---" for Freq and zeta.
std::string mode_table(const modal::ModeSet& modes);
std::string modes_csv(const modal::ModeSet& modes);

std::string sweep_csv(const modal::SweepResult& result);
std::string timeseries_csv(const sim::TimeSeries& ts);
std::string rocof_text(const sim::RocofMetrics& metrics);
std::string rocof_csv(const sim::RocofMetrics& metrics);

std::string root_locus_svg(const modal::SweepResult& result);
std::string timeseries_svg(const sim::TimeSeries& ts);

// Readers. Values come back at the six-digit precision they were written with.

/// Mode fields plus participation; shapes are not serialized.
modal::ModeSet read_modes_csv(std::string_view text);
modal::SweepResult read_sweep_csv(std::string_view text);
sim::TimeSeries read_timeseries_csv(std::string_view text);
operating::OperatingPoint read_operating_point_csv(std::string_view text);
sim::RocofMetrics read_rocof_csv(std::string_view text);

}  // namespace gridmodal::report
