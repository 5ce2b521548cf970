#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lob/est/estimators.hpp"

namespace lob::io {

// One price level: price as an integer multiple of 1e-4 dollars (so a tick
// of $0.01 is 100 units), size in shares.
struct PriceLevel {
  std::int64_t price = 0;
  double size = 0.0;
};

// One book snapshot; levels ordered best-first (asks ascending in price,
// bids descending). Timestamps are integer nanoseconds after midnight.
struct RawSnapshot {
  std::int64_t t_ns = 0;
  std::vector<PriceLevel> asks;
  std::vector<PriceLevel> bids;
};

struct SkippedRow {
  std::size_t line = 0; // 1-based line number in the input file
  std::string reason;
};

struct ParseOptions {
  enum class Timestamps {
    autodetect,   // first column if the column count says so, else none
    first_column, // row starts with decimal seconds-after-midnight
    companion,    // timestamps from the first column of message_file
    none,         // synthesize one snapshot per second
  };
  Timestamps timestamps = Timestamps::autodetect;
  std::string message_file;
};

struct ParseReport {
  std::vector<RawSnapshot> snapshots;
  std::size_t total_rows = 0;
  std::vector<SkippedRow> skipped;
  bool decimal_prices = false; // input carried prices as decimal dollars
};

// Reads a snapshot file with rows ask_p1,ask_sz1,bid_p1,bid_sz1,... for
// k_levels levels (optionally preceded by a timestamp column). Malformed or
// crossed rows are skipped and reported; parsed + skipped = total.
ParseReport parse_orderbook_file(const std::string& path, int k_levels,
                                 const ParseOptions& opts = {});

// Canonical writer for the same layout; parse(write(x)) followed by another
// write reproduces the first output byte-for-byte.
void write_orderbook_file(const std::string& path,
                          const std::vector<RawSnapshot>& snapshots,
                          bool decimal_prices, bool with_timestamp);

// Last-observation-carried-forward sampling onto a uniform grid anchored at
// the first snapshot. Depth = mean size over the first k_depth levels per
// side; mid = (best bid + best ask)/2 in dollars.
est::DepthSeries resample(const std::vector<RawSnapshot>& snapshots, double dt,
                          int k_depth);

struct SideProfiles {
  est::TickProfile bid;
  est::TickProfile ask;
  std::size_t snapshot_count = 0;
};

// Time-average size per relative tick (distance >= 1 from the same-side best
// price) over snapshots with t_begin_ns <= t < t_end_ns. tick_units is the
// price-grid spacing in integer price units (0 = infer from the data); the
// reported tick coordinate is l^scaling_exponent_a with binning unchanged.
SideProfiles average_profile(const std::vector<RawSnapshot>& snapshots,
                             std::int64_t t_begin_ns, std::int64_t t_end_ns,
                             int max_ticks, std::int64_t tick_units = 0,
                             double scaling_exponent_a = 1.0);

} // namespace lob::io
