#include "lob/io/lobster.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "lob/common.hpp"

namespace lob::io {

namespace {

constexpr std::int64_t placeholder_price = 9999999999LL;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

bool parse_int64(const std::string& s, std::int64_t& v) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto res = std::from_chars(b, e, v);
  return res.ec == std::errc() && res.ptr == e && !s.empty();
}

bool parse_double(const std::string& s, double& v) {
  if (s.empty()) return false;
  char* end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(v);
}

// Price field: either integer units of 1e-4 dollars, or decimal dollars with
// up to four fractional digits (parsed exactly, no float rounding).
bool parse_price(const std::string& s, bool decimal, std::int64_t& units) {
  if (!decimal) return parse_int64(s, units);
  std::size_t dot = s.find('.');
  std::string ip = dot == std::string::npos ? s : s.substr(0, dot);
  std::string fp = dot == std::string::npos ? "" : s.substr(dot + 1);
  if (fp.size() > 4) return false;
  bool neg = !ip.empty() && ip[0] == '-';
  if (neg) ip = ip.substr(1);
  if (ip.empty() && fp.empty()) return false;
  std::int64_t whole = 0;
  if (!ip.empty() && !parse_int64(ip, whole)) return false;
  while (fp.size() < 4) fp += '0';
  std::int64_t frac = 0;
  if (!parse_int64(fp, frac) || frac < 0) return false;
  units = whole * 10000 + frac;
  if (neg) units = -units;
  return true;
}

// Timestamp "12345.678900000" -> integer nanoseconds, exact.
bool parse_timestamp(const std::string& s, std::int64_t& t_ns) {
  std::size_t dot = s.find('.');
  std::string ip = dot == std::string::npos ? s : s.substr(0, dot);
  std::string fp = dot == std::string::npos ? "" : s.substr(dot + 1);
  if (ip.empty() || fp.size() > 9) return false;
  std::int64_t sec = 0;
  if (!parse_int64(ip, sec) || sec < 0) return false;
  while (fp.size() < 9) fp += '0';
  std::int64_t frac = 0;
  if (!fp.empty() && (!parse_int64(fp, frac) || frac < 0)) return false;
  t_ns = sec * 1000000000LL + frac;
  return true;
}

std::string format_timestamp(std::int64_t t_ns) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%lld.%09lld",
                static_cast<long long>(t_ns / 1000000000LL),
                static_cast<long long>(t_ns % 1000000000LL));
  return buf;
}

std::string format_price(std::int64_t units, bool decimal) {
  char buf[40];
  if (!decimal) {
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(units));
    return buf;
  }
  std::int64_t a = units >= 0 ? units : -units;
  std::snprintf(buf, sizeof buf, "%s%lld.%04lld", units < 0 ? "-" : "",
                static_cast<long long>(a / 10000),
                static_cast<long long>(a % 10000));
  return buf;
}

std::string format_size(double size) {
  double r = std::nearbyint(size);
  if (r == size && std::fabs(size) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(r));
    return buf;
  }
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, size);
  return std::string(buf, res.ptr);
}

const char* check_snapshot(const RawSnapshot& s) {
  for (std::size_t i = 0; i + 1 < s.asks.size(); ++i)
    if (s.asks[i + 1].price <= s.asks[i].price)
      return "ask prices not strictly increasing";
  for (std::size_t i = 0; i + 1 < s.bids.size(); ++i)
    if (s.bids[i + 1].price >= s.bids[i].price)
      return "bid prices not strictly decreasing";
  for (const auto& lv : s.asks)
    if (lv.size < 0.0) return "negative size";
  for (const auto& lv : s.bids)
    if (lv.size < 0.0) return "negative size";
  if (!s.asks.empty() && !s.bids.empty() &&
      s.asks[0].price <= s.bids[0].price)
    return "crossed book (best ask <= best bid)";
  return nullptr;
}

} // namespace

ParseReport parse_orderbook_file(const std::string& path, int k_levels,
                                 const ParseOptions& opts) {
  if (k_levels < 1) throw config_error("level count must be >= 1");
  std::ifstream in(path);
  if (!in) throw data_error("cannot open order-book file: " + path);

  std::vector<std::int64_t> companion;
  bool use_companion = opts.timestamps == ParseOptions::Timestamps::companion;
  if (use_companion) {
    if (opts.message_file.empty())
      throw config_error("companion timestamps requested without a file");
    std::ifstream msg(opts.message_file);
    if (!msg)
      throw data_error("cannot open timestamp file: " + opts.message_file);
    std::string line;
    std::size_t msg_line = 0;
    while (std::getline(msg, line)) {
      ++msg_line;
      if (line.empty()) continue;
      std::size_t comma = line.find(',');
      std::string field =
          comma == std::string::npos ? line : line.substr(0, comma);
      std::int64_t t;
      if (!parse_timestamp(field, t))
        throw data_error("bad timestamp in " + opts.message_file + " line " +
                         std::to_string(msg_line));
      companion.push_back(t);
    }
  }

  ParseReport rep;
  const std::size_t base_cols = 4u * static_cast<std::size_t>(k_levels);
  bool layout_known = opts.timestamps != ParseOptions::Timestamps::autodetect;
  bool ts_first = opts.timestamps == ParseOptions::Timestamps::first_column;
  bool decimal_known = false;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++rep.total_rows;
    auto fields = split_csv(line);

    if (!layout_known) {
      if (fields.size() == base_cols + 1) {
        ts_first = true;
        layout_known = true;
      } else if (fields.size() == base_cols) {
        ts_first = false;
        layout_known = true;
      }
    }
    const std::size_t expected = base_cols + (ts_first ? 1u : 0u);
    if (fields.size() != expected) {
      rep.skipped.push_back(
          {line_no, "expected " + std::to_string(expected) + " columns, got " +
                        std::to_string(fields.size())});
      continue;
    }

    std::size_t off = 0;
    RawSnapshot snap;
    if (ts_first) {
      if (!parse_timestamp(fields[0], snap.t_ns)) {
        rep.skipped.push_back({line_no, "bad timestamp field"});
        continue;
      }
      off = 1;
    } else if (use_companion) {
      std::size_t idx = rep.total_rows - 1;
      if (idx >= companion.size())
        throw data_error("timestamp file shorter than order-book file");
      snap.t_ns = companion[idx];
    } else {
      snap.t_ns =
          static_cast<std::int64_t>(rep.total_rows - 1) * 1000000000LL;
    }

    if (!decimal_known) {
      rep.decimal_prices = fields[off].find('.') != std::string::npos;
      decimal_known = true;
    }

    bool bad = false;
    for (int lv = 0; lv < k_levels && !bad; ++lv) {
      std::int64_t pa, pb;
      double sa, sb;
      std::size_t i = off + 4u * static_cast<std::size_t>(lv);
      if (!parse_price(fields[i], rep.decimal_prices, pa) ||
          !parse_double(fields[i + 1], sa) ||
          !parse_price(fields[i + 2], rep.decimal_prices, pb) ||
          !parse_double(fields[i + 3], sb)) {
        rep.skipped.push_back({line_no, "unparsable price/size field"});
        bad = true;
        break;
      }
      if (std::llabs(pa) < placeholder_price) snap.asks.push_back({pa, sa});
      if (std::llabs(pb) < placeholder_price) snap.bids.push_back({pb, sb});
    }
    if (bad) continue;

    if (const char* why = check_snapshot(snap)) {
      rep.skipped.push_back({line_no, why});
      continue;
    }
    rep.snapshots.push_back(std::move(snap));
  }
  if (use_companion && companion.size() != rep.total_rows)
    throw data_error("timestamp file row count does not match order-book file");
  return rep;
}

void write_orderbook_file(const std::string& path,
                          const std::vector<RawSnapshot>& snapshots,
                          bool decimal_prices, bool with_timestamp) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot open output file: " + path);
  // Uniform width: every row carries the file-wide maximum level count with
  // short sides padded by placeholder levels, so a single level-count setting
  // reads the whole file back.
  std::size_t k = 1;
  for (const auto& s : snapshots)
    k = std::max({k, s.asks.size(), s.bids.size()});
  std::string row;
  for (const auto& s : snapshots) {
    row.clear();
    if (with_timestamp) row += format_timestamp(s.t_ns);
    for (std::size_t lv = 0; lv < k; ++lv) {
      if (with_timestamp || lv > 0) row += ',';
      if (lv < s.asks.size()) {
        row += format_price(s.asks[lv].price, decimal_prices);
        row += ',';
        row += format_size(s.asks[lv].size);
      } else {
        row += format_price(placeholder_price, decimal_prices);
        row += ",0";
      }
      row += ',';
      if (lv < s.bids.size()) {
        row += format_price(s.bids[lv].price, decimal_prices);
        row += ',';
        row += format_size(s.bids[lv].size);
      } else {
        row += format_price(-placeholder_price, decimal_prices);
        row += ",0";
      }
    }
    row += '\n';
    out << row;
  }
}

est::DepthSeries resample(const std::vector<RawSnapshot>& snapshots, double dt,
                          int k_depth) {
  if (snapshots.empty()) throw data_error("no snapshots to resample");
  if (!(dt > 0.0)) throw config_error("sampling interval must be > 0");
  if (k_depth < 1) throw config_error("depth level count must be >= 1");
  for (std::size_t i = 0; i + 1 < snapshots.size(); ++i)
    if (snapshots[i + 1].t_ns < snapshots[i].t_ns)
      throw data_error("snapshots not time-sorted");

  const std::int64_t t0 = snapshots.front().t_ns;
  const std::int64_t dt_ns = std::llround(dt * 1e9);
  if (dt_ns <= 0) throw config_error("sampling interval below 1 ns");
  const std::int64_t span = snapshots.back().t_ns - t0;
  const std::size_t n_steps = static_cast<std::size_t>(span / dt_ns);

  auto mean_depth = [&](const std::vector<PriceLevel>& side) {
    if (side.empty()) throw data_error("snapshot with an empty book side");
    std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(k_depth),
                                          side.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += side[i].size;
    return sum / static_cast<double>(k);
  };

  est::DepthSeries out;
  out.grid = sde::TimeGrid{static_cast<double>(t0) / 1e9, dt, n_steps};
  out.d_b.reserve(n_steps + 1);
  out.d_a.reserve(n_steps + 1);
  out.mid.reserve(n_steps + 1);
  std::size_t cur = 0;
  for (std::size_t j = 0; j <= n_steps; ++j) {
    std::int64_t t = t0 + static_cast<std::int64_t>(j) * dt_ns;
    while (cur + 1 < snapshots.size() && snapshots[cur + 1].t_ns <= t) ++cur;
    const auto& s = snapshots[cur];
    out.d_b.push_back(mean_depth(s.bids));
    out.d_a.push_back(mean_depth(s.asks));
    out.mid.push_back(
        static_cast<double>(s.bids[0].price + s.asks[0].price) / 2.0 / 1e4);
  }
  return out;
}

SideProfiles average_profile(const std::vector<RawSnapshot>& snapshots,
                             std::int64_t t_begin_ns, std::int64_t t_end_ns,
                             int max_ticks, std::int64_t tick_units,
                             double scaling_exponent_a) {
  if (max_ticks < 1) throw config_error("profile needs at least 1 tick");
  if (!(scaling_exponent_a > 0.0))
    throw config_error("scaling exponent must be > 0");

  if (tick_units == 0) {
    // Infer the price grid from the smallest adjacent-level gap on record.
    std::int64_t best = 0;
    for (const auto& s : snapshots) {
      auto scan = [&](const std::vector<PriceLevel>& side) {
        for (std::size_t i = 0; i + 1 < side.size(); ++i) {
          std::int64_t d = std::llabs(side[i + 1].price - side[i].price);
          if (d > 0 && (best == 0 || d < best)) best = d;
        }
      };
      scan(s.asks);
      scan(s.bids);
    }
    tick_units = best > 0 ? best : 1;
  }
  if (tick_units < 1) throw config_error("tick size must be positive");

  const std::size_t m = static_cast<std::size_t>(max_ticks);
  std::vector<double> sum_b(m, 0.0), sum_a(m, 0.0);
  std::size_t count = 0;
  for (const auto& s : snapshots) {
    if (s.t_ns < t_begin_ns || s.t_ns >= t_end_ns) continue;
    ++count;
    auto add = [&](const std::vector<PriceLevel>& side,
                   std::vector<double>& sum) {
      if (side.empty()) return;
      const std::int64_t p0 = side[0].price;
      for (const auto& lv : side) {
        double steps =
            static_cast<double>(std::llabs(lv.price - p0)) /
            static_cast<double>(tick_units);
        auto l = static_cast<std::int64_t>(std::llround(steps)) + 1;
        if (l >= 1 && l <= max_ticks)
          sum[static_cast<std::size_t>(l - 1)] += lv.size;
      }
    };
    add(s.bids, sum_b);
    add(s.asks, sum_a);
  }
  if (count == 0) throw data_error("no snapshots in the requested window");

  SideProfiles out;
  out.snapshot_count = count;
  auto finish = [&](const std::vector<double>& sum, est::TickProfile& prof) {
    prof.tick.resize(m);
    prof.size.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      prof.tick[i] = std::pow(static_cast<double>(i + 1), scaling_exponent_a);
      prof.size[i] = sum[i] / static_cast<double>(count);
    }
  };
  finish(sum_b, out.bid);
  finish(sum_a, out.ask);
  return out;
}

} // namespace lob::io
