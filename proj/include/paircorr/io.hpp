#pragma once

// CSV and binary serialization of point batches, gap censuses and statistic
// tables. All CSV output uses '.', ',', LF and a header row.

#include <array>
#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "paircorr/errors.hpp"
#include "paircorr/hiprec.hpp"
#include "paircorr/numutil.hpp"
#include "paircorr/pair_count.hpp"
#include "paircorr/sequences.hpp"
#include "paircorr/threegap.hpp"

namespace paircorr {

// Significant digits that round-trip a P-bit point.
template <PointWord W>
inline constexpr unsigned kCsvDigits = word_bits<W> == 64 ? 20 : 40;

inline std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw ConsistencyError("double formatting failed");
  return std::string(buf.data(), end);
}

inline std::string format_hifloat(const HiFloat& v, unsigned digits = 20) {
  return v.str(static_cast<std::streamsize>(digits));
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// ---- points ----

template <PointWord W>
void write_points_csv(std::ostream& os, const UnitBatch<W>& pts) {
  os << "x\n";
  for (const auto& p : pts) os << format_unit(p, kCsvDigits<W>) << '\n';
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <PointWord W>
UnitBatch<W> read_points_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != "x") throw UsageError("points CSV must start with the header \"x\"");
  UnitBatch<W> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string_view t = trim(line);
    if (t.empty()) continue;
    try {
      out.push_back(parse_unit<W>(t));
    } catch (const UsageError& e) {
      throw UsageError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

// Raw P-bit words, little-endian, no header.
template <PointWord W>
void write_points_binary(std::ostream& os, const UnitBatch<W>& pts) {
  constexpr std::size_t bytes = sizeof(W);
  std::array<char, bytes> buf{};
  for (const auto& p : pts) {
    W v = p.raw;
    for (std::size_t i = 0; i < bytes; ++i, v >>= 8) buf[i] = static_cast<char>(static_cast<unsigned char>(v & 0xff));
    os.write(buf.data(), bytes);
  }
}

template <PointWord W>
UnitBatch<W> read_points_binary(std::istream& is) {
  constexpr std::size_t bytes = sizeof(W);
  std::array<char, bytes> buf{};
  UnitBatch<W> out;
  while (true) {
    is.read(buf.data(), bytes);
    const std::streamsize got = is.gcount();
    if (got == 0) break;
    if (got != static_cast<std::streamsize>(bytes)) throw UsageError("binary point file length is not a multiple of P/8");
    W v = 0;
    for (std::size_t i = bytes; i-- > 0;) v = static_cast<W>((v << 8) | static_cast<unsigned char>(buf[i]));
    out.push_back({v});
  }
  return out;
}

// ---- statistic tables ----

inline constexpr std::string_view kResultsHeader =
    "sequence,params,N,alpha,s,threshold,count,F,abs_err_vs_2s,ambiguous";

inline void write_result_row(std::ostream& os, const ProfileRow& row) {
  const PairCountResult& r = row.result;
  os << csv_field(row.sequence) << ',' << csv_field(row.params) << ',' << r.n << ',' << format_double(r.alpha) << ','
     << format_double(r.s) << ',' << format_hifloat(r.threshold) << ',' << r.ordered_pair_count << ','
     << format_double(r.f) << ',' << format_double(r.abs_err_vs_2s()) << ',' << r.ambiguous_pairs << '\n';
}

inline void write_results_csv(std::ostream& os, const std::vector<ProfileRow>& rows) {
  os << kResultsHeader << '\n';
  for (const auto& row : rows) write_result_row(os, row);
}

inline void write_results_text(std::ostream& os, const std::vector<ProfileRow>& rows) {
  for (const auto& row : rows) {
    const PairCountResult& r = row.result;
    os << row.sequence << (row.params.empty() ? "" : " " + row.params) << "  N=" << r.n
       << "  alpha=" << format_double(r.alpha) << "  s=" << format_double(r.s) << "  count=" << r.ordered_pair_count
       << "  F=" << format_double(r.f) << "  |F-2s|=" << format_double(r.abs_err_vs_2s());
    if (r.degenerate) os << "  (window >= 1/2)";
    if (r.ambiguous_pairs) os << "  ambiguous=" << r.ambiguous_pairs;
    os << '\n';
  }
}

// ---- gap census ----

// Which predicted length a census entry matches within one ulp, or "-".
inline std::string match_label(const GapPrediction& p, const BigInt& length) {
  static constexpr std::array<const char*, 3> names{"L1", "L2", "L3"};
  const auto ls = p.lengths();
  for (std::size_t i = 0; i < ls.size(); ++i) {
    BigInt d = length - ls[i];
    if (d < 0) d = -d;
    if (d <= 1) return names[i];
  }
  return "-";
}

inline std::string format_length(const BigInt& raw, unsigned bits) {
  if (raw >= pow2(bits)) return "1";
  return format_fraction(raw, bits, 20);
}

inline void write_census_csv(std::ostream& os, const GapCensus& c, const GapPrediction* prediction) {
  os << "source,label,length_decimal,length_raw_units,multiplicity\n";
  for (const auto& e : c.entries) {
    os << "census," << (prediction ? match_label(*prediction, e.length) : "-") << ','
       << format_length(e.length, c.precision) << ',' << e.length.str() << ',' << e.multiplicity << '\n';
  }
  if (!prediction) return;
  const std::array<std::pair<const char*, const BigInt*>, 3> ls{
      {{"L1", &prediction->l1}, {"L2", &prediction->l2}, {"L3", &prediction->l3}}};
  for (const auto& [name, len] : ls) {
    os << "predicted," << name << ',' << (*len < 0 ? "-" : format_length(*len, c.precision)) << ',' << len->str()
       << ",\n";
  }
}

inline void write_census_text(std::ostream& os, const GapCensus& c, const GapPrediction* prediction) {
  os << "N=" << c.n << "  distinct gap lengths: " << c.entries.size() << '\n';
  for (const auto& e : c.entries) {
    os << "  " << format_length(e.length, c.precision) << "  x" << e.multiplicity;
    if (prediction) os << "  " << match_label(*prediction, e.length);
    os << '\n';
  }
  if (prediction) {
    os << "predicted (m=" << prediction->m << ", r=" << prediction->r.str() << "):"
       << "  L1=" << format_length(prediction->l1, c.precision)
       << "  L2=" << format_length(prediction->l2, c.precision)
       << "  L3=" << format_length(prediction->l3, c.precision) << '\n';
  }
}

}  // namespace paircorr
