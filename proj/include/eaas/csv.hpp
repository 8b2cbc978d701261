#pragma once

// CSV interchange formats. History files carry one provisioning record per
// row, request files one consumer request per row; both demand a header row
// and UTF-8 comma-separated fields. Energy amounts round-trip exactly: they
// are written with the shortest representation that parses back to the same
// double.

#include <charconv>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "eaas/core.hpp"
#include "eaas/demand.hpp"

namespace eaas {

inline constexpr std::string_view kHistoryCsvHeader =
    "provider_id,service_id,microcell,advertised_mAh,delivered_mAh,"
    "adv_start_min,adv_end_min,act_start_min,act_end_min,status,"
    "affected_consumers,consumers_present";

inline constexpr std::string_view kRequestCsvHeader =
    "consumer_id,microcell,amount_mAh,start_min,end_min";

namespace detail {

inline std::string format_double(double value) {
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

inline double parse_double(std::string_view text, std::string_view what) {
  double value = 0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw std::runtime_error("CSV: bad " + std::string(what) + " value '" +
                             std::string(text) + "'");
  }
  return value;
}

inline std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t value = 0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw std::runtime_error("CSV: bad " + std::string(what) + " value '" +
                             std::string(text) + "'");
  }
  return value;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

// Reads all non-empty lines, strips trailing carriage returns, and checks
// the header.
inline std::vector<std::string> read_lines(const std::string& path,
                                           std::string_view expected_header) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open CSV file: " + path);
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    lines.push_back(line);
  }
  if (lines.empty() || lines.front() != expected_header) {
    throw std::runtime_error("CSV header mismatch in " + path);
  }
  lines.erase(lines.begin());
  return lines;
}

}  // namespace detail

inline void write_history_csv(std::span<const HistoryRecord> records,
                              const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write CSV file: " + path);
  }
  out << kHistoryCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.service.provider_id << ',' << r.service.service_id << ','
        << r.microcell << ',' << detail::format_double(r.service.amount_mah)
        << ',' << detail::format_double(r.delivered_mah) << ','
        << r.service.interval.start_min << ',' << r.service.interval.end_min
        << ',' << r.actual_interval.start_min << ','
        << r.actual_interval.end_min << ',' << to_string(r.status) << ','
        << r.affected_consumers << ',' << r.consumers_present << '\n';
  }
  if (!out) {
    throw std::runtime_error("failed while writing CSV file: " + path);
  }
}

// Rows are validated by the HistoryRecord constructor; an inconsistent row
// raises with its line number. The single microcell column fills both the
// service location and the sharing location.
inline std::vector<HistoryRecord> read_history_csv(const std::string& path) {
  const auto lines = detail::read_lines(path, kHistoryCsvHeader);
  std::vector<HistoryRecord> records;
  records.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = detail::split_fields(lines[i]);
    if (fields.size() != 12) {
      throw std::runtime_error("CSV: wrong field count at " + path + " line " +
                               std::to_string(i + 2));
    }
    try {
      EnergyService service{
          std::string(fields[1]), std::string(fields[0]),
          detail::parse_double(fields[3], "advertised_mAh"),
          std::string(fields[2]),
          TimeInterval(detail::parse_int(fields[5], "adv_start_min"),
                       detail::parse_int(fields[6], "adv_end_min"))};
      records.emplace_back(
          std::move(service), detail::parse_double(fields[4], "delivered_mAh"),
          std::string(fields[2]),
          TimeInterval(detail::parse_int(fields[7], "act_start_min"),
                       detail::parse_int(fields[8], "act_end_min")),
          delivery_status_from_string(fields[9]),
          static_cast<int>(detail::parse_int(fields[10], "affected_consumers")),
          static_cast<int>(detail::parse_int(fields[11], "consumers_present")));
    } catch (const std::exception& error) {
      throw std::runtime_error("CSV: invalid record at " + path + " line " +
                               std::to_string(i + 2) + ": " + error.what());
    }
  }
  return records;
}

inline void write_request_csv(std::span<const RequestRecord> requests,
                              const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write CSV file: " + path);
  }
  out << kRequestCsvHeader << '\n';
  for (const auto& r : requests) {
    out << r.consumer_id << ',' << r.microcell << ','
        << detail::format_double(r.amount_mah) << ',' << r.slot.start_min
        << ',' << r.slot.end_min << '\n';
  }
  if (!out) {
    throw std::runtime_error("failed while writing CSV file: " + path);
  }
}

inline std::vector<RequestRecord> read_request_csv(const std::string& path) {
  const auto lines = detail::read_lines(path, kRequestCsvHeader);
  std::vector<RequestRecord> requests;
  requests.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = detail::split_fields(lines[i]);
    if (fields.size() != 5) {
      throw std::runtime_error("CSV: wrong field count at " + path + " line " +
                               std::to_string(i + 2));
    }
    try {
      requests.emplace_back(
          std::string(fields[0]), detail::parse_double(fields[2], "amount_mAh"),
          TimeInterval(detail::parse_int(fields[3], "start_min"),
                       detail::parse_int(fields[4], "end_min")),
          std::string(fields[1]));
    } catch (const std::exception& error) {
      throw std::runtime_error("CSV: invalid record at " + path + " line " +
                               std::to_string(i + 2) + ": " + error.what());
    }
  }
  return requests;
}

}  // namespace eaas
