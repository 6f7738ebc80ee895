#pragma once

// Trial-record persistence. CSV uses the fixed header
//   experiment,trial,kind,rule,D,F,n,M,beta,sigma,k,accuracy,iterations,converged,success
// with floats at 6 significant digits and flags as true/false; JSON is an
// array of objects with the same field names. Writing, then reading, then
// writing again yields a byte-identical file.

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hdres/bench.hpp"

namespace hdres {

enum class RecordFormat : std::uint8_t { Csv, Json };

RecordFormat record_format_from_string(const std::string& s);

// Streaming sink; records must arrive in canonical order. close() finalizes
// the container (JSON array bracket) and flushes. A sink destroyed before
// close() marks the file incomplete.
class RecordSink {
 public:
  virtual ~RecordSink() = default;
  virtual void append(const TrialRecord& record) = 0;
  virtual void close() = 0;
};

std::unique_ptr<RecordSink> open_record_sink(const std::filesystem::path& path,
                                             RecordFormat format);

void write_records(std::span<const TrialRecord> records, const std::filesystem::path& path,
                   RecordFormat format);

std::vector<TrialRecord> read_records(const std::filesystem::path& path, RecordFormat format);

// Formatting helpers shared with the CLI.
std::string format_float(double v);          // 6 significant digits
std::string csv_header();
std::string csv_line(const TrialRecord& r);

}  // namespace hdres
