#include "hdres/records_io.hpp"

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hdres {

namespace {

[[noreturn]] void io_fail(const std::filesystem::path& path, const std::string& what) {
  throw std::runtime_error(what + ": " + path.string());
}

UpdateRule rule_from_pair(const std::string& rule, const std::string& kind) {
  const bool attention = rule == "attention";
  if (!attention && rule != "original")
    throw std::invalid_argument("unknown rule name: " + rule);
  if (kind != "bipolar" && kind != "fhrr")
    throw std::invalid_argument("unknown kind name: " + kind);
  return rule_for(attention, kind == "fhrr" ? Kind::Complex : Kind::Bipolar);
}

const char* rule_family(UpdateRule rule) {
  return is_attention(rule) ? "attention" : "original";
}

nlohmann::ordered_json record_to_json(const TrialRecord& r) {
  nlohmann::ordered_json j;
  j["experiment"] = r.experiment;
  j["trial"] = r.trial;
  j["kind"] = to_string(r.kind);
  j["rule"] = rule_family(r.rule);
  j["D"] = r.dim;
  j["F"] = r.factors;
  j["n"] = r.codebook_size;
  j["M"] = r.search_space;
  j["beta"] = r.beta;
  j["sigma"] = r.sigma;
  j["k"] = r.k;
  j["accuracy"] = r.accuracy;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["success"] = r.success;
  return j;
}

TrialRecord record_from_json(const nlohmann::json& j) {
  TrialRecord r;
  r.experiment = j.at("experiment").get<std::string>();
  r.trial = j.at("trial").get<std::size_t>();
  const std::string kind = j.at("kind").get<std::string>();
  const std::string rule = j.at("rule").get<std::string>();
  r.rule = rule_from_pair(rule, kind);
  r.kind = kind_for(r.rule);
  r.dim = j.at("D").get<std::size_t>();
  r.factors = j.at("F").get<std::size_t>();
  r.codebook_size = j.at("n").get<std::size_t>();
  r.search_space = j.at("M").get<std::uint64_t>();
  r.beta = j.at("beta").get<double>();
  r.sigma = j.at("sigma").get<double>();
  r.k = j.at("k").get<std::size_t>();
  r.accuracy = j.at("accuracy").get<double>();
  r.iterations = j.at("iterations").get<std::size_t>();
  r.converged = j.at("converged").get<bool>();
  r.success = j.at("success").get<bool>();
  return r;
}

class CsvSink final : public RecordSink {
 public:
  explicit CsvSink(const std::filesystem::path& path)
      : path_(path), os_(path, std::ios::trunc) {
    if (!os_) io_fail(path_, "cannot open output file");
    os_ << csv_header() << '\n';
  }

  ~CsvSink() override {
    if (!closed_ && os_.is_open()) {
      os_ << "# INCOMPLETE\n";  // partial output marker
    }
  }

  void append(const TrialRecord& r) override {
    os_ << csv_line(r) << '\n';
    if (!os_) io_fail(path_, "record write failed");
  }

  void close() override {
    closed_ = true;
    os_.flush();
    if (!os_) io_fail(path_, "record write failed");
    os_.close();
  }

 private:
  std::filesystem::path path_;
  std::ofstream os_;
  bool closed_ = false;
};

class JsonSink final : public RecordSink {
 public:
  explicit JsonSink(const std::filesystem::path& path)
      : path_(path), os_(path, std::ios::trunc) {
    if (!os_) io_fail(path_, "cannot open output file");
    os_ << "[";
  }

  // A sink abandoned before close() leaves the array unterminated, which is
  // invalid JSON and therefore unmistakably incomplete.
  ~JsonSink() override = default;

  void append(const TrialRecord& r) override {
    os_ << (first_ ? "\n" : ",\n") << record_to_json(r).dump(0, ' ', false);
    first_ = false;
    if (!os_) io_fail(path_, "record write failed");
  }

  void close() override {
    os_ << "\n]\n";
    os_.flush();
    if (!os_) io_fail(path_, "record write failed");
    os_.close();
  }

 private:
  std::filesystem::path path_;
  std::ofstream os_;
  bool first_ = true;
};

}  // namespace

RecordFormat record_format_from_string(const std::string& s) {
  if (s == "csv") return RecordFormat::Csv;
  if (s == "json") return RecordFormat::Json;
  throw std::invalid_argument("unknown record format: " + s);
}

std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string csv_header() {
  return "experiment,trial,kind,rule,D,F,n,M,beta,sigma,k,accuracy,iterations,converged,success";
}

std::string csv_line(const TrialRecord& r) {
  std::ostringstream os;
  os << r.experiment << ',' << r.trial << ',' << to_string(r.kind) << ','
     << rule_family(r.rule) << ',' << r.dim << ',' << r.factors << ',' << r.codebook_size
     << ',' << r.search_space << ',' << format_float(r.beta) << ','
     << format_float(r.sigma) << ',' << r.k << ',' << format_float(r.accuracy) << ','
     << r.iterations << ',' << (r.converged ? "true" : "false") << ','
     << (r.success ? "true" : "false");
  return os.str();
}

std::unique_ptr<RecordSink> open_record_sink(const std::filesystem::path& path,
                                             RecordFormat format) {
  if (format == RecordFormat::Csv) return std::make_unique<CsvSink>(path);
  return std::make_unique<JsonSink>(path);
}

void write_records(std::span<const TrialRecord> records, const std::filesystem::path& path,
                   RecordFormat format) {
  auto sink = open_record_sink(path, format);
  for (const TrialRecord& r : records) sink->append(r);
  sink->close();
}

std::vector<TrialRecord> read_records(const std::filesystem::path& path,
                                      RecordFormat format) {
  std::ifstream is(path);
  if (!is) io_fail(path, "cannot open records file");
  std::vector<TrialRecord> out;
  if (format == RecordFormat::Json) {
    nlohmann::json doc;
    try {
      is >> doc;
    } catch (const nlohmann::json::exception& e) {
      io_fail(path, std::string("bad records JSON (") + e.what() + ")");
    }
    for (const auto& j : doc) out.push_back(record_from_json(j));
    return out;
  }
  std::string line;
  if (!std::getline(is, line)) io_fail(path, "empty records file");
  if (line != csv_header()) io_fail(path, "unexpected CSV header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) io_fail(path, "records file marked incomplete");
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 15) io_fail(path, "malformed CSV row");
    TrialRecord r;
    r.experiment = f[0];
    r.trial = std::stoull(f[1]);
    r.rule = rule_from_pair(f[3], f[2]);
    r.kind = kind_for(r.rule);
    r.dim = std::stoull(f[4]);
    r.factors = std::stoull(f[5]);
    r.codebook_size = std::stoull(f[6]);
    r.search_space = std::stoull(f[7]);
    r.beta = std::stod(f[8]);
    r.sigma = std::stod(f[9]);
    r.k = std::stoull(f[10]);
    r.accuracy = std::stod(f[11]);
    r.iterations = std::stoull(f[12]);
    r.converged = f[13] == "true";
    r.success = f[14] == "true";
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace hdres
