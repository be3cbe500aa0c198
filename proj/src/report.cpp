#include "isomlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace isomlab {

const std::vector<std::string> kTheoremTags{"T1i", "T1ii", "C2", "T3", "CK_i", "CK_ii", "S4_psi", "S4_youla"};

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

double read_number(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
  }
  throw IoError("expected a number, got " + j.dump());
}

bool same_double(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

std::string emit_json(const ReportDocument& doc) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"suite\": " << quoted(doc.suite) << ",\n";
  out << "  \"version\": " << quoted(doc.version) << ",\n";
  out << "  \"config\": {\n";
  out << "    \"n_values\": [";
  for (std::size_t i = 0; i < doc.config.n_values.size(); ++i) out << (i ? ", " : "") << doc.config.n_values[i];
  out << "],\n    \"norms\": [";
  for (std::size_t i = 0; i < doc.config.norms.size(); ++i) out << (i ? ", " : "") << quoted(doc.config.norms[i]);
  out << "],\n";
  out << "    \"samples\": " << doc.config.samples << ",\n";
  out << "    \"restarts\": " << doc.config.restarts << ",\n";
  out << "    \"seed\": " << doc.config.seed << ",\n";
  out << "    \"tol\": {";
  bool first = true;
  for (const auto& [k, v] : doc.config.tol) {
    out << (first ? "" : ", ") << quoted(k) << ": " << number(v);
    first = false;
  }
  out << "}\n  },\n";
  out << "  \"records\": [";
  for (std::size_t i = 0; i < doc.records.size(); ++i) {
    const ReportRecord& r = doc.records[i];
    out << (i ? ",\n" : "\n") << "    {\"check_id\": " << quoted(r.check_id) << ", \"theorem_tag\": "
        << quoted(r.theorem_tag) << ", \"n\": " << r.n << ", \"spec\": " << quoted(r.spec)
        << ", \"value\": " << number(r.value) << ", \"expected\": " << number(r.expected)
        << ", \"tolerance\": " << number(r.tolerance) << ", \"pass\": " << (r.pass ? "true" : "false") << "}";
  }
  out << (doc.records.empty() ? "],\n" : "\n  ],\n");
  out << "  \"pass\": " << (doc.pass ? "true" : "false") << ",\n";
  out << "  \"wall_clock_ms\": " << number(doc.wall_clock_ms) << "\n";
  out << "}\n";
  return out.str();
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string emit_text(const ReportDocument& doc) {
  std::ostringstream out;
  out << "suite " << doc.suite << "  (isomlab " << doc.version << ", seed " << doc.config.seed << ")\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-36s %-9s %3s %-18s %13s %13s %11s  %s\n", "check", "tag", "n", "spec", "value",
                "expected", "tol", "result");
  out << line;
  for (const ReportRecord& r : doc.records) {
    std::snprintf(line, sizeof line, "%-36s %-9s %3d %-18s %13s %13s %11s  %s\n", r.check_id.c_str(),
                  r.theorem_tag.c_str(), r.n, r.spec.c_str(), short_number(r.value).c_str(),
                  short_number(r.expected).c_str(), short_number(r.tolerance).c_str(), r.pass ? "PASS" : "FAIL");
    out << line;
  }
  std::size_t passed = 0;
  for (const ReportRecord& r : doc.records) passed += r.pass ? 1 : 0;
  out << passed << "/" << doc.records.size() << " checks passed, " << (doc.pass ? "PASS" : "FAIL") << " in "
      << short_number(doc.wall_clock_ms) << " ms\n";
  return out.str();
}

}  // namespace

std::string emit_report(const ReportDocument& doc, ReportFormat format) {
  return format == ReportFormat::json ? emit_json(doc) : emit_text(doc);
}

ReportDocument parse_report(std::string_view json) {
  try {
    const nlohmann::json j = nlohmann::json::parse(json);
    ReportDocument doc;
    doc.suite = j.at("suite").get<std::string>();
    doc.version = j.at("version").get<std::string>();
    const auto& c = j.at("config");
    doc.config.n_values = c.at("n_values").get<std::vector<int>>();
    doc.config.norms = c.at("norms").get<std::vector<std::string>>();
    doc.config.samples = c.at("samples").get<int>();
    doc.config.restarts = c.at("restarts").get<int>();
    doc.config.seed = c.at("seed").get<std::uint64_t>();
    for (const auto& [k, v] : c.at("tol").items()) doc.config.tol[k] = read_number(v);
    for (const auto& r : j.at("records")) {
      ReportRecord rec;
      rec.check_id = r.at("check_id").get<std::string>();
      rec.theorem_tag = r.at("theorem_tag").get<std::string>();
      rec.n = r.at("n").get<int>();
      rec.spec = r.at("spec").get<std::string>();
      rec.value = read_number(r.at("value"));
      rec.expected = read_number(r.at("expected"));
      rec.tolerance = read_number(r.at("tolerance"));
      rec.pass = r.at("pass").get<bool>();
      doc.records.push_back(std::move(rec));
    }
    doc.pass = j.at("pass").get<bool>();
    doc.wall_clock_ms = read_number(j.at("wall_clock_ms"));
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed report: ") + e.what());
  }
}

void write_report(const ReportDocument& doc, ReportFormat format, const std::string& path) {
  const std::string text = emit_report(doc, format);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to " + path + " failed");
}

bool same_records(const ReportDocument& a, const ReportDocument& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const ReportRecord& x = a.records[i];
    const ReportRecord& y = b.records[i];
    if (x.check_id != y.check_id || x.theorem_tag != y.theorem_tag || x.n != y.n || x.spec != y.spec ||
        !same_double(x.value, y.value) || !same_double(x.expected, y.expected) ||
        !same_double(x.tolerance, y.tolerance) || x.pass != y.pass)
      return false;
  }
  return true;
}

bool same_document(const ReportDocument& a, const ReportDocument& b, bool with_clock) {
  if (a.suite != b.suite || a.version != b.version || a.pass != b.pass) return false;
  const ReportConfig& x = a.config;
  const ReportConfig& y = b.config;
  if (x.n_values != y.n_values || x.norms != y.norms || x.samples != y.samples || x.restarts != y.restarts ||
      x.seed != y.seed || x.tol.size() != y.tol.size())
    return false;
  for (const auto& [k, v] : x.tol) {
    auto it = y.tol.find(k);
    if (it == y.tol.end() || !same_double(v, it->second)) return false;
  }
  if (with_clock && !same_double(a.wall_clock_ms, b.wall_clock_ms)) return false;
  return same_records(a, b);
}

}  // namespace isomlab
