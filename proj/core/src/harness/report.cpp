#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "sawlab/harness.hpp"

namespace sawlab::harness {
namespace {

using nlohmann::ordered_json;

ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

ordered_json estimate_json(const EstimateWithError& e) {
  ordered_json j;
  j["value"] = number(e.value);
  j["std_error"] = number(e.std_error);
  j["n_samples"] = e.n_samples;
  j["window"] = e.window;
  j["flagged"] = e.flagged;
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string version() { return SAWLAB_VERSION; }

std::string config_hash(const ExperimentConfig& c) {
  std::string canon = c.id + "\n" + std::to_string(c.seed) + "\n";
  for (const auto& [k, v] : c.params) canon += k + "=" + csv_number(v) + "\n";
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<document>", std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("<document>", "expected an object");
  ExperimentConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "experiment") {
      if (!it->is_string()) throw ConfigError("experiment", "expected a string");
      c.id = it->get<std::string>();
    } else if (key == "seed") {
      if (!it->is_number_unsigned())
        throw ConfigError("seed", "expected a non-negative integer");
      c.seed = it->get<std::uint64_t>();
    } else if (key == "out") {
      if (!it->is_string()) throw ConfigError("out", "expected a string");
      c.out = it->get<std::string>();
    } else if (key == "params") {
      if (!it->is_object()) throw ConfigError("params", "expected an object");
      for (auto p = it->begin(); p != it->end(); ++p) {
        if (!p->is_number())
          throw ConfigError("params." + p.key(), "expected a number");
        c.params[p.key()] = p->get<double>();
      }
    } else {
      throw ConfigError(key, "unknown field");
    }
  }
  return c;
}

std::string report_json(const ComparisonReport& r) {
  ordered_json j;
  j["experiment"] = r.experiment;
  j["seed"] = r.seed;
  j["config_hash"] = r.config_hash;
  j["versions"] = {{"sawlab", version()}};
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = number(v);
  j["params"] = params;
  j["flagged"] = r.flagged;
  ordered_json tests = ordered_json::array();
  for (const auto& t : r.tests)
    tests.push_back({{"name", t.name},
                     {"statistic", number(t.statistic)},
                     {"p_value", number(t.p_value)},
                     {"n_a", t.n_a},
                     {"n_b", t.n_b}});
  j["tests"] = tests;
  ordered_json est = ordered_json::array();
  for (const auto& e : r.estimates) {
    ordered_json row{{"name", e.name}, {"estimate", estimate_json(e.estimate)}};
    if (e.has_prediction) row["prediction"] = number(e.prediction);
    est.push_back(row);
  }
  j["estimates"] = est;
  ordered_json tables = ordered_json::array();
  for (const auto& t : r.tables) tables.push_back(t.name);
  j["tables"] = tables;
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

void write_report(const ComparisonReport& r, const std::filesystem::path& dir) {
  for (const auto& t : r.tables) {
    std::string csv;
    for (std::size_t c = 0; c < t.columns.size(); ++c)
      csv += (c ? "," : "") + t.columns[c];
    csv += "\n";
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c)
        csv += (c ? "," : "") + csv_number(row[c]);
      csv += "\n";
    }
    write_atomic(dir / "tables" / (t.name + ".csv"), csv);
  }
  for (const auto& log : r.raw) {
    std::string text;
    for (const auto& line : log.lines) text += line + "\n";
    write_atomic(dir / "raw" / (log.name + ".jsonl"), text);
  }
  write_atomic(dir / "report.json", report_json(r));
}

}  // namespace sawlab::harness
