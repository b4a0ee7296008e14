#pragma once

// JSON/CSV/text serialization: family files, traces, and suite reports.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "treeint/counting.hpp"
#include "treeint/family.hpp"
#include "treeint/peeling.hpp"
#include "treeint/search.hpp"
#include "treeint/spread.hpp"

namespace treeint {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "treeint";
inline constexpr const char* kToolVersion = "1.0.0";

inline std::string to_decimal(const BigCount& v) { return v.str(); }

inline std::string to_string(const Rational& r) {
  const BigCount den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

// "p/q", "p" or a finite decimal such as "1.5".
inline Rational parse_rational(const std::string& text) {
  auto bad = [&] { return std::invalid_argument("not a rational number: '" + text + "'"); };
  if (text.empty()) throw bad();
  try {
    if (auto slash = text.find('/'); slash != std::string::npos) {
      const BigCount num(text.substr(0, slash));
      const BigCount den(text.substr(slash + 1));
      if (den == 0) throw bad();
      return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
      const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      return Rational(BigCount(digits.empty() ? "0" : digits), big_pow(10, static_cast<unsigned>(text.size() - dot - 1)));
    }
    return Rational(BigCount(text));
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw bad();
  }
}

// Doubles rounded to 6 significant digits.
inline double round6(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return std::strtod(buf, nullptr);
}

inline Json json_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return round6(x);
}

template <class Set>
Json set_to_json(const Set& s) {
  Json a = Json::array();
  s.for_each([&](int e) { a.push_back(e); });
  return a;
}

template <class Set>
Json family_to_json(const SetFamily<Set>& fam) {
  Json j;
  if (fam.vertices() > 0)
    j["n"] = fam.vertices();
  else
    j["ground"] = fam.ground();
  Json members = Json::array();
  for (const auto& m : fam) members.push_back(set_to_json(m));
  j["members"] = std::move(members);
  return j;
}

// {"n": N, "members": [[edge indices]...]} or {"ground": M, "members": [...]}.
template <class Set>
SetFamily<Set> family_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("members") || !j["members"].is_array())
    throw std::invalid_argument("family JSON needs a 'members' array");
  int vertices = 0;
  int ground = 0;
  if (j.contains("n")) {
    vertices = j["n"].get<int>();
    check_vertex_count(vertices);
    ground = pair_count(vertices);
  } else if (j.contains("ground")) {
    ground = j["ground"].get<int>();
  } else {
    throw std::invalid_argument("family JSON needs 'n' or 'ground'");
  }
  if (ground < 0 || static_cast<std::size_t>(ground) > Set::kCapacity)
    throw std::invalid_argument("ground size too large");
  std::vector<Set> members;
  for (const auto& m : j["members"]) {
    if (!m.is_array()) throw std::invalid_argument("each member must be an array of indices");
    Set s;
    for (const auto& e : m) {
      const int idx = e.get<int>();
      if (idx < 0 || idx >= ground) throw std::invalid_argument("member index " + std::to_string(idx) + " out of range");
      if (s.test(idx)) throw std::invalid_argument("member lists index " + std::to_string(idx) + " twice");
      s.set(idx);
    }
    members.push_back(s);
  }
  return SetFamily<Set>(ground, std::move(members), vertices);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

template <class Set>
Json trace_to_json(const PeelingTrace<Set>& trace, const TraceReport<Set>* report = nullptr) {
  Json j;
  j["t"] = trace.t;
  j["q"] = trace.q;
  Json levels = Json::array();
  for (std::size_t i = 0; i < trace.levels.size(); ++i) {
    const auto& lvl = trace.levels[i];
    Json l;
    l["k"] = lvl.k;
    l["h_size"] = lvl.h.size();
    l["w_size"] = lvl.w.size();
    Json h = Json::array();
    for (const auto& m : lvl.h) h.push_back(set_to_json(m));
    l["h"] = std::move(h);
    Json w = Json::array();
    for (const auto& m : lvl.w) w.push_back(set_to_json(m));
    l["w"] = std::move(w);
    if (report != nullptr) {
      const auto& r = report->levels[i];
      Json v;
      v["t_intersecting"] = r.t_intersecting;
      v["antichain"] = r.antichain;
      v["maximal"] = r.maximal;
      v["size_bound"] = r.size_bound;
      v["coverage"] = r.coverage ? Json(*r.coverage) : Json(nullptr);
      v["no_spread_restriction"] = r.no_spread ? Json(*r.no_spread) : Json(nullptr);
      l["verification"] = std::move(v);
    }
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  if (report != nullptr) j["ok"] = report->ok;
  return j;
}

template <class Set>
Json approximation_to_json(const ApproximationResult<Set>& a) {
  Json j;
  Json covers = Json::array();
  for (const auto& s : a.steps) {
    Json c;
    c["cover"] = set_to_json(s.cover);
    c["subfamily_size"] = s.attached.size();
    covers.push_back(std::move(c));
  }
  j["covers"] = std::move(covers);
  j["remainder_size"] = a.remainder.size();
  j["rejected_cover"] = a.rejected_cover ? set_to_json(*a.rejected_cover) : Json(nullptr);
  return j;
}

inline Json monte_carlo_to_json(const MonteCarloResult& r) {
  Json j;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["hits"] = r.hits;
  j["p"] = json_double(r.p);
  j["radius"] = json_double(r.radius);
  j["k"] = r.k;
  j["estimate"] = json_double(r.estimate);
  j["sigma"] = json_double(r.sigma);
  j["bound"] = json_double(r.bound);
  j["holds"] = r.holds;
  return j;
}

inline Json search_to_json(const SearchResult& r, bool timings) {
  Json j;
  j["status"] = to_string(r.status);
  j["max_size"] = r.max_size;
  j["witness_source"] = r.witness_source;
  j["witness"] = family_to_json(r.witness);
  Json s;
  s["nodes"] = r.stats.nodes;
  s["prunes"] = r.stats.prunes;
  if (timings) s["wall_seconds"] = json_double(r.stats.wall_seconds);
  j["stats"] = std::move(s);
  return j;
}

inline Json certificate_to_json(const FamilyCertificate& c) {
  Json j;
  j["valid"] = c.valid;
  j["size"] = c.size;
  j["min_pairwise_intersection"] = c.min_pairwise_intersection ? Json(*c.min_pairwise_intersection) : Json(nullptr);
  j["hash"] = c.hash;
  if (c.violation) {
    Json v;
    v["a"] = set_to_json(c.violation->a);
    v["b"] = set_to_json(c.violation->b);
    v["size"] = c.violation->size;
    j["violation"] = std::move(v);
  }
  if (c.invalid_member) j["invalid_member"] = set_to_json(*c.invalid_member);
  return j;
}

// One verified (or reported) quantity. Rows with asserted = false are
// informational and never affect the exit status.
struct ReportRow {
  std::string check;
  Json params = Json::object();
  std::string lhs;
  std::string rhs;
  bool holds = true;
  bool asserted = true;
};

// A suite's output: the config that produced it, result rows, and free-form
// sections (traces, witnesses, Monte-Carlo details).
struct Report {
  std::string command;
  Json config = Json::object();
  std::vector<ReportRow> rows;
  Json sections = Json::object();

  void add(ReportRow row) { rows.push_back(std::move(row)); }

  [[nodiscard]] std::size_t failures() const {
    std::size_t f = 0;
    for (const auto& r : rows)
      if (r.asserted && !r.holds) ++f;
    return f;
  }
  [[nodiscard]] bool passed() const { return failures() == 0; }

  void append(const Report& other, const std::string& prefix) {
    for (auto r : other.rows) {
      r.check = prefix + "/" + r.check;
      rows.push_back(std::move(r));
    }
    if (!other.sections.empty()) sections[prefix] = other.sections;
  }
};

inline std::string params_text(const Json& params) {
  std::string s;
  for (auto it = params.begin(); it != params.end(); ++it) {
    if (!s.empty()) s += ';';
    s += it.key() + "=" + (it.value().is_string() ? it.value().get<std::string>() : it.value().dump());
  }
  return s;
}

inline Json report_to_json(const Report& rep) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = rep.command;
  j["config"] = rep.config;
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json row;
    row["check"] = r.check;
    row["params"] = r.params;
    row["lhs"] = r.lhs;
    row["rhs"] = r.rhs;
    row["holds"] = r.holds;
    if (!r.asserted) row["asserted"] = false;
    rows.push_back(std::move(row));
  }
  j["results"] = std::move(rows);
  if (!rep.sections.empty()) j["sections"] = rep.sections;
  Json summary;
  summary["rows"] = rep.rows.size();
  summary["failures"] = rep.failures();
  summary["passed"] = rep.passed();
  j["summary"] = std::move(summary);
  return j;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

enum class ReportFormat { kJson, kCsv, kText };

inline ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::kJson;
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "text") return ReportFormat::kText;
  throw std::invalid_argument("unknown format '" + s + "' (json, csv, text)");
}

// CSV and text carry the config as '#' header lines followed by the rows.
inline std::string render_report(const Report& rep, ReportFormat fmt) {
  switch (fmt) {
    case ReportFormat::kJson:
      return report_to_json(rep).dump(2) + "\n";
    case ReportFormat::kCsv: {
      std::string out = std::string("# ") + kToolName + " " + kToolVersion + " " + rep.command + "\n";
      out += "# config " + rep.config.dump() + "\n";
      out += "check,params,lhs,rhs,holds\n";
      for (const auto& r : rep.rows)
        out += csv_escape(r.check) + "," + csv_escape(params_text(r.params)) + "," + csv_escape(r.lhs) + "," +
               csv_escape(r.rhs) + "," + (r.holds ? "true" : "false") + "\n";
      return out;
    }
    case ReportFormat::kText: {
      std::string out = std::string(kToolName) + " " + kToolVersion + " " + rep.command + "\n";
      out += "config " + rep.config.dump() + "\n";
      for (const auto& r : rep.rows)
        out += std::string(r.holds ? "ok   " : (r.asserted ? "FAIL " : "note ")) + r.check + " [" +
               params_text(r.params) + "] lhs=" + r.lhs + " rhs=" + r.rhs + "\n";
      out += "summary rows=" + std::to_string(rep.rows.size()) + " failures=" + std::to_string(rep.failures()) + "\n";
      return out;
    }
  }
  return {};
}

}  // namespace treeint
