#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "floc/cli.hpp"

namespace floc::cli {

using Json = nlohmann::ordered_json;

namespace {

Json value_json(const Value& v) {
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v);
  return std::get<std::int64_t>(v);
}

Json obligation_json(const localize::ObligationResult& r, bool timings) {
  Json j;
  j["id"] = r.id;
  j["verdict"] = logic::to_string(r.verdict.kind);
  if (r.verdict.is_unknown()) j["reason"] = logic::to_string(r.verdict.reason);
  j["timeSec"] = timings ? r.time_sec : 0.0;
  return j;
}

Json report_json(const localize::LocalizationReport& r, bool timings) {
  Json j;
  j["function"] = r.function;

  Json det;
  det["verdict"] = logic::to_string(r.detection.verdict.kind);
  if (r.detection.verdict.is_unknown()) det["reason"] = logic::to_string(r.detection.verdict.reason);
  if (r.detection.verdict.witness) {
    Json w = Json::object();
    for (const auto& [name, value] : *r.detection.verdict.witness) w[name] = value_json(value);
    det["witness"] = w;
  }
  det["obligations"] = Json::array();
  for (const auto& o : r.detection.obligations) det["obligations"].push_back(obligation_json(o, timings));
  j["detection"] = det;

  j["candidates"] = Json::array();
  for (const auto& c : r.candidates) {
    Json cj;
    cj["id"] = c.candidate.id;
    cj["kind"] = faultmodel::to_string(c.candidate.kind);
    cj["normalizedText"] = c.candidate.location.normalized_text;
    cj["originalLine"] = c.candidate.location.original_line;
    cj["originalText"] = c.candidate.location.original_text;
    cj["overall"] = localize::to_string(c.overall);
    cj["loopScoped"] = c.candidate.loop_scoped;
    cj["obligations"] = Json::array();
    for (const auto& o : c.obligations) cj["obligations"].push_back(obligation_json(o, timings));
    cj["timeSec"] = timings ? c.time_sec : 0.0;
    j["candidates"].push_back(cj);
  }

  j["reported"] = Json::array();
  for (const auto& loc : r.reported) {
    Json lj;
    lj["originalLine"] = loc.original_line;
    lj["originalText"] = loc.original_text;
    lj["normalizedText"] = loc.normalized_text;
    j["reported"].push_back(lj);
  }
  j["mode"] = localize::to_string(r.mode);
  j["semantics"] = r.semantics;
  j["boundB"] = r.bound;
  j["timings"] = {{"detectSec", timings ? r.detect_sec : 0.0}, {"totalSec", timings ? r.total_sec : 0.0}};
  return j;
}

const Json& field(const Json& j, const char* key, Json::value_t type) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("report: missing key '") + key + "'");
  const Json& v = j.at(key);
  bool ok = v.type() == type || (type == Json::value_t::number_float && v.is_number()) ||
            (type == Json::value_t::number_integer && v.is_number_integer());
  if (!ok) throw Error(std::string("report: key '") + key + "' has the wrong type");
  return v;
}

void check_obligations(const Json& list) {
  for (const auto& o : list) {
    field(o, "id", Json::value_t::string);
    field(o, "verdict", Json::value_t::string);
    field(o, "timeSec", Json::value_t::number_float);
  }
}

void check_report(const Json& r) {
  field(r, "function", Json::value_t::string);
  const Json& det = field(r, "detection", Json::value_t::object);
  field(det, "verdict", Json::value_t::string);
  check_obligations(field(det, "obligations", Json::value_t::array));
  for (const auto& c : field(r, "candidates", Json::value_t::array)) {
    field(c, "id", Json::value_t::number_integer);
    field(c, "kind", Json::value_t::string);
    field(c, "normalizedText", Json::value_t::string);
    field(c, "originalLine", Json::value_t::number_integer);
    field(c, "originalText", Json::value_t::string);
    field(c, "overall", Json::value_t::string);
    field(c, "loopScoped", Json::value_t::boolean);
    check_obligations(field(c, "obligations", Json::value_t::array));
    field(c, "timeSec", Json::value_t::number_float);
  }
  for (const auto& l : field(r, "reported", Json::value_t::array)) {
    field(l, "originalLine", Json::value_t::number_integer);
    field(l, "originalText", Json::value_t::string);
    field(l, "normalizedText", Json::value_t::string);
  }
  field(r, "mode", Json::value_t::string);
  field(r, "semantics", Json::value_t::string);
  field(r, "boundB", Json::value_t::number_integer);
  const Json& t = field(r, "timings", Json::value_t::object);
  field(t, "detectSec", Json::value_t::number_float);
  field(t, "totalSec", Json::value_t::number_float);
}

Json parse_reports(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(std::string("report: ") + e.what());
  }
  if (!doc.is_array()) throw Error("report: expected an array of reports");
  for (const auto& r : doc) check_report(r);
  return doc;
}

std::string witness_text(const logic::Verdict& v) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, value] : *v.witness) {
    os << (first ? "" : ", ") << name << '=' << to_string(value);
    first = false;
  }
  return os.str();
}

std::string verdict_text(const logic::Verdict& v) {
  std::string s(logic::to_string(v.kind));
  if (v.is_unknown()) s += " (" + std::string(logic::to_string(v.reason)) + ")";
  if (v.witness && !v.witness->empty()) s += " (witness: " + witness_text(v) + ")";
  return s;
}

std::string location_text(const normalizer::LocationDescription& loc) {
  std::string s = loc.normalized_text + " in line " + std::to_string(loc.original_line);
  if (loc.original_text != loc.normalized_text) s += " (" + loc.original_text + ")";
  return s;
}

}  // namespace

std::string render_verify_text(const std::string& function, const localize::Detection& d) {
  std::ostringstream os;
  os << function << ": " << verdict_text(d.verdict) << '\n';
  for (const auto& o : d.obligations) os << "  " << o.id << ": " << verdict_text(o.verdict) << '\n';
  return os.str();
}

std::string render_text(const localize::LocalizationReport& r) {
  std::ostringstream os;
  os << "function " << r.function << '\n';
  os << "  detection: " << verdict_text(r.detection.verdict) << '\n';
  if (r.detection.verdict.is_valid()) {
    os << "  no error detected; nothing to localize\n";
    return os.str();
  }
  os << "  candidates (" << localize::to_string(r.mode) << ", " << r.semantics << "):\n";
  for (const auto& c : r.candidates) {
    os << "    C" << std::left << std::setw(3) << c.candidate.id << std::setw(11)
       << faultmodel::to_string(c.candidate.kind) << "line " << std::setw(5) << c.candidate.location.original_line
       << std::setw(28) << c.candidate.location.normalized_text << ' ' << localize::to_string(c.overall);
    if (c.overall == localize::Overall::Inconclusive) {
      for (const auto& o : c.obligations)
        if (o.verdict.is_unknown()) {
          os << " (" << o.id << ": " << logic::to_string(o.verdict.reason) << ")";
          break;
        }
    }
    if (c.candidate.loop_scoped) os << " [loop-scoped]";
    os << std::right << '\n';
  }
  os << "  reports " << r.reported.size() << " potential error location" << (r.reported.size() == 1 ? "" : "s");
  for (std::size_t i = 0; i < r.reported.size(); ++i)
    os << (i ? ", " : ": ") << location_text(r.reported[i]);
  os << '\n';
  return os.str();
}

std::string render_json(const std::vector<localize::LocalizationReport>& reports, bool timings) {
  Json doc = Json::array();
  for (const auto& r : reports) doc.push_back(report_json(r, timings));
  return doc.dump(2) + "\n";
}

std::string reserialize_json(const std::string& text) { return parse_reports(text).dump(2) + "\n"; }

std::vector<ParsedReport> parse_json(const std::string& text) {
  std::vector<ParsedReport> out;
  for (const auto& r : parse_reports(text)) {
    ParsedReport p;
    p.function = r.at("function").get<std::string>();
    p.detection = r.at("detection").at("verdict").get<std::string>();
    for (const auto& l : r.at("reported"))
      p.reported.push_back({l.at("originalLine").get<int>(), l.at("originalText").get<std::string>(),
                            l.at("normalizedText").get<std::string>()});
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace floc::cli
