#include "cantor_quant/serialize.hpp"

#include <ostream>
#include <string>

namespace cantor_quant {

namespace {

std::string csv_quote(std::string const &field) { return "\"" + field + "\""; }

} // namespace

nlohmann::json rational_json(Rational const &value)
{
  return {{"exact", to_fraction_string(value)}, {"decimal", std::stod(to_decimal_string(value))}};
}

std::string rational_text(Rational const &value)
{
  return to_fraction_string(value) + " ≈ " + to_decimal_string(value);
}

std::string label_text(LabeledPoint const &point)
{
  if (point.kind == PointKind::Free) { return "Free"; }
  return std::string(to_string(point.kind)) + to_string(point.word);
}

nlohmann::json point_json(LabeledPoint const &point)
{
  nlohmann::json out = {{"kind", to_string(point.kind)}, {"position", rational_json(point.position)}};
  if (point.kind != PointKind::Free) { out["word"] = to_string(point.word); }
  return out;
}

nlohmann::json set_json(QuantizerSet const &set)
{
  nlohmann::json out;
  out["n"] = set.size();
  if (set.size() >= 2) { out["level"] = level_index(set.size()); }
  out["points"] = nlohmann::json::array();
  for (auto const &p : set.points()) { out["points"].push_back(point_json(p)); }
  if (set.labeled()) { out["distortion"] = rational_json(set_distortion(set)); }
  return out;
}

nlohmann::json report_json(VerificationReport const &report)
{
  nlohmann::json out = {
    {"n", report.n},
    {"passed", report.passed},
    {"message", report.message},
    {"exact_error", rational_json(report.exact_error)},
    {"construction_error", rational_json(report.construction_error)},
    {"centroid_condition_ok", report.centroid_condition_ok},
    {"set_count", report.set_count.str()},
    {"epsilon", rational_json(report.epsilon)},
    {"collapse_bound", rational_json(report.collapse_bound)},
    {"atom_count", report.atom_count},
    {"within_bound", report.within_bound},
    {"separated", report.separated},
    {"match_checked", report.match_checked},
    {"match_tolerance", report.match_tolerance},
  };
  out["dp_distortion"] = report.dp_distortion ? rational_json(*report.dp_distortion) : nlohmann::json(nullptr);
  out["dp_points"] = report.dp_points;
  out["matched_set"] = report.matched_set ? nlohmann::json(*report.matched_set) : nlohmann::json(nullptr);
  return out;
}

void write_set_csv_header(std::ostream &out, bool with_set_index)
{
  if (with_set_index) { out << "set,"; }
  out << "position,kind,word,position_decimal\n";
}

void write_set_csv(std::ostream &out, QuantizerSet const &set, std::optional<std::size_t> set_index)
{
  for (auto const &p : set.points()) {
    if (set_index) { out << *set_index << ','; }
    out << to_fraction_string(p.position) << ',' << to_string(p.kind) << ','
        << csv_quote(p.kind == PointKind::Free ? std::string() : to_string(p.word)) << ','
        << to_decimal_string(p.position) << '\n';
  }
}

void write_measure_csv(std::ostream &out, DiscreteMeasure const &measure)
{
  out << "position_decimal,position_rational,weight_rational\n";
  for (auto const &a : measure.atoms) {
    out << to_decimal_string(a.position) << ',' << to_fraction_string(a.position) << ','
        << to_fraction_string(a.weight) << '\n';
  }
}

} // namespace cantor_quant
