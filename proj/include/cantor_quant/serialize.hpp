#pragma once

#include "cantor_quant/oracle.hpp"
#include "cantor_quant/quantizer.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>

namespace cantor_quant {

/// {"exact": "p/q", "decimal": <12 significant digits as a number>}
nlohmann::json rational_json(Rational const &value);

/// "p/q ≈ decimal"
std::string rational_text(Rational const &value);

/// "Cell[1,2]" / "Tail[3]"; a free point renders as "Free".
std::string label_text(LabeledPoint const &point);

nlohmann::json point_json(LabeledPoint const &point);

/// {n, level, points, distortion}. level is omitted for n = 1; distortion is
/// omitted for unlabeled sets.
nlohmann::json set_json(QuantizerSet const &set);

nlohmann::json report_json(VerificationReport const &report);

/// One row per point: position,kind,word,position_decimal. `set_index` adds a
/// leading column when several sets share one file.
void write_set_csv(std::ostream &out, QuantizerSet const &set, std::optional<std::size_t> set_index = std::nullopt);
void write_set_csv_header(std::ostream &out, bool with_set_index);

/// position_decimal,position_rational,weight_rational
void write_measure_csv(std::ostream &out, DiscreteMeasure const &measure);

} // namespace cantor_quant
