#include "cantor_quant/cli.hpp"

#include "cantor_quant/error.hpp"
#include "cantor_quant/measure.hpp"
#include "cantor_quant/oracle.hpp"
#include "cantor_quant/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <map>
#include <ostream>

namespace cantor_quant::cli {

namespace {

using nlohmann::json;

std::string subset_text(std::vector<std::size_t> const &subset)
{
  std::string out = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) { out += (i ? "," : "") + std::to_string(subset[i]); }
  return out + "}";
}

std::vector<std::size_t> first_subset(std::uint64_t n)
{
  std::vector<std::size_t> subset(n - (std::uint64_t{1} << level_index(n)));
  for (std::size_t i = 0; i < subset.size(); ++i) { subset[i] = i; }
  return subset;
}

QuantizerSet selected_set(CommandConfig const &config, std::vector<std::size_t> &subset)
{
  if (config.n == 1) {
    if (config.subset && !config.subset->empty()) { throw DomainError("n = 1 takes no subset"); }
    subset.clear();
    return build_level_set(0, config.limits);
  }
  subset = config.subset ? *config.subset : first_subset(config.n);
  return build_optimal_set(config.n, subset, config.limits);
}

json envelope(CommandConfig const &config, json inputs, json results)
{
  return {{"command", config.subcommand}, {"inputs", std::move(inputs)}, {"results", std::move(results)}};
}

json set_inputs(CommandConfig const &config, std::vector<std::size_t> const &subset)
{
  json inputs = {{"n", config.n}};
  if (!config.all) { inputs["subset"] = subset; }
  return inputs;
}

void print_set_text(std::ostream &out, QuantizerSet const &set)
{
  for (auto const &p : set.points()) {
    out << "  " << label_text(p) << "  " << rational_text(p.position) << '\n';
  }
  out << "  distortion = " << rational_text(set_distortion(set)) << '\n';
}

int cmd_moments(CommandConfig const &config, std::ostream &out)
{
  Moments const m = moments();
  if (config.format == OutputFormat::Json) {
    out << envelope(config, json::object(),
                    {{"mean", rational_json(m.mean)},
                     {"variance", rational_json(m.variance)},
                     {"second_raw_moment", rational_json(m.second_raw_moment())}})
             .dump(2)
        << '\n';
  } else if (config.format == OutputFormat::Csv) {
    out << "quantity,exact,decimal\n"
        << "mean," << to_fraction_string(m.mean) << ',' << to_decimal_string(m.mean) << '\n'
        << "variance," << to_fraction_string(m.variance) << ',' << to_decimal_string(m.variance) << '\n'
        << "second_raw_moment," << to_fraction_string(m.second_raw_moment()) << ','
        << to_decimal_string(m.second_raw_moment()) << '\n';
  } else {
    out << "E(X) = " << rational_text(m.mean) << '\n'
        << "V = " << rational_text(m.variance) << '\n'
        << "E(X^2) = " << rational_text(m.second_raw_moment()) << '\n';
  }
  return kExitOk;
}

int cmd_error(CommandConfig const &config, std::ostream &out)
{
  std::uint64_t const first = config.upto ? 1 : config.n;
  if (config.format == OutputFormat::Json) {
    json rows = json::array();
    for (std::uint64_t n = first; n <= config.n; ++n) {
      rows.push_back({{"n", n}, {"error", rational_json(quantization_error(n))}});
    }
    out << envelope(config, {{"n", config.n}, {"upto", config.upto}}, rows).dump(2) << '\n';
  } else if (config.format == OutputFormat::Csv) {
    out << "n,exact,decimal\n";
    for (std::uint64_t n = first; n <= config.n; ++n) {
      Rational const v = quantization_error(n);
      out << n << ',' << to_fraction_string(v) << ',' << to_decimal_string(v) << '\n';
    }
  } else {
    for (std::uint64_t n = first; n <= config.n; ++n) {
      out << "V_" << n << " = " << rational_text(quantization_error(n)) << '\n';
    }
  }
  return kExitOk;
}

int cmd_optimal(CommandConfig const &config, std::ostream &out)
{
  std::vector<std::size_t> subset;
  std::vector<QuantizerSet> sets;
  if (config.all) {
    sets = enumerate_optimal_sets(config.n, config.limits);
  } else {
    sets.push_back(selected_set(config, subset));
  }

  if (config.format == OutputFormat::Json) {
    json results = {{"count", optimal_set_count(config.n).str()},
                    {"error", rational_json(quantization_error(config.n))},
                    {"sets", json::array()}};
    for (auto const &set : sets) { results["sets"].push_back(set_json(set)); }
    out << envelope(config, set_inputs(config, subset), results).dump(2) << '\n';
  } else if (config.format == OutputFormat::Csv) {
    write_set_csv_header(out, config.all);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      write_set_csv(out, sets[i], config.all ? std::optional<std::size_t>(i) : std::nullopt);
    }
  } else {
    out << "n = " << config.n;
    if (config.n >= 2) { out << ", l(n) = " << level_index(config.n); }
    out << ", optimal sets = " << optimal_set_count(config.n).str() << '\n';
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (config.all) {
        out << "set " << i << ":\n";
      } else {
        out << "subset I = " << subset_text(subset) << ":\n";
      }
      print_set_text(out, sets[i]);
    }
  }
  return kExitOk;
}

int cmd_split(CommandConfig const &config, std::ostream &out)
{
  std::vector<std::size_t> subset;
  QuantizerSet const base = selected_set(config, subset);
  auto const successors = split_step(base);

  if (config.format == OutputFormat::Json) {
    json results = {{"base", set_json(base)}, {"successors", json::array()}};
    for (auto const &s : successors) { results["successors"].push_back(set_json(s)); }
    out << envelope(config, set_inputs(config, subset), results).dump(2) << '\n';
  } else if (config.format == OutputFormat::Csv) {
    write_set_csv_header(out, true);
    for (std::size_t i = 0; i < successors.size(); ++i) { write_set_csv(out, successors[i], i); }
  } else {
    out << "base (n = " << config.n << ", I = " << subset_text(subset) << "):\n";
    print_set_text(out, base);
    out << successors.size() << " successor(s) with n = " << config.n + 1 << ":\n";
    for (std::size_t i = 0; i < successors.size(); ++i) {
      out << "successor " << i << ":\n";
      print_set_text(out, successors[i]);
    }
  }
  return kExitOk;
}

int cmd_verify(CommandConfig const &config, std::ostream &out)
{
  VerificationReport const report = compare(config.n, config.epsilon, config.limits);
  if (config.format == OutputFormat::Json) {
    out << envelope(config, {{"n", config.n}, {"epsilon", to_fraction_string(config.epsilon)}}, report_json(report))
             .dump(2)
        << '\n';
  } else if (config.format == OutputFormat::Csv) {
    out << "n,passed,exact_error,dp_distortion,collapse_bound,atom_count\n"
        << report.n << ',' << (report.passed ? "true" : "false") << ',' << to_fraction_string(report.exact_error)
        << ',' << (report.dp_distortion ? to_fraction_string(*report.dp_distortion) : "") << ','
        << to_fraction_string(report.collapse_bound) << ',' << report.atom_count << '\n';
  } else {
    out << (report.passed ? "PASS" : "FAIL") << "  n = " << report.n << ", epsilon = "
        << to_fraction_string(report.epsilon) << '\n'
        << "  exact V_n          = " << rational_text(report.exact_error) << '\n'
        << "  construction error = " << rational_text(report.construction_error) << '\n'
        << "  centroid condition = " << (report.centroid_condition_ok ? "ok" : "violated") << '\n'
        << "  optimal set count  = " << report.set_count.str() << '\n'
        << "  atoms              = " << report.atom_count << '\n'
        << "  collapse bound     = " << rational_text(report.collapse_bound) << '\n';
    if (report.dp_distortion) {
      out << "  DP distortion      = " << to_decimal_string(*report.dp_distortion, 17) << '\n'
          << "  |DP - V_n|         = " << to_decimal_string(abs(*report.dp_distortion - report.exact_error), 6)
          << (report.within_bound ? " <= bound" : " > bound") << '\n';
    }
    if (report.match_checked) {
      out << "  matches set        = "
          << (report.matched_set ? std::to_string(*report.matched_set) : std::string("none")) << '\n';
    }
    if (!report.passed) { out << "  " << report.message << '\n'; }
  }
  return report.passed ? kExitOk : kExitVerificationFailed;
}

int cmd_export_plot(CommandConfig const &config, std::ostream &out)
{
  std::vector<std::size_t> subset;
  QuantizerSet const set = selected_set(config, subset);
  auto const boundaries = voronoi_boundaries(set);

  if (config.format == OutputFormat::Json) {
    json results = set_json(set);
    results["boundaries"] = json::array();
    for (auto const &b : boundaries) { results["boundaries"].push_back(rational_json(b)); }
    results["cell_errors"] = json::array();
    for (auto const &p : set.points()) { results["cell_errors"].push_back(rational_json(cell_error(p.word))); }
    out << envelope(config, set_inputs(config, subset), results).dump(2) << '\n';
    return kExitOk;
  }
  out << "record,index,position,position_decimal,kind,word,error,error_decimal\n";
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto const &p = set[i];
    Rational const e = cell_error(p.word);
    out << "point," << i << ',' << to_fraction_string(p.position) << ',' << to_decimal_string(p.position) << ','
        << to_string(p.kind) << ",\"" << to_string(p.word) << "\"," << to_fraction_string(e) << ','
        << to_decimal_string(e) << '\n';
  }
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    out << "boundary," << i << ',' << to_fraction_string(boundaries[i]) << ',' << to_decimal_string(boundaries[i])
        << ",,,,\n";
  }
  return kExitOk;
}

int cmd_measure(CommandConfig const &config, std::ostream &out)
{
  DiscreteMeasure const measure = discretize(config.epsilon);
  if (config.format == OutputFormat::Json) {
    json atoms = json::array();
    for (auto const &a : measure.atoms) {
      atoms.push_back({{"position", rational_json(a.position)}, {"weight", rational_json(a.weight)}});
    }
    out << envelope(config, {{"epsilon", to_fraction_string(config.epsilon)}},
                    {{"atoms", atoms}, {"collapse_bound", rational_json(measure.collapse_bound)}})
             .dump(2)
        << '\n';
  } else {
    write_measure_csv(out, measure);
  }
  return kExitOk;
}

} // namespace

std::vector<std::size_t> parse_subset(std::string_view text)
{
  std::vector<std::size_t> out;
  if (text.empty()) { return out; }
  while (true) {
    auto const comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    std::size_t value = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
      throw ParseError("malformed subset index '" + std::string(item) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) { break; }
    text.remove_prefix(comma + 1);
  }
  return out;
}

QuantizerLimits parse_caps(std::string_view text, QuantizerLimits limits)
{
  auto const colon = text.find(':');
  if (colon == std::string_view::npos) { throw ParseError("CANTOR_QUANT_CAPS must look like L:E"); }
  auto parse_positive = [&](std::string_view item, auto &target) {
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size() || value == 0) {
      throw ParseError("CANTOR_QUANT_CAPS: '" + std::string(item) + "' is not a positive integer");
    }
    target = static_cast<std::remove_reference_t<decltype(target)>>(value);
  };
  parse_positive(text.substr(0, colon), limits.max_level);
  parse_positive(text.substr(colon + 1), limits.max_sets);
  return limits;
}

int run(std::vector<std::string> const &args,
        std::ostream &out,
        std::ostream &err,
        std::optional<std::string> const &caps_env)
{
  CommandConfig config;
  std::string format = "text";
  std::string epsilon_text = "1/16384";
  std::string subset_arg;

  CLI::App app{"Exact optimal n-means and quantization errors for a self-similar measure on [0, 1]", "cantor-quant"};
  app.require_subcommand(1);

  std::map<std::string, OutputFormat> const formats{
    {"text", OutputFormat::Text}, {"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}};
  auto add_format = [&](CLI::App *sub) {
    sub->add_option("--format", format, "Output format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  };
  auto add_n = [&](CLI::App *sub) {
    sub->add_option("--n", config.n, "Number of quantizer points")->required()->check(CLI::PositiveNumber);
  };
  std::vector<CLI::Option *> subset_options;
  auto add_subset = [&](CLI::App *sub) {
    auto *opt = sub->add_option("--subset", subset_arg, "Zero-based indices into the sorted level set, e.g. 0,3");
    subset_options.push_back(opt);
    return opt;
  };

  auto *moments_cmd = app.add_subcommand("moments", "Mean, variance and second moment of P");
  add_format(moments_cmd);

  auto *error_cmd = app.add_subcommand("error", "Exact n-th quantization error");
  add_n(error_cmd);
  error_cmd->add_flag("--upto", config.upto, "Tabulate every n from 1 to N");
  add_format(error_cmd);

  auto *optimal_cmd = app.add_subcommand("optimal", "Optimal set alpha_n(I)");
  add_n(optimal_cmd);
  auto *subset_opt = add_subset(optimal_cmd);
  optimal_cmd->add_flag("--all", config.all, "Enumerate every optimal set")->excludes(subset_opt);
  add_format(optimal_cmd);

  auto *split_cmd = app.add_subcommand("split", "Successor (n+1)-sets obtained by splitting");
  add_n(split_cmd);
  add_subset(split_cmd);
  add_format(split_cmd);

  auto *verify_cmd = app.add_subcommand("verify", "Compare V_n with exact 1-D k-means on a discretization");
  add_n(verify_cmd);
  verify_cmd->add_option("--epsilon", epsilon_text, "Discretization mass threshold as p/q");
  add_format(verify_cmd);

  auto *plot_cmd = app.add_subcommand("export-plot", "Points, Voronoi boundaries and cell errors for plotting");
  add_n(plot_cmd);
  add_subset(plot_cmd);
  add_format(plot_cmd);

  auto *measure_cmd = app.add_subcommand("measure", "Export the discretized measure");
  measure_cmd->add_option("--epsilon", epsilon_text, "Discretization mass threshold as p/q");
  add_format(measure_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::CallForHelp const &) {
    out << app.help();
    return kExitOk;
  } catch (CLI::CallForAllHelp const &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (CLI::ParseError const &e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (caps_env) { config.limits = parse_caps(*caps_env, config.limits); }
    config.subcommand = app.get_subcommands().front()->get_name();
    config.format = formats.at(format);
    config.epsilon = parse_rational(epsilon_text);
    if (std::any_of(subset_options.begin(), subset_options.end(), [](auto *opt) { return opt->count() > 0; })) {
      config.subset = parse_subset(subset_arg);
    }

    if (config.subcommand == "moments") { return cmd_moments(config, out); }
    if (config.subcommand == "error") { return cmd_error(config, out); }
    if (config.subcommand == "optimal") { return cmd_optimal(config, out); }
    if (config.subcommand == "split") { return cmd_split(config, out); }
    if (config.subcommand == "verify") { return cmd_verify(config, out); }
    if (config.subcommand == "export-plot") {
      if (format == "text") { config.format = OutputFormat::Csv; }
      return cmd_export_plot(config, out);
    }
    return cmd_measure(config, out);
  } catch (Error const &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (std::exception const &e) {
    err << "internal error: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
}

} // namespace cantor_quant::cli
