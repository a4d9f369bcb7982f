#pragma once

#include "cantor_quant/quantizer.hpp"
#include "cantor_quant/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cantor_quant::cli {

enum class OutputFormat { Text, Json, Csv };

struct CommandConfig
{
  std::string subcommand;
  std::uint64_t n = 0;
  bool upto = false;
  bool all = false;
  std::optional<std::vector<std::size_t>> subset;
  Rational epsilon{1, 16384};
  OutputFormat format = OutputFormat::Text;
  QuantizerLimits limits;
};

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// "0,3,5" -> {0, 3, 5}; the empty string is the empty subset.
std::vector<std::size_t> parse_subset(std::string_view text);

/// "L:E" -> depth cap L and enumeration cap E, both positive.
QuantizerLimits parse_caps(std::string_view text, QuantizerLimits limits = {});

/// Runs one command. `args` excludes the program name. `caps_env` is the value
/// of CANTOR_QUANT_CAPS, if set.
int run(std::vector<std::string> const &args,
        std::ostream &out,
        std::ostream &err,
        std::optional<std::string> const &caps_env = std::nullopt);

} // namespace cantor_quant::cli
