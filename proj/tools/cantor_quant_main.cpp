#include "cantor_quant/cli.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char **argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> caps;
  if (char const *env = std::getenv("CANTOR_QUANT_CAPS")) { caps = env; }
  return cantor_quant::cli::run(args, std::cout, std::cerr, caps);
}
