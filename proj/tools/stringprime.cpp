#include <string>
#include <vector>

#include "stringprime/cli.hpp"

int main(int argc, char** argv) {
  return stringprime::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
