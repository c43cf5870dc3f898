#include "weightint/cli.hpp"

int main(int argc, char** argv) {
  return weightint::parse_and_dispatch(std::vector<std::string>(argv + 1, argv + argc));
}
