#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"
#include "teamcov/diagnostics.hpp"

int main(int argc, char** argv) {
  teamcov::set_warning_handler([](std::string_view) {});
  doctest::Context ctx(argc, argv);
  return ctx.run();
}
