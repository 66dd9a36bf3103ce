#include "dephasim/cli.hpp"

int main(int argc, char** argv) {
  return dephasim::cli::run_command(argc, argv);
}
