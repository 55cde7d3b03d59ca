#include <apolar/cli.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto out = apolar::cli::run(args);
  if (out.json_path.empty() || out.json_path == "-") {
    std::cout << out.document;
  } else {
    std::ofstream file(out.json_path);
    if (!file) {
      std::cerr << "cannot write " << out.json_path << "\n";
      return apolar::cli::kInputError;
    }
    file << out.document;
  }
  return out.exit_code;
}
