#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tuc {

struct ProcessResult {
  std::vector<std::uint8_t> output;
  int exit_code = -1;
  bool timed_out = false;
  double elapsed_seconds = 0.0;
};

// Runs argv[0] with the given arguments, feeding `input` on stdin and
// collecting stdout. The child is killed once `timeout_seconds` elapses.
// Throws RegistrationError if the process cannot be spawned.
ProcessResult run_process(const std::vector<std::string>& argv,
                          std::span<const std::uint8_t> input,
                          double timeout_seconds);

}  // namespace tuc
