#pragma once

#include <optional>
#include <string>

#include "galoisforge/caps.hpp"

namespace galoisforge::cli {

enum class Format
{
  Json,
  Text,
  Dot
};

struct RunConfig
{
  std::string command; // classify | splittings | verdict | correspondence | cover | field
  std::string input_path;
  std::optional<std::string> out_path;
  Format format = Format::Json;
  Caps caps;
};

struct RunResult
{
  int exit_code = 0; // 0 success, 2 validation error, 3 cap exceeded
  std::string output;
  std::string error;
};

// Applies "set-size=12,group-order=24,..." overrides; keys are the Caps
// field names with '-' for '_'. Throws SchemaError on unknown keys or
// non-positive values.
Caps parse_caps(std::string const &text, Caps base = {});

// Renders a command on already-read input text. Throws library errors.
std::string render(std::string const &command, std::string const &input, Format format,
                   Caps const &caps);

// Reads the input, renders, writes to the output path if set; never throws.
RunResult run(RunConfig const &config);

// Full command line handling, including the GALOISFORGE_CAPS fallback.
int main_entry(int argc, char **argv);

} // namespace galoisforge::cli
