#pragma once

#include <filesystem>

#include "braces/brace.hpp"

namespace braces {

  // {"size", "additive": {"invariant_factors"}, "mul": [[...], ...], "meta"}
  nlohmann::ordered_json brace_to_json(BraceTable const& b);

  // Throws FormatError on malformed documents; the BraceTable constructor's
  // IdentityViolation passes through unchanged.
  BraceTable brace_from_json(nlohmann::ordered_json const& j);

  void       write_brace_file(std::filesystem::path const& path, BraceTable const& b);
  BraceTable read_brace_file(std::filesystem::path const& path);

}  // namespace braces
