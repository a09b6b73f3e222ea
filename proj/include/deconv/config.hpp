#pragma once

#include "deconv/experiments.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace deconv {

//! One [section] of a simulation config, i.e. one output table.
struct ConfigSection
{
  std::string name;
  ExperimentConfig config;
};

//! INI-style config: one section per experiment, `key = value` lines, lists
//! separated by commas, ';' or '#' comments. Keys:
//!   mode, densities, noises, n, s2n, reps, M, delta, ell_max, pen_max,
//!   seed, a, ise (e1 | e2 | auto), old_penalty (true | false).
//! Unknown keys, keys outside a section and repeated keys are errors.
std::vector<ConfigSection> parse_config(std::istream& in);
std::vector<ConfigSection> parse_config_file(const std::filesystem::path& path);

struct RunManifest
{
  std::string command;
  std::string config_path;
  std::string config_text;
  std::uint64_t seed = 0;
  std::string output_dir;
  std::vector<std::string> arguments;
};

//! Writes manifest.json with the tool version and a UTC timestamp.
void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

} // namespace deconv
