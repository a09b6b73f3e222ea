#include "deconv/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#ifndef DECONV_VERSION
#define DECONV_VERSION "unknown"
#endif

namespace deconv {

namespace {

std::string trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value)
{
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ','))
    if (auto t = trim(item); !t.empty())
      out.push_back(t);
  if (out.empty())
    throw config_error("empty list");
  return out;
}

template<class T>
T parse_number(const std::string& text, const std::string& key)
{
  T v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw config_error("invalid number '" + text + "' for key '" + key + "'");
  return v;
}

bool parse_bool(const std::string& text, const std::string& key)
{
  if (text == "true" || text == "1" || text == "yes")
    return true;
  if (text == "false" || text == "0" || text == "no")
    return false;
  throw config_error("invalid boolean '" + text + "' for key '" + key + "'");
}

void apply(ExperimentConfig& cfg, const std::string& key, const std::string& raw)
{
  const std::string value = trim(raw);
  if (key == "mode")
    cfg.mode = parse_mode(value);
  else if (key == "densities") {
    cfg.densities.clear();
    for (const auto& s : split_list(value))
      cfg.densities.push_back(parse_density(s).id);
  } else if (key == "noises") {
    cfg.noises.clear();
    for (const auto& s : split_list(value))
      cfg.noises.push_back(parse_noise_kind(s));
  } else if (key == "n") {
    cfg.n_values.clear();
    for (const auto& s : split_list(value))
      cfg.n_values.push_back(parse_number<std::size_t>(s, key));
  } else if (key == "s2n") {
    cfg.s2n_values.clear();
    for (const auto& s : split_list(value))
      cfg.s2n_values.push_back(parse_number<double>(s, key));
  } else if (key == "reps")
    cfg.reps = parse_number<std::size_t>(value, key);
  else if (key == "M")
    cfg.M = parse_number<unsigned>(value, key);
  else if (key == "delta")
    cfg.delta_grid = parse_number<double>(value, key);
  else if (key == "ell_max")
    cfg.ell_max = parse_number<double>(value, key);
  else if (key == "pen_max")
    cfg.pen_max = parse_number<double>(value, key);
  else if (key == "seed")
    cfg.seed = parse_number<std::uint64_t>(value, key);
  else if (key == "a")
    cfg.dependence_a = parse_number<double>(value, key);
  else if (key == "ise") {
    if (value == "auto")
      cfg.ise_method.reset();
    else
      cfg.ise_method = parse_ise_method(value);
  } else if (key == "old_penalty")
    cfg.old_penalty = parse_bool(value, key);
  else
    throw config_error("unknown key '" + key + "'");
}

} // namespace

std::vector<ConfigSection> parse_config(std::istream& in)
{
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw config_error("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  std::vector<ConfigSection> sections;
  std::set<std::string> names;
  for (const auto& [name, body] : tree) {
    if (body.empty())
      throw config_error("key '" + name + "' outside of a [section]");
    if (!names.insert(name).second)
      throw config_error("repeated section [" + name + "]");
    ConfigSection section{ name, {} };
    try {
      for (const auto& [key, node] : body)
        apply(section.config, key, node.data());
      section.config.validate();
    } catch (const config_error& e) {
      throw config_error("[" + name + "] " + e.what());
    }
    sections.push_back(std::move(section));
  }
  if (sections.empty())
    throw config_error("config has no sections");
  return sections;
}

std::vector<ConfigSection> parse_config_file(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw config_error("cannot read config file " + path.string());
  return parse_config(in);
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest)
{
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);

  nlohmann::ordered_json j;
  j["command"] = manifest.command;
  j["arguments"] = manifest.arguments;
  j["config_path"] = manifest.config_path;
  j["config"] = manifest.config_text;
  j["seed"] = manifest.seed;
  j["output_dir"] = manifest.output_dir;
  j["version"] = DECONV_VERSION;
  j["timestamp"] = stamp;

  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write manifest in " + dir.string());
  out << j.dump(2) << '\n';
}

} // namespace deconv
