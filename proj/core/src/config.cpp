#include <charconv>
#include <fstream>
#include <istream>
#include <string>

#include "charzero/error.hpp"
#include "charzero/harness.hpp"

namespace charzero::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw DomainError("config: bad number for " + std::string(key) + ": " + std::string(value));
  }
  return out;
}

std::uint64_t parse_uint(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  int base = 10;
  if (value.starts_with("0x") || value.starts_with("0X")) {
    value.remove_prefix(2);
    base = 16;
  }
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out, base);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
    throw DomainError("config: bad integer for " + std::string(key) + ": " + std::string(value));
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::string, double>> ScenarioConfig::constants() const {
  return {{"c_theorem", c_theorem},       {"c_region", c_region},   {"c_conclusion", c_conclusion},
          {"c_xi", c_xi},                 {"c_witness", c_witness}, {"c_density", c_density},
          {"halasz_slack", halasz_slack}};
}

void ScenarioConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "q_min") {
    q_min = parse_uint(key, value);
  } else if (key == "q_max") {
    q_max = parse_uint(key, value);
  } else if (key == "epsilon") {
    epsilon = parse_double(key, value);
  } else if (key == "T") {
    T = parse_double(key, value);
  } else if (key == "seed") {
    seed = parse_uint(key, value);
  } else if (key == "budget") {
    if (value == "cor4") {
      budget = BudgetRule::Cor4;
    } else if (value == "cor3") {
      budget = BudgetRule::Cor3;
    } else {
      throw DomainError("config: budget must be cor4 or cor3");
    }
  } else if (key == "c_theorem") {
    c_theorem = parse_double(key, value);
  } else if (key == "c_region") {
    c_region = parse_double(key, value);
  } else if (key == "c_conclusion") {
    c_conclusion = parse_double(key, value);
  } else if (key == "c_xi") {
    c_xi = parse_double(key, value);
  } else if (key == "c_witness") {
    c_witness = parse_double(key, value);
  } else if (key == "c_density") {
    c_density = parse_double(key, value);
  } else if (key == "halasz_slack") {
    halasz_slack = parse_double(key, value);
  } else {
    throw DomainError("config: unknown key " + std::string(key));
  }
}

std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    bool quoted = false;
    for (std::size_t i = 0; i < view.size(); ++i) {
      if (view[i] == '"') quoted = !quoted;
      if (view[i] == '#' && !quoted) {
        view = view.substr(0, i);
        break;
      }
    }
    view = trim(view);
    if (view.empty()) continue;
    if (view.front() == '[') {
      if (view.back() != ']') throw DomainError("config: bad section header on line " + std::to_string(line_no));
      section = std::string(trim(view.substr(1, view.size() - 2)));
      continue;
    }
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) throw DomainError("config: expected key = value on line " + std::to_string(line_no));
    std::string key(trim(view.substr(0, eq)));
    std::string_view value = trim(view.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw DomainError("config: empty key on line " + std::to_string(line_no));
    if (!section.empty()) key = section + "." + key;
    out.emplace_back(std::move(key), std::string(value));
  }
  return out;
}

ScenarioConfig load_config(const std::string& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open " + path);
  for (const auto& [key, value] : parse_key_values(in)) {
    const auto dot = key.rfind('.');
    base.set(dot == std::string::npos ? std::string_view(key) : std::string_view(key).substr(dot + 1), value);
  }
  return base;
}

}  // namespace charzero::harness
