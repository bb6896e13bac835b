#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cinerank/error.hpp"
#include "cinerank/weight_opt.hpp"

namespace cinerank {

namespace {

std::string shortest(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <class T>
T parse(std::string_view text, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw DataError("weights file:" + std::to_string(line) + ": bad number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

void save_weights(std::ostream& out, const WeightFile& file) {
  out << "# provenance=" << to_string(file.weights.provenance) << " seed=" << file.seed
      << " objective=" << shortest(file.objective);
  if (file.axis) out << " axis=" << to_string(*file.axis);
  out << '\n';
  for (double w : file.weights.values) out << shortest(w) << '\n';
}

WeightFile load_weights(std::istream& in) {
  WeightFile file;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw DataError("weights file:1: missing header");
  std::istringstream header(line.substr(2));
  std::string token;
  bool have_provenance = false;
  while (header >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw DataError("weights file:1: bad header token '" + token + "'");
    const auto key = token.substr(0, eq);
    const auto value = std::string_view(token).substr(eq + 1);
    try {
      if (key == "provenance") {
        file.weights.provenance = parse_provenance(value);
        have_provenance = true;
      } else if (key == "seed") {
        file.seed = parse<std::uint64_t>(value, 1);
      } else if (key == "objective") {
        file.objective = parse<double>(value, 1);
      } else if (key == "axis") {
        file.axis = parse_axis(value);
      }
    } catch (const std::invalid_argument& e) {
      throw DataError(std::string("weights file:1: ") + e.what());
    }
  }
  if (!have_provenance) throw DataError("weights file:1: header lacks provenance");
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const double w = parse<double>(line, n);
    if (w < 0.0) throw DataError("weights file:" + std::to_string(n) + ": negative weight");
    file.weights.values.push_back(w);
  }
  return file;
}

}  // namespace cinerank
