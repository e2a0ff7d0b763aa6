#include "hrmc/data_io.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace hrmc {

namespace {

bool parse_double(const std::string& text, double& out) {
  try {
    size_t pos = 0;
    out = std::stod(text, &pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    return pos == text.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::string strip(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

Vec ingest_returns(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read returns file: " + path);

  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = strip(line);
    if (text.empty()) continue;
    double v;
    if (!parse_double(text, v)) {
      if (line_no == 1 && values.empty()) continue;  // header line
      throw std::runtime_error(path + ": non-numeric value on line " +
                               std::to_string(line_no) + ": '" + text + "'");
    }
    values.push_back(v);
  }
  if (values.size() < 10)
    throw std::runtime_error(path + ": need at least 10 observations, got " +
                             std::to_string(values.size()));

  Vec out = Eigen::Map<Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
  out.array() -= out.mean();
  return out;
}

}  // namespace hrmc
