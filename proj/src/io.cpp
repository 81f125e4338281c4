#include "moyal/io.hpp"

#include <fmt/format.h>

#include <cmath>
#include <istream>
#include <array>
#include <ostream>
#include <sstream>
#include <json.hpp>

#include "moyal/errors.hpp"

namespace moyal {

std::string field_to_json(const Field& f) {
  nlohmann::json j;
  j["theta"] = f.params.theta;
  j["dim"] = f.params.dim;
  j["trunc"] = f.trunc;
  auto arr = nlohmann::json::array();
  for (int i = 0; i < f.side(); ++i)
    for (int k = 0; k < f.side(); ++k) arr.push_back({f.coeffs(i, k).real(), f.coeffs(i, k).imag()});
  j["coeffs"] = std::move(arr);
  return j.dump();
}

Field field_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("field_from_json: ") + e.what());
  }
  MoyalParams p{j.at("theta").get<double>(), j.at("dim").get<int>()};
  Field f = Field::zero(p, j.at("trunc").get<int>());
  const auto& arr = j.at("coeffs");
  if (arr.size() != static_cast<size_t>(f.side()) * f.side())
    throw DimensionError("field_from_json: coefficient count does not match trunc and dim");
  size_t pos = 0;
  for (int i = 0; i < f.side(); ++i)
    for (int k = 0; k < f.side(); ++k, ++pos) f.coeffs(i, k) = cplx(arr[pos].at(0), arr[pos].at(1));
  return f;
}

void write_grid_csv(std::ostream& os, const GridField& g) {
  os << "x1,x2,re,im\n";
  for (int i = 0; i < g.resolution; ++i)
    for (int j = 0; j < g.resolution; ++j)
      os << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", g.coord(i), g.coord(j), g.samples(i, j).real(),
                        g.samples(i, j).imag());
}

GridField read_grid_csv(std::istream& is, const MoyalParams& p) {
  std::string line;
  if (!std::getline(is, line) || line != "x1,x2,re,im") throw DomainError("grid csv: missing header");
  std::vector<std::array<double, 4>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::array<double, 4> r{};
    std::stringstream ss(line);
    std::string cell;
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(ss, cell, ',')) throw DomainError("grid csv: short row");
      r[c] = std::stod(cell);
    }
    rows.push_back(r);
  }
  const int res = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rows.size()))));
  if (res < 2 || static_cast<size_t>(res) * res != rows.size()) throw DomainError("grid csv: not a square grid");
  GridField g;
  g.params = p;
  g.resolution = res;
  g.extent = -rows.front()[0];
  g.samples.resize(res, res);
  for (int i = 0; i < res; ++i)
    for (int j = 0; j < res; ++j) {
      const auto& r = rows[static_cast<size_t>(i) * res + j];
      g.samples(i, j) = cplx(r[2], r[3]);
    }
  g.validate();
  return g;
}

}  // namespace moyal
