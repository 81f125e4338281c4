#pragma once

#include <iosfwd>
#include <string>

#include "moyal/field.hpp"
#include "moyal/fourier.hpp"

namespace moyal {

// {"theta", "dim", "trunc", "coeffs": [[re, im], ...]} in row-major order.
std::string field_to_json(const Field& f);
Field field_from_json(const std::string& text);

// Header "x1,x2,re,im", one line per grid point, 17 significant digits.
void write_grid_csv(std::ostream& os, const GridField& g);
GridField read_grid_csv(std::istream& is, const MoyalParams& p);

}  // namespace moyal
