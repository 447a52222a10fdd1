#pragma once

#include <string>

#include "json.hpp"

#include "mtfa/covariance.hpp"
#include "mtfa/grid.hpp"
#include "mtfa/symplectic.hpp"

namespace mtfa {

using json = nlohmann::ordered_json;

// Signal CSV: header "# field vars=<v> N=<N>", rows "index,re,im" in
// row-major order. Full round-trip precision (17 significant digits).
void write_field_csv(const std::string& path, const Field& f);
Field read_field_csv(const std::string& path);

// Matrix CSV: header "# symplectic D=<D>", then row-major rows.
void write_matrix_csv(const std::string& path, const Mat& m);
Mat read_matrix_csv(const std::string& path);

// Grayscale magnitude map for quick inspection (lossy, 8-bit PGM).
void write_pgm(const std::string& path, const Field& f);

json report_to_json(const CovarianceReport& rep, Mode mode, int grid_n, bool with_timestamp);

}  // namespace mtfa
