#pragma once

#include <string>

#include "frgeo/gaussian.hpp"
#include "frgeo/matrix.hpp"

namespace frgeo {

// CSV matrix format: rows of comma-separated decimal literals, no header,
// LF line endings, 17 significant digits (lossless double round-trip).
void save_matrix_csv(const Matrix& m, const std::string& path);
Matrix load_matrix_csv(const std::string& path);

std::string matrix_to_csv(const Matrix& m);
Matrix matrix_from_csv_text(const std::string& text, const std::string& origin);

// A CovarianceModel persists as <prefix>.eigenvalues.csv (one row),
// <prefix>.basis.csv and a JSON sidecar <prefix>.json {dim, provenance}.
void save_model(const CovarianceModel& model, const std::string& prefix);
CovarianceModel load_model(const std::string& prefix);

std::string format_double(double v);  // %.17g

}  // namespace frgeo
