#include "frgeo/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "frgeo/errors.hpp"

#include "json.hpp"

namespace frgeo {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string matrix_to_csv(const Matrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j != 0) os << ',';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
  return os.str();
}

void save_matrix_csv(const Matrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot open " + path + " for writing");
  out << matrix_to_csv(m);
  if (!out) throw parse_error("write failure on " + path);
}

Matrix matrix_from_csv_text(const std::string& text, const std::string& origin) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.c_str();
    while (true) {
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(p, &end);
      if (end == p || errno == ERANGE) {
        std::ostringstream os;
        os << origin << ": line " << line_no << ": malformed numeric field near '"
           << p << "'";
        throw parse_error(os.str());
      }
      row.push_back(v);
      while (*end == ' ' || *end == '\t') ++end;
      if (*end == ',') {
        p = end + 1;
        continue;
      }
      if (*end == '\0') break;
      std::ostringstream os;
      os << origin << ": line " << line_no << ": unexpected character '" << *end << "'";
      throw parse_error(os.str());
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      std::ostringstream os;
      os << origin << ": line " << line_no << ": row has " << row.size()
         << " fields, expected " << rows.front().size();
      throw parse_error(os.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw parse_error(origin + ": no data rows");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

Matrix load_matrix_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return matrix_from_csv_text(buf.str(), path);
}

void save_model(const CovarianceModel& model, const std::string& prefix) {
  Matrix eig_row(1, model.dim());
  for (std::size_t j = 0; j < model.dim(); ++j) eig_row(0, j) = model.eigenvalues()[j];
  save_matrix_csv(eig_row, prefix + ".eigenvalues.csv");
  save_matrix_csv(model.basis(), prefix + ".basis.csv");
  std::ofstream side(prefix + ".json", std::ios::binary);
  if (!side) throw parse_error("cannot open " + prefix + ".json for writing");
  side << "{\"dim\": " << model.dim() << ", \"provenance\": \""
       << provenance_name(model.provenance()) << "\"}\n";
}

CovarianceModel load_model(const std::string& prefix) {
  const Matrix eig_row = load_matrix_csv(prefix + ".eigenvalues.csv");
  if (eig_row.rows() != 1)
    throw parse_error(prefix + ".eigenvalues.csv: expected a single row");
  const Matrix basis = load_matrix_csv(prefix + ".basis.csv");

  std::ifstream side(prefix + ".json", std::ios::binary);
  if (!side) throw parse_error("cannot open " + prefix + ".json");
  nlohmann::json j;
  try {
    side >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(prefix + ".json: " + e.what());
  }
  if (!j.contains("dim") || !j.contains("provenance"))
    throw parse_error(prefix + ".json: missing dim or provenance");
  const std::size_t dim = j["dim"].get<std::size_t>();
  if (dim != eig_row.cols() || basis.rows() != dim || basis.cols() != dim)
    throw parse_error(prefix + ": sidecar dim does not match CSV payload");
  std::vector<double> eig(dim);
  for (std::size_t i = 0; i < dim; ++i) eig[i] = eig_row(0, i);
  return CovarianceModel::from_spectral(
      std::move(eig), basis, provenance_from_name(j["provenance"].get<std::string>()));
}

}  // namespace frgeo
