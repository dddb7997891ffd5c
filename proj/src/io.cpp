#include "anchorex/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace anchorex {

Eigen::Index CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<Eigen::Index>(i);
  }
  throw ValidationError("CSV column not found: " + name);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open CSV file: " + path);

  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError("CSV file is empty: " + path);
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();

  CsvTable table;
  std::stringstream header_stream(line);
  std::string cell;
  while (std::getline(header_stream, cell, ',')) table.header.push_back(cell);
  if (table.header.empty()) {
    throw ValidationError("CSV header row is empty: " + path);
  }

  std::vector<std::vector<double>> rows;
  long line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream row_stream(line);
    while (std::getline(row_stream, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ValidationError(path + ":" + std::to_string(line_number) +
                              ": cannot parse float '" + cell + "'");
      }
    }
    if (row.size() != table.header.size()) {
      throw ValidationError(path + ":" + std::to_string(line_number) +
                            ": expected " + std::to_string(table.header.size()) +
                            " fields, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }

  table.values.resize(rows.size(), table.header.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < table.header.size(); ++j) {
      table.values(i, j) = rows[i][j];
    }
  }
  return table;
}

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Eigen::MatrixXd& values) {
  if (static_cast<Eigen::Index>(header.size()) != values.cols()) {
    throw ValidationError("CSV header does not match column count");
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write CSV file: " + path);
  for (std::size_t j = 0; j < header.size(); ++j) {
    out << (j ? "," : "") << header[j];
  }
  out << '\n';
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      out << (j ? "," : "") << format_double(values(i, j));
    }
    out << '\n';
  }
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open JSON file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw ValidationError("JSON parse error in " + path + ": " + err.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write JSON file: " + path);
  out << j.dump(2) << '\n';
}

Json to_json(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Eigen::VectorXd vector_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("expected a JSON array of numbers");
  Eigen::VectorXd v(j.size());
  Eigen::Index i = 0;
  for (const auto& item : j) v(i++) = item.get<double>();
  return v;
}

}  // namespace anchorex
