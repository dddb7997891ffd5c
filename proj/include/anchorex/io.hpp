#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <string>
#include <vector>

#include "anchorex/errors.hpp"

namespace anchorex {

// Key-order-preserving JSON so emitted reports are byte-deterministic.
using Json = nlohmann::ordered_json;

struct CsvTable {
  std::vector<std::string> header;
  Eigen::MatrixXd values;

  Eigen::Index column(const std::string& name) const;
};

// Reads a headered CSV of floats; parse errors carry 1-based line numbers.
CsvTable read_csv(const std::string& path);

// Writes floats with 17 significant digits so a read-back is bitwise exact.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Eigen::MatrixXd& values);

std::string format_double(double v);

Json load_json(const std::string& path);
void write_json(const std::string& path, const Json& j);

Json to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const Json& j);

}  // namespace anchorex
