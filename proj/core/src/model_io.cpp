#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "dac/model.hpp"

namespace dac {

namespace {

using nlohmann::json;

double finite_number(const json& node, const std::string& field) {
  if (!node.is_number()) {
    throw SchemaError(SchemaError::Kind::schema, field, "expected a number");
  }
  const double value = node.get<double>();
  if (!std::isfinite(value)) {
    throw SchemaError(SchemaError::Kind::non_finite, field, "non-finite number");
  }
  return value;
}

const json& require(const json& obj, const std::string& field) {
  if (!obj.is_object()) {
    throw SchemaError(SchemaError::Kind::schema, field, "expected an object");
  }
  auto it = obj.find(field);
  if (it == obj.end()) {
    throw SchemaError(SchemaError::Kind::schema, field, "missing field");
  }
  return *it;
}

Eigen::VectorXd read_vector(const json& node, Eigen::Index n, const std::string& field) {
  if (!node.is_array()) {
    throw SchemaError(SchemaError::Kind::schema, field, "expected an array");
  }
  if (static_cast<Eigen::Index>(node.size()) != n) {
    throw SchemaError(SchemaError::Kind::dimension, field,
                      "expected " + std::to_string(n) + " entries, got " +
                          std::to_string(node.size()));
  }
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = finite_number(node[static_cast<std::size_t>(i)],
                         field + "[" + std::to_string(i) + "]");
  }
  return v;
}

Eigen::MatrixXd read_matrix(const json& node, Eigen::Index rows, Eigen::Index cols,
                            const std::string& field) {
  if (!node.is_array()) {
    throw SchemaError(SchemaError::Kind::schema, field, "expected an array of rows");
  }
  if (static_cast<Eigen::Index>(node.size()) != rows) {
    throw SchemaError(SchemaError::Kind::dimension, field,
                      "expected " + std::to_string(rows) + " rows, got " +
                          std::to_string(node.size()));
  }
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    m.row(i) = read_vector(node[static_cast<std::size_t>(i)], cols,
                           field + "[" + std::to_string(i) + "]")
                   .transpose();
  }
  return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out.push_back(vector_to_json(m.row(i).transpose()));
  }
  return out;
}

json parse_text(const std::string& text, const char* what) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    throw SchemaError(SchemaError::Kind::schema, what, "not valid JSON");
  }
  return doc;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw SchemaError(SchemaError::Kind::schema, path.string(), "cannot open file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw SchemaError(SchemaError::Kind::schema, path.string(), "cannot open file for writing");
  }
  out << text;
}

}  // namespace

Plant parse_plant(const std::string& text) {
  const json doc = parse_text(text, "plant");
  const json& n_node = require(doc, "n");
  if (!n_node.is_number_integer() || n_node.get<long>() <= 0) {
    throw SchemaError(SchemaError::Kind::schema, "n", "expected a positive integer");
  }
  const Eigen::Index n = n_node.get<Eigen::Index>();

  Plant plant;
  plant.epsilon = finite_number(require(doc, "epsilon"), "epsilon");
  plant.A = read_matrix(require(doc, "A"), n, n, "A");
  plant.b_diag = read_vector(require(doc, "b_diag"), n, "b_diag");
  plant.d_diag = read_vector(require(doc, "d_diag"), n, "d_diag");
  plant.x0 = read_vector(require(doc, "x0"), n, "x0");
  plant.w0 = read_vector(require(doc, "w0"), n, "w0");
  return plant;
}

std::string format_plant(const Plant& plant) {
  json doc;
  doc["n"] = plant.n();
  doc["epsilon"] = plant.epsilon;
  doc["A"] = matrix_to_json(plant.A);
  doc["b_diag"] = vector_to_json(plant.b_diag);
  doc["d_diag"] = vector_to_json(plant.d_diag);
  doc["x0"] = vector_to_json(plant.x0);
  doc["w0"] = vector_to_json(plant.w0);
  return doc.dump(2) + "\n";
}

Controller parse_controller(const std::string& text) {
  const json doc = parse_text(text, "controller");
  const json& order_node = require(doc, "n_state");
  if (!order_node.is_number_integer() || order_node.get<long>() < 0) {
    throw SchemaError(SchemaError::Kind::schema, "n_state", "expected a nonnegative integer");
  }
  const Eigen::Index m = order_node.get<Eigen::Index>();

  const json& dk_node = require(doc, "D_K");
  if (!dk_node.is_array() || dk_node.empty()) {
    throw SchemaError(SchemaError::Kind::schema, "D_K", "expected a non-empty array of rows");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(dk_node.size());

  Controller controller;
  controller.A_K = read_matrix(require(doc, "A_K"), m, m, "A_K");
  controller.B_K = read_matrix(require(doc, "B_K"), m, n, "B_K");
  controller.C_K = read_matrix(require(doc, "C_K"), n, m, "C_K");
  controller.D_K = read_matrix(dk_node, n, n, "D_K");
  return controller;
}

std::string format_controller(const Controller& controller) {
  json doc;
  doc["n_state"] = controller.order();
  doc["A_K"] = matrix_to_json(controller.A_K);
  doc["B_K"] = matrix_to_json(controller.B_K);
  doc["C_K"] = matrix_to_json(controller.C_K);
  doc["D_K"] = matrix_to_json(controller.D_K);
  return doc.dump(2) + "\n";
}

Plant load_plant(const std::filesystem::path& path) { return parse_plant(read_file(path)); }

void save_plant(const Plant& plant, const std::filesystem::path& path) {
  write_file(path, format_plant(plant));
}

Controller load_controller(const std::filesystem::path& path) {
  return parse_controller(read_file(path));
}

void save_controller(const Controller& controller, const std::filesystem::path& path) {
  write_file(path, format_controller(controller));
}

}  // namespace dac
