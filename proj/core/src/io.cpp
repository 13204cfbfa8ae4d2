/*
 * Copyright 2026 the specmaj authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "specmaj/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "specmaj/version.hpp"

namespace specmaj {

using nlohmann::json;

MatrixDocument MatrixDocument::from_matrix(const Matrix& m, std::string label) {
  return MatrixDocument{m, std::move(label), std::nullopt};
}

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, Eigen::Index order) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != order) {
    throw std::invalid_argument("matrix document: entries must be an order x order array");
  }
  Matrix m(order, order);
  for (Eigen::Index i = 0; i < order; ++i) {
    const json& row = j.at(i);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != order) {
      throw std::invalid_argument("matrix document: ragged entry rows");
    }
    for (Eigen::Index k = 0; k < order; ++k) {
      const json& cell = row.at(k);
      if (!cell.is_array() || cell.size() != 2) {
        throw std::invalid_argument("matrix document: entries must be [re, im] pairs");
      }
      m(i, k) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

}  // namespace

std::string to_json_text(const MatrixDocument& doc) {
  json j;
  j["order"] = doc.matrix.rows();
  j["entries"] = matrix_to_json(doc.matrix);
  if (!doc.label.empty()) j["label"] = doc.label;
  if (doc.hermitian_tol) j["hermitian_tol"] = *doc.hermitian_tol;
  j["conventions_version"] = kConventionsVersion;
  return j.dump(2) + "\n";
}

MatrixDocument matrix_document_from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("matrix document: parse error: ") + e.what());
  }
  if (!j.contains("order") || !j["order"].is_number_integer()) {
    throw std::invalid_argument("matrix document: missing integer 'order'");
  }
  const Eigen::Index order = j["order"].get<Eigen::Index>();
  if (order < 0 || !j.contains("entries")) {
    throw std::invalid_argument("matrix document: bad order or missing entries");
  }
  MatrixDocument doc;
  doc.matrix = matrix_from_json(j["entries"], order);
  if (j.contains("label")) doc.label = j["label"].get<std::string>();
  if (j.contains("hermitian_tol")) doc.hermitian_tol = j["hermitian_tol"].get<double>();
  return doc;
}

MatrixDocument read_matrix_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix document: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return matrix_document_from_text(buf.str());
}

void write_matrix_document(const std::filesystem::path& path, const MatrixDocument& doc) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write matrix document: " + path.string());
  out << to_json_text(doc);
}

std::string decision_to_json_text(const Decision& decision, const Tolerances& tol) {
  json j;
  j["verdict"] = decision.feasible() ? "feasible" : "infeasible";
  j["exact"] = decision.exact;
  if (decision.certificate) {
    const Certificate& c = *decision.certificate;
    json cj;
    switch (c.kind) {
      case Certificate::Kind::kTrace: cj["kind"] = "trace"; break;
      case Certificate::Kind::kInequality: cj["kind"] = "inequality"; break;
      case Certificate::Kind::kStructural: cj["kind"] = "structural"; break;
    }
    cj["detail"] = c.detail;
    cj["lhs"] = c.lhs;
    cj["rhs"] = c.rhs;
    if (c.tuple) {
      json subsets = json::array();
      for (const auto& s : c.tuple->subsets) subsets.push_back(s.elems());
      cj["tuple"] = {{"n", c.tuple->n}, {"r", c.tuple->r}, {"subsets", subsets}};
    }
    j["certificate"] = std::move(cj);
  }
  j["tolerances"] = {{"majorization", tol.majorization},
                     {"witness", tol.witness},
                     {"psd", tol.psd},
                     {"eig", tol.eig},
                     {"rank_cutoff", tol.rank_cutoff}};
  j["conventions_version"] = kConventionsVersion;
  return j.dump(2) + "\n";
}

}  // namespace specmaj
