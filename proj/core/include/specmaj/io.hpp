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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "specmaj/decision.hpp"
#include "specmaj/types.hpp"

namespace specmaj {

/// Matrix interchange document: order, entries as nested arrays of
/// [re, im] pairs, optional label and tolerance overrides.  Serialization is
/// plain decimal text that round-trips doubles exactly.
struct MatrixDocument {
  Matrix matrix;
  std::string label;
  std::optional<double> hermitian_tol;

  static MatrixDocument from_matrix(const Matrix& m, std::string label = "");
};

std::string to_json_text(const MatrixDocument& doc);
MatrixDocument matrix_document_from_text(const std::string& text);

MatrixDocument read_matrix_document(const std::filesystem::path& path);
void write_matrix_document(const std::filesystem::path& path, const MatrixDocument& doc);

/// Verdict object for machine consumption: verdict, exactness, certificate,
/// tolerances and the conventions version.
std::string decision_to_json_text(const Decision& decision,
                                  const Tolerances& tol = default_tolerances());

}  // namespace specmaj
