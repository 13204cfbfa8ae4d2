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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "specmaj/io.hpp"
#include "specmaj/random.hpp"

using namespace specmaj;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("specmaj-io-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// end-to-end runs go through the installed binary named by the test harness
const char* cli_path() { return std::getenv("SPECMAJ_CLI"); }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("matrix documents round trip bit-exactly") {
  const HermitianMatrix a = random_hermitian(4, 321);
  MatrixDocument doc = MatrixDocument::from_matrix(a.matrix(), "roundtrip");
  const std::string text = to_json_text(doc);
  const MatrixDocument back = matrix_document_from_text(text);
  CHECK(back.label == "roundtrip");
  REQUIRE(back.matrix.rows() == 4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      CHECK(back.matrix(i, j).real() == a.matrix()(i, j).real());
      CHECK(back.matrix(i, j).imag() == a.matrix()(i, j).imag());
    }
  }
}

TEST_CASE("matrix document validation") {
  CHECK_THROWS_AS(matrix_document_from_text("not json"), std::invalid_argument);
  CHECK_THROWS_AS(matrix_document_from_text("{\"order\": 2, \"entries\": [[1,2],[3,4]]}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(matrix_document_from_text("{\"entries\": []}"), std::invalid_argument);
}

TEST_CASE("file round trip") {
  const fs::path p = scratch_dir() / "m.json";
  const HermitianMatrix a = random_hermitian(3, 55);
  write_matrix_document(p, MatrixDocument::from_matrix(a.matrix()));
  const MatrixDocument back = read_matrix_document(p);
  CHECK(max_abs(back.matrix - a.matrix()) == 0.0);
}

TEST_CASE("decision json carries the conventions version") {
  const std::string text = decision_to_json_text(Decision::make_feasible());
  CHECK(text.find("specmaj-conv-1") != std::string::npos);
  CHECK(text.find("\"verdict\": \"feasible\"") != std::string::npos);
}

TEST_CASE("cli end-to-end exit codes" * doctest::skip(cli_path() == nullptr)) {
  REQUIRE(cli_path() != nullptr);
  const fs::path dir = scratch_dir();

  // feasibility verdicts
  CHECK(run_cli("check majorize --x 3,3 --y 4,2") == 0);
  CHECK(run_cli("check majorize --x 4,2 --y 3,3") == 1);
  CHECK(run_cli("check klyachko-sum --l0 2,0 --li 1,0 --li 1,0") == 0);
  CHECK(run_cli("check klyachko-sum --l0 2,2 --li 1,0 --li 3,0") == 1);

  // usage and data errors
  CHECK(run_cli("check majorize --x 3,3") == 64);
  CHECK(run_cli("definitely-not-a-command") == 64);
  {
    std::ofstream bad(dir / "bad.json");
    bad << "{\"order\": 1}";
  }
  CHECK(run_cli("check ext-majorize --list 1 " + (dir / "bad.json").string() + " " +
                (dir / "bad.json").string()) == 65);

  // constructions write verifiable documents
  const fs::path out = dir / "sh.json";
  CHECK(run_cli("construct schur-horn --x 1,1,1 --y 3,0,0 -o " + out.string()) == 0);
  const MatrixDocument doc = read_matrix_document(out);
  CHECK(doc.matrix.rows() == 3);
  for (int i = 0; i < 3; ++i) CHECK(doc.matrix(i, i).real() == doctest::Approx(1.0));

  CHECK(run_cli("construct counterexample --n 2 --ranks 2 --outdir " + dir.string()) == 0);
  CHECK(fs::exists(dir / "S.json"));
  CHECK(fs::exists(dir / "T.json"));

  // extended majorization on documents, feasible and infeasible
  {
    const HermitianMatrix b = random_hermitian(2, 9);
    write_matrix_document(dir / "B.json", MatrixDocument::from_matrix(b.matrix()));
    Matrix shifted = b.matrix() + Matrix::Identity(2, 2);
    write_matrix_document(dir / "A.json", MatrixDocument::from_matrix(shifted));
    CHECK(run_cli("check ext-majorize --list 2:1 " + (dir / "B.json").string() + " " +
                  (dir / "B.json").string()) == 0);
    CHECK(run_cli("check ext-majorize --list 2:1 " + (dir / "A.json").string() + " " +
                  (dir / "B.json").string()) == 1);
  }

  // enumeration listing: order 1 has no admissible tuples
  CHECK(run_cli("admissible --n 1 --m 2") == 0);
}
