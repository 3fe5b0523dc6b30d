// Copyright 2026 The choiface Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON documents for channels. Complex numbers are [re, im] pairs and
// matrices are arrays of rows.
//
//   {"n": 2, "format": "choi",  "data": <4x4 matrix>}
//   {"n": 2, "format": "kraus", "data": [<2x2 matrix>, ...]}

#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "choiface/caratheodory.hpp"
#include "choiface/channel.hpp"
#include "choiface/errors.hpp"
#include "choiface/face.hpp"
#include "choiface/hermitian.hpp"

namespace choiface::io {

using nlohmann::json;

/// Raised for malformed documents; distinct from numerical errors.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex entries must be [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline ComplexMatrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw ParseError("expected " + std::to_string(rows) + " rows");
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[k]);
  }
  if (!all_finite(m)) throw ParseError("matrix has non-finite entries");
  return m;
}

inline json choi_to_json(const ChoiMatrix& c) {
  return {{"n", c.n()}, {"format", "choi"}, {"data", matrix_to_json(c.matrix())}};
}

inline json kraus_to_json(const KrausSet& k) {
  json ops = json::array();
  for (const auto& a : k.operators()) ops.push_back(matrix_to_json(a));
  return {{"n", k.n()}, {"format", "kraus"}, {"data", std::move(ops)}};
}

inline json plain_matrix_to_json(const ComplexMatrix& m) {
  return {{"format", "matrix"},
          {"rows", m.rows()},
          {"cols", m.cols()},
          {"data", matrix_to_json(m)}};
}

/// Parses a channel document; "kraus" inputs are converted to Choi form.
inline ChoiMatrix channel_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("channel document must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<int>() < 1) {
    throw ParseError("field \"n\" must be a positive integer");
  }
  if (!doc.contains("format") || !doc["format"].is_string()) {
    throw ParseError("field \"format\" must be \"choi\" or \"kraus\"");
  }
  if (!doc.contains("data")) throw ParseError("missing field \"data\"");
  const int n = doc["n"].get<int>();
  const auto format = doc["format"].get<std::string>();
  const json& data = doc["data"];
  if (format == "choi") return ChoiMatrix(n, matrix_from_json(data, n * n, n * n));
  if (format == "kraus") {
    if (!data.is_array() || data.empty()) throw ParseError("kraus data must be a nonempty array");
    std::vector<ComplexMatrix> ops;
    for (const auto& op : data) ops.push_back(matrix_from_json(op, n, n));
    return choi_from_kraus(KrausSet(std::move(ops)));
  }
  throw ParseError("unknown format \"" + format + "\"");
}

inline ChoiMatrix channel_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return channel_from_json(doc);
}

/// Reads a channel from a path, or from standard input when path is "-".
inline ChoiMatrix read_channel(const std::string& path, std::istream& stdin_stream = std::cin) {
  std::stringstream buf;
  if (path == "-") {
    buf << stdin_stream.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    buf << in.rdbuf();
  }
  return channel_from_string(buf.str());
}

inline json membership_to_json(const MembershipReport& m) {
  return {{"is_member", m.is_member},
          {"hermitian_residual", m.hermitian_residual},
          {"min_eigenvalue", m.min_eigenvalue},
          {"max_trace_condition_residual", m.max_trace_condition_residual}};
}

inline json face_report_to_json(const FaceReport& r) {
  return {{"n", r.n},
          {"rank", r.rank},
          {"face_dim", r.face_dim},
          {"is_extreme", r.is_extreme},
          {"choi_criterion_extreme", r.choi_criterion_extreme},
          {"kernel_dim", r.kernel_dim},
          {"spectral_gap", r.spectral_gap}};
}

/// {"n", "residual", "points": [{"weight", <channel document fields>}, ...]}
inline json decomposition_to_json(const Decomposition& d) {
  json points = json::array();
  for (std::size_t k = 0; k < d.points.size(); ++k) {
    json p = choi_to_json(d.points[k]);
    p["weight"] = d.weights[k];
    points.push_back(std::move(p));
  }
  return {{"n", d.points.front().n()},
          {"count", d.points.size()},
          {"residual", d.residual},
          {"points", std::move(points)}};
}

struct WeightedChannel {
  double weight;
  ChoiMatrix channel;
};

inline std::vector<WeightedChannel> decomposition_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
    throw ParseError("decomposition document needs a \"points\" array");
  }
  std::vector<WeightedChannel> out;
  for (const auto& p : doc["points"]) {
    if (!p.contains("weight") || !p["weight"].is_number()) throw ParseError("point without weight");
    out.push_back({p["weight"].get<double>(), channel_from_json(p)});
  }
  return out;
}

}  // namespace choiface::io
