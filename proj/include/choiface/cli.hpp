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

// Command-line front end: analyze, decompose, example, census.
//
// Exit codes: 0 success, 1 usage / IO / parse error, 2 input is not a
// member of C_n.

#include "CLI11.hpp"

#include <algorithm>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "choiface/caratheodory.hpp"
#include "choiface/channel.hpp"
#include "choiface/constructions.hpp"
#include "choiface/errors.hpp"
#include "choiface/face.hpp"
#include "choiface/io.hpp"

namespace choiface::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotMember = 2;

/// Seed of the i-th census sample (splitmix64 of the base seed and index).
inline std::uint64_t sample_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct CensusResult {
  std::map<int, int> histogram;  // face dimension -> count
  double min_gap = 0.0;
};

/// Face-dimension histogram over seeded random members of rank r. Samples
/// are computed independently and merged by index, so the thread count never
/// changes the result.
inline CensusResult census(int n, int rank, int samples, std::uint64_t seed,
                           const Tolerances& tol = {}, unsigned threads = 1) {
  std::vector<FaceDimension> dims(static_cast<std::size_t>(samples));
  std::vector<std::exception_ptr> errors(dims.size());
  auto work = [&](unsigned worker, unsigned stride) {
    for (std::size_t i = worker; i < dims.size(); i += stride) {
      try {
        dims[i] = face_dimension_details(random_member(n, rank, sample_seed(seed, i), tol), tol);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
    for (auto& t : pool) t.join();
  }
  CensusResult out;
  out.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    ++out.histogram[dims[i].dim];
    out.min_gap = std::min(out.min_gap, dims[i].gap);
  }
  return out;
}

namespace detail {

inline void print_rows(std::ostream& out,
                       const std::vector<std::pair<std::string, std::string>>& rows) {
  for (const auto& [key, value] : rows) {
    out << std::left << std::setw(30) << key << value << '\n';
  }
}

inline std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

inline std::string fmt(bool v) { return v ? "true" : "false"; }
inline std::string fmt(int v) { return std::to_string(v); }

}  // namespace detail

inline int cmd_analyze(const std::string& path, bool as_json, const Tolerances& tol,
                       std::istream& in, std::ostream& out, std::ostream& err) {
  const ChoiMatrix c = io::read_channel(path, in);
  const auto membership = check_membership(c, tol);
  io::json doc = io::membership_to_json(membership);
  doc["n"] = c.n();
  std::vector<std::pair<std::string, std::string>> rows{
      {"n", detail::fmt(c.n())},
      {"is_member", detail::fmt(membership.is_member)},
      {"hermitian_residual", detail::fmt(membership.hermitian_residual)},
      {"min_eigenvalue", detail::fmt(membership.min_eigenvalue)},
      {"max_trace_condition_residual", detail::fmt(membership.max_trace_condition_residual)}};
  if (membership.is_member) {
    const auto rep = analyze(c, tol);
    doc.update(io::face_report_to_json(rep));
    rows.insert(rows.end(), {{"rank", detail::fmt(rep.rank)},
                             {"face_dim", detail::fmt(rep.face_dim)},
                             {"is_extreme", detail::fmt(rep.is_extreme)},
                             {"choi_criterion_extreme", detail::fmt(rep.choi_criterion_extreme)},
                             {"kernel_dim", detail::fmt(rep.kernel_dim)},
                             {"spectral_gap", detail::fmt(rep.spectral_gap)}});
  }
  if (as_json) {
    out << doc.dump(2) << '\n';
  } else {
    detail::print_rows(out, rows);
  }
  if (!membership.is_member) {
    err << "input is not a member of C_" << c.n() << '\n';
    return kExitNotMember;
  }
  return kExitOk;
}

inline int cmd_decompose(const std::string& path, bool as_json, std::optional<std::uint64_t> seed,
                         const Tolerances& tol, std::istream& in, std::ostream& out,
                         std::ostream& err) {
  const ChoiMatrix c = io::read_channel(path, in);
  const auto membership = check_membership(c, tol);
  if (!membership.is_member) {
    err << "input is not a member of C_" << c.n() << " (min eigenvalue "
        << membership.min_eigenvalue << ", trace residual "
        << membership.max_trace_condition_residual << ")\n";
    return kExitNotMember;
  }
  const auto d = decompose(c, tol, DescentOptions{seed});
  if (as_json) {
    out << io::decomposition_to_json(d).dump(2) << '\n';
    return kExitOk;
  }
  out << "points   " << d.points.size() << '\n'
      << "residual " << detail::fmt(d.residual) << '\n'
      << std::left << std::setw(8) << "index" << std::setw(22) << "weight" << std::setw(8)
      << "rank" << "extreme\n";
  for (std::size_t k = 0; k < d.points.size(); ++k) {
    const auto rep = analyze(d.points[k], tol);
    out << std::left << std::setw(8) << k << std::setw(22) << detail::fmt(d.weights[k])
        << std::setw(8) << rep.rank << detail::fmt(rep.is_extreme) << '\n';
  }
  return kExitOk;
}

inline int cmd_example(const std::string& name, const ExampleParams& params, const Tolerances& tol,
                       std::ostream& out) {
  if (name == "p") {
    out << io::plain_matrix_to_json(p_matrix()).dump(2) << '\n';
    return kExitOk;
  }
  out << io::choi_to_json(make_example(name, params, tol)).dump(2) << '\n';
  return kExitOk;
}

inline int cmd_census(int n, int rank, int samples, std::uint64_t seed, unsigned threads,
                      bool as_json, const Tolerances& tol, std::ostream& out) {
  const auto result = census(n, rank, samples, seed, tol, threads);
  if (as_json) {
    io::json hist = io::json::object();
    for (const auto& [dim, count] : result.histogram) hist[std::to_string(dim)] = count;
    out << io::json{{"n", n},
                    {"rank", rank},
                    {"samples", samples},
                    {"seed", seed},
                    {"min_spectral_gap", result.min_gap},
                    {"histogram", hist}}
               .dump(2)
        << '\n';
    return kExitOk;
  }
  out << "n " << n << "  rank " << rank << "  samples " << samples << "  seed " << seed << '\n';
  out << std::left << std::setw(10) << "face_dim" << "count\n";
  for (const auto& [dim, count] : result.histogram) {
    out << std::left << std::setw(10) << dim << count << '\n';
  }
  return kExitOk;
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Faces, extreme points and decompositions of quantum channels"};
  app.require_subcommand(1);
  app.fallthrough();

  Tolerances tol;
  bool as_json = false;
  app.add_option("--tol-rank", tol.rank_rel, "relative eigenvalue cutoff for rank")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-psd", tol.psd_abs, "allowed most-negative eigenvalue")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-eq", tol.equality_abs, "entrywise equality tolerance")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", as_json, "emit JSON instead of a table");

  std::string path;
  auto* analyze_cmd = app.add_subcommand("analyze", "membership and face report for a channel file");
  analyze_cmd->add_option("input", path, "channel file, or - for stdin")->required();

  std::string decompose_path;
  std::uint64_t decompose_seed = 0;
  auto* decompose_cmd =
      app.add_subcommand("decompose", "convex decomposition into extreme channels");
  decompose_cmd->add_option("input", decompose_path, "channel file, or - for stdin")->required();
  auto* seed_opt =
      decompose_cmd->add_option("--seed", decompose_seed, "shuffle descent directions");

  std::string name;
  ExampleParams params;
  double s_re = 0, s_im = 0, y_re = 0, y_im = 0;
  auto* example_cmd = app.add_subcommand("example", "print a catalog channel as a channel file");
  example_cmd->add_option("name", name, "one of: " + catalog_listing())->required();
  example_cmd->add_option("--n", params.n, "dimension n")->check(CLI::PositiveNumber);
  example_cmd->add_option("--rank", params.rank, "rank for \"random\" (default n^2)")
      ->check(CLI::NonNegativeNumber);
  example_cmd->add_option("--seed", params.seed, "seed for \"random\"");
  example_cmd->add_option("--c", params.family.c, "rank2-n2 parameter c");
  example_cmd->add_option("--s-re", s_re, "rank2-n2 parameter s, real part");
  example_cmd->add_option("--s-im", s_im, "rank2-n2 parameter s, imaginary part");
  example_cmd->add_option("--y-re", y_re, "rank2-n2 parameter y, real part");
  example_cmd->add_option("--y-im", y_im, "rank2-n2 parameter y, imaginary part");

  int census_n = 2, census_rank = 3, census_samples = 100;
  std::uint64_t census_seed = 0;
  unsigned threads = 1;
  auto* census_cmd = app.add_subcommand("census", "face-dimension histogram of random members");
  census_cmd->add_option("--n", census_n, "dimension n")->check(CLI::Range(1, 6));
  census_cmd->add_option("--rank", census_rank, "Choi rank")->check(CLI::PositiveNumber);
  census_cmd->add_option("--samples", census_samples, "number of samples")
      ->check(CLI::PositiveNumber);
  census_cmd->add_option("--seed", census_seed, "base seed");
  census_cmd->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(path, as_json, tol, in, out, err);
    if (*decompose_cmd) {
      std::optional<std::uint64_t> seed;
      if (*seed_opt) seed = decompose_seed;
      return cmd_decompose(decompose_path, as_json, seed, tol, in, out, err);
    }
    if (*example_cmd) {
      params.family.s = {s_re, s_im};
      params.family.y = {y_re, y_im};
      return cmd_example(name, params, tol, out);
    }
    if (*census_cmd) {
      if (census_rank > census_n * census_n) {
        err << "--rank must not exceed n^2\n";
        return kExitUsage;
      }
      return cmd_census(census_n, census_rank, census_samples, census_seed, threads, as_json, tol,
                        out);
    }
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.code() == ErrorCode::NotMember ? kExitNotMember : kExitUsage;
  }
  return kExitUsage;
}

}  // namespace choiface::cli
