// Copyright 2026 The qsd developers.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsd/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace qsd {

OperatorBasis operator_basis(int dim) {
  if (dim < 1) {
    throw Error("operator_basis: dim must be >= 1");
  }
  using Mat = Eigen::MatrixXcd;
  const std::complex<double> i_unit(0.0, 1.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  std::vector<HermitianMatrix> gammas;
  gammas.reserve(static_cast<std::size_t>(dim) * dim);
  gammas.emplace_back(Mat::Identity(dim, dim) / std::sqrt(double(dim)));
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      Mat sym = Mat::Zero(dim, dim);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      gammas.emplace_back(sym);
    }
  }
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      Mat anti = Mat::Zero(dim, dim);
      anti(j, k) = -i_unit * inv_sqrt2;
      anti(k, j) = i_unit * inv_sqrt2;
      gammas.emplace_back(anti);
    }
  }
  for (int l = 1; l < dim; ++l) {
    Mat diag = Mat::Zero(dim, dim);
    const double scale = 1.0 / std::sqrt(double(l) * (l + 1));
    for (int m = 0; m < l; ++m) {
      diag(m, m) = scale;
    }
    diag(l, l) = -double(l) * scale;
    gammas.emplace_back(diag);
  }
  return OperatorBasis{dim, std::move(gammas)};
}

SdpProblem build_dual_sdp(const Ensemble& e) {
  SdpProblem problem;
  problem.block_count = e.size();
  problem.block_dim = e.dim();
  problem.f0_blocks.reserve(e.size());
  for (int j = 0; j < e.size(); ++j) {
    problem.f0_blocks.emplace_back(-e.weighted_state(j).matrix());
  }
  problem.basis = operator_basis(e.dim());
  problem.c.reserve(problem.basis.gammas.size());
  for (const HermitianMatrix& gamma : problem.basis.gammas) {
    problem.c.push_back(gamma.trace());
  }
  return problem;
}

namespace {

void check_povm_shape(const SdpProblem& p, const Povm& m) {
  if (m.size() != p.block_count) {
    throw CountMismatch("povm has " + std::to_string(m.size()) +
                        " elements, problem has " +
                        std::to_string(p.block_count) + " blocks");
  }
  if (m.dim() != p.block_dim) {
    throw DimensionMismatch("povm dim " + std::to_string(m.dim()) +
                            " vs block dim " + std::to_string(p.block_dim));
  }
}

}  // namespace

double dual_objective(const SdpProblem& p, const Povm& m) {
  check_povm_shape(p, m);
  double total = 0.0;
  for (int j = 0; j < p.block_count; ++j) {
    total -= trace_product(p.f0_blocks[j], m.element(j));
  }
  return total;
}

Eigen::VectorXd dual_constraint_values(const SdpProblem& p, const Povm& m) {
  check_povm_shape(p, m);
  Eigen::VectorXd values(static_cast<Eigen::Index>(p.basis.gammas.size()));
  for (std::size_t i = 0; i < p.basis.gammas.size(); ++i) {
    double v = 0.0;
    for (int j = 0; j < p.block_count; ++j) {
      v += trace_product(p.basis.gammas[i], m.element(j));
    }
    values(static_cast<Eigen::Index>(i)) = v;
  }
  return values;
}

PrimalPoint primal_objective(const Ensemble& e, const HermitianMatrix& lambda) {
  if (lambda.dim() != e.dim()) {
    throw DimensionMismatch("primal_objective: lambda dim " +
                            std::to_string(lambda.dim()) + " vs ensemble dim " +
                            std::to_string(e.dim()));
  }
  const OperatorBasis basis = operator_basis(e.dim());
  Eigen::VectorXd x(static_cast<Eigen::Index>(basis.gammas.size()));
  for (std::size_t i = 0; i < basis.gammas.size(); ++i) {
    x(static_cast<Eigen::Index>(i)) = trace_product(lambda, basis.gammas[i]);
  }
  // F(x) = F0 + sum_i x_i F_i has blocks lambda - xi_j rho_j.
  double min_eig = std::numeric_limits<double>::infinity();
  for (int j = 0; j < e.size(); ++j) {
    const HermitianMatrix block(lambda.matrix() -
                                e.weighted_state(j).matrix());
    min_eig = std::min(min_eig, min_eigenvalue(block));
  }
  const double value = x(0) * std::sqrt(double(e.dim()));
  return PrimalPoint{std::move(x), value, min_eig};
}

Eigen::MatrixXd real_embedding(const HermitianMatrix& x) {
  const int p = x.dim();
  Eigen::MatrixXd embedded(2 * p, 2 * p);
  embedded.topLeftCorner(p, p) = x.matrix().real();
  embedded.bottomRightCorner(p, p) = x.matrix().real();
  embedded.topRightCorner(p, p) = -x.matrix().imag();
  embedded.bottomLeftCorner(p, p) = x.matrix().imag();
  return embedded;
}

namespace {

void append_block_entries(std::vector<SdpaEntry>& entries, int matno,
                          int blkno, const Eigen::MatrixXd& block) {
  for (Eigen::Index r = 0; r < block.rows(); ++r) {
    for (Eigen::Index c = r; c < block.cols(); ++c) {
      const double v = block(r, c);
      if (v != 0.0) {
        entries.push_back(SdpaEntry{matno, blkno, static_cast<int>(r) + 1,
                                    static_cast<int>(c) + 1, v});
      }
    }
  }
}

}  // namespace

SdpaData sdpa_data(const SdpProblem& p) {
  SdpaData data;
  data.mdim = static_cast<int>(p.basis.gammas.size());
  data.nblock = p.block_count;
  data.block_sizes.assign(p.block_count, 2 * p.block_dim);
  data.c = p.c;
  // The file carries min c^T x s.t. sum_i x_i F_i - F0 >= 0, whose dual
  // maximizes Tr(F0 Z); flipping the sign of our F0 blocks makes that dual
  // exactly the discrimination problem.
  for (int j = 0; j < p.block_count; ++j) {
    append_block_entries(
        data.entries, 0, j + 1,
        0.5 * real_embedding(HermitianMatrix(-p.f0_blocks[j].matrix())));
  }
  for (std::size_t i = 0; i < p.basis.gammas.size(); ++i) {
    const Eigen::MatrixXd embedded = 0.5 * real_embedding(p.basis.gammas[i]);
    for (int j = 0; j < p.block_count; ++j) {
      append_block_entries(data.entries, static_cast<int>(i) + 1, j + 1,
                           embedded);
    }
  }
  return data;
}

namespace {

std::string format_17g(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

void export_sdpa(const SdpProblem& p, const std::filesystem::path& path) {
  const SdpaData data = sdpa_data(p);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoFailure("export_sdpa: cannot open " + path.string() +
                    " for writing");
  }
  out << data.mdim << " = mDIM\n";
  out << data.nblock << " = nBLOCK\n";
  for (std::size_t i = 0; i < data.block_sizes.size(); ++i) {
    out << (i ? " " : "") << data.block_sizes[i];
  }
  out << "\n";
  for (std::size_t i = 0; i < data.c.size(); ++i) {
    out << (i ? " " : "") << format_17g(data.c[i]);
  }
  out << "\n";
  for (const SdpaEntry& entry : data.entries) {
    out << entry.matno << " " << entry.blkno << " " << entry.row << " "
        << entry.col << " " << format_17g(entry.value) << "\n";
  }
  out.flush();
  if (!out) {
    throw IoFailure("export_sdpa: write to " + path.string() + " failed");
  }
}

namespace {

// Block-size and c lines may carry the braces/commas the format tolerates.
std::string strip_sdpa_punctuation(std::string line) {
  for (char& ch : line) {
    if (ch == '{' || ch == '}' || ch == '(' || ch == ')' || ch == ',') {
      ch = ' ';
    }
  }
  return line;
}

bool is_comment(const std::string& line) {
  for (char ch : line) {
    if (ch == ' ' || ch == '\t') continue;
    return ch == '*' || ch == '"';
  }
  return true;  // blank
}

std::string next_content_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (!is_comment(line)) return line;
  }
  throw Error("read_sdpa: unexpected end of file");
}

}  // namespace

SdpaData read_sdpa(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoFailure("read_sdpa: cannot open " + path.string());
  }
  SdpaData data;
  {
    std::istringstream header(next_content_line(in));
    if (!(header >> data.mdim)) throw Error("read_sdpa: malformed mDIM line");
  }
  {
    std::istringstream header(next_content_line(in));
    if (!(header >> data.nblock)) {
      throw Error("read_sdpa: malformed nBLOCK line");
    }
  }
  {
    std::istringstream sizes(strip_sdpa_punctuation(next_content_line(in)));
    int size = 0;
    while (sizes >> size) data.block_sizes.push_back(size);
    if (static_cast<int>(data.block_sizes.size()) != data.nblock) {
      throw Error("read_sdpa: expected " + std::to_string(data.nblock) +
                  " block sizes, got " +
                  std::to_string(data.block_sizes.size()));
    }
  }
  {
    std::istringstream costs(strip_sdpa_punctuation(next_content_line(in)));
    double v = 0.0;
    while (costs >> v) data.c.push_back(v);
    if (static_cast<int>(data.c.size()) != data.mdim) {
      throw Error("read_sdpa: expected " + std::to_string(data.mdim) +
                  " objective coefficients, got " +
                  std::to_string(data.c.size()));
    }
  }
  std::string line;
  while (std::getline(in, line)) {
    if (is_comment(line)) continue;
    std::istringstream fields(strip_sdpa_punctuation(line));
    SdpaEntry entry;
    if (!(fields >> entry.matno >> entry.blkno >> entry.row >> entry.col >>
          entry.value)) {
      throw Error("read_sdpa: malformed entry line: " + line);
    }
    data.entries.push_back(entry);
  }
  return data;
}

}  // namespace qsd
