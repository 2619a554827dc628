#include "atlas/state_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "atlas/errors.hpp"
#include "atlas/linalg.hpp"

namespace atlas {

namespace {

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

[[noreturn]] void fail(std::size_t lineno, const std::string& what) {
  throw ConfigInvalid("state file line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

DensityMatrix parse_state_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  Eigen::Index n_a = 0;
  Eigen::Index n_b = 0;
  bool have_dims = false;
  Eigen::MatrixXcd mat;

  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    if (blank(line)) {
      continue;
    }
    std::istringstream fields(line);
    std::string extra;
    if (!have_dims) {
      if (!(fields >> n_a >> n_b)) {
        fail(lineno, "expected header `n_a n_b`");
      }
      if (fields >> extra) {
        fail(lineno, "unexpected trailing field `" + extra + "`");
      }
      if (n_a < 1 || n_b < 1) {
        fail(lineno, "dimensions must be positive");
      }
      have_dims = true;
      mat = Eigen::MatrixXcd::Zero(n_a * n_b, n_a * n_b);
      continue;
    }
    Eigen::Index i = 0;
    Eigen::Index j = 0;
    double re = 0.0;
    double im = 0.0;
    if (!(fields >> i >> j >> re >> im)) {
      fail(lineno, "expected entry `i j re im`");
    }
    if (fields >> extra) {
      fail(lineno, "unexpected trailing field `" + extra + "`");
    }
    if (i < 0 || j < 0 || i >= mat.rows() || j >= mat.cols()) {
      fail(lineno, "index (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") outside 0.." + std::to_string(mat.rows() - 1));
    }
    mat(i, j) = Complex(re, im);
  }

  if (!have_dims) {
    throw ConfigInvalid("state file: missing header `n_a n_b`");
  }

  const double defect = hermiticity_defect(mat);
  if (defect > kStateHermTol) {
    throw NonHermitianInput("state file: hermiticity defect " + num(defect) + " exceeds " +
                            num(kStateHermTol));
  }
  mat = (0.5 * (mat + mat.adjoint())).eval();

  const double trace = mat.trace().real();
  if (std::abs(trace - 1.0) > kStateTraceTol || !(trace > 0.0)) {
    throw ConfigInvalid("state file: trace = " + num(trace) + ", must be 1 within " +
                        num(kStateTraceTol));
  }
  mat /= trace;

  const double lambda_min = min_eig(mat);
  if (lambda_min < -tolerance::psd(mat.rows())) {
    throw ConfigInvalid("state file: not positive semidefinite, min eigenvalue = " +
                        num(lambda_min));
  }

  return make_density_matrix(mat, SystemDims{n_a, n_b});
}

DensityMatrix load_state_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IOFailure("cannot open state file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_text(buf.str());
}

std::string render_state_text(const DensityMatrix& rho) {
  std::string out = std::to_string(rho.dims.n_a) + " " + std::to_string(rho.dims.n_b) + "\n";
  for (Eigen::Index i = 0; i < rho.mat.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.mat.cols(); ++j) {
      const Complex v = rho.mat(i, j);
      if (v == Complex(0.0, 0.0)) {
        continue;
      }
      out += std::to_string(i) + " " + std::to_string(j) + " " + num(v.real()) + " " +
             num(v.imag()) + "\n";
    }
  }
  return out;
}

}  // namespace atlas
