#include "rdmt/io.hpp"

#include <string>

namespace rdmt {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw FormatError(std::string(what) + ": expected a number");
  return j.get<double>();
}

Index positive_index(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    throw FormatError(std::string(what) + ": expected a positive integer");
  }
  return static_cast<Index>(j.get<long long>());
}

AlgebraTag tag_of(const Json& j) {
  const Json& b = j.contains("beta") ? j.at("beta") : field(j, "tag");
  if (!b.is_number_integer()) throw FormatError("beta: expected an integer");
  try {
    return AlgebraTag::from_beta(b.get<int>());
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
}

double number_or(const Json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j.at(key), key) : fallback;
}

DivMatrix matrix_or_zero(const Json& j, const char* key, AlgebraTag tag,
                         Index rows, Index cols) {
  if (!j.contains(key)) return DivMatrix(tag, rows, cols);
  return matrix_from_json(j.at(key));
}

HermitianPD hpd_or_identity(const Json& j, const char* key, AlgebraTag tag,
                            Index n) {
  if (!j.contains(key)) return HermitianPD::identity(tag, n);
  return HermitianPD(matrix_from_json(j.at(key)));
}

}  // namespace

Json matrix_to_json(const DivMatrix& x) {
  Json data = Json::array();
  for (Index i = 0; i < x.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < x.cols(); ++k) {
      const auto c = x.entry(i, k);
      row.push_back(Json(std::vector<double>(c.begin(), c.end())));
    }
    data.push_back(std::move(row));
  }
  return Json{{"beta", x.beta()},
              {"rows", x.rows()},
              {"cols", x.cols()},
              {"data", std::move(data)}};
}

DivMatrix matrix_from_json(const Json& j) {
  const AlgebraTag tag = tag_of(j);
  const Index rows = positive_index(field(j, "rows"), "rows");
  const Index cols = positive_index(field(j, "cols"), "cols");
  const Json& data = field(j, "data");
  if (!data.is_array() || data.size() != rows) {
    throw FormatError("data: expected " + std::to_string(rows) + " rows");
  }
  DivMatrix x(tag, rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = data[i];
    if (!row.is_array() || row.size() != cols) {
      throw FormatError("data: expected " + std::to_string(cols) +
                        " entries per row");
    }
    for (Index k = 0; k < cols; ++k) {
      const Json& e = row[k];
      if (!e.is_array() || e.size() != static_cast<std::size_t>(tag.beta())) {
        throw FormatError("data: each entry needs beta coefficients");
      }
      auto dst = x.entry(i, k);
      for (std::size_t c = 0; c < dst.size(); ++c) dst[c] = number(e[c], "data");
    }
  }
  return x;
}

Json to_json(const MatricTParams& p) {
  return Json{{"beta", p.tag.beta()},      {"m", p.m},
              {"n", p.n},                  {"nu", p.nu},
              {"mu", matrix_to_json(p.mu)}, {"Xi", matrix_to_json(p.Xi.mat())},
              {"Sigma", matrix_to_json(p.Sigma.mat())}};
}

Json to_json(const MatrixMTParams& p) {
  return Json{{"beta", p.tag.beta()},
              {"m", p.m},
              {"n", p.n},
              {"nu", p.nu},
              {"rho", p.rho},
              {"mu", matrix_to_json(p.mu)},
              {"Delta", matrix_to_json(p.Delta.mat())},
              {"Lambda", matrix_to_json(p.Lambda.mat())}};
}

Json to_json(const WishartParams& p) {
  return Json{{"beta", p.tag.beta()},
              {"m", p.m},
              {"nu", p.nu},
              {"Xi", matrix_to_json(p.Xi.mat())}};
}

Json to_json(const GammaScalarParams& p) {
  return Json{{"beta", p.tag.beta()}, {"nu", p.nu}, {"rho", p.rho}};
}

Json to_json(const BetaIIParams& p) {
  Json j{{"beta", p.tag.beta()},
         {"m", p.m},
         {"n", p.n},
         {"nu", p.nu},
         {"orientation", p.orientation == Orientation::gram ? "gram" : "cogram"}};
  if (p.scale) j["scale"] = matrix_to_json(p.scale->mat());
  return j;
}

Json to_json(const ScaleMixtureSpec& p) {
  return Json{{"weights", p.weights}, {"scales", p.scales}};
}

MatricTParams matric_t_params_from_json(const Json& j) {
  const AlgebraTag tag = tag_of(j);
  const Index m = positive_index(field(j, "m"), "m");
  const Index n = positive_index(field(j, "n"), "n");
  MatricTParams p{tag,
                  m,
                  n,
                  number(field(j, "nu"), "nu"),
                  matrix_or_zero(j, "mu", tag, m, n),
                  hpd_or_identity(j, "Xi", tag, m),
                  hpd_or_identity(j, "Sigma", tag, n)};
  p.validate();
  return p;
}

MatrixMTParams matrix_mt_params_from_json(const Json& j) {
  const AlgebraTag tag = tag_of(j);
  const Index m = positive_index(field(j, "m"), "m");
  const Index n = positive_index(field(j, "n"), "n");
  MatrixMTParams p{tag,
                   m,
                   n,
                   number(field(j, "nu"), "nu"),
                   number_or(j, "rho", 1.0),
                   matrix_or_zero(j, "mu", tag, m, n),
                   hpd_or_identity(j, "Delta", tag, m),
                   hpd_or_identity(j, "Lambda", tag, n)};
  p.validate();
  return p;
}

WishartParams wishart_params_from_json(const Json& j) {
  const AlgebraTag tag = tag_of(j);
  const Index m = positive_index(field(j, "m"), "m");
  WishartParams p{tag, m, number(field(j, "nu"), "nu"),
                  hpd_or_identity(j, "Xi", tag, m)};
  p.validate();
  return p;
}

GammaScalarParams gamma_params_from_json(const Json& j) {
  GammaScalarParams p{tag_of(j), number(field(j, "nu"), "nu"),
                      number_or(j, "rho", 1.0)};
  p.validate();
  return p;
}

BetaIIParams beta2_params_from_json(const Json& j) {
  BetaIIParams p{tag_of(j), positive_index(field(j, "m"), "m"),
                 positive_index(field(j, "n"), "n"),
                 number(field(j, "nu"), "nu"), Orientation::gram, std::nullopt};
  if (j.contains("orientation")) {
    const Json& o = j.at("orientation");
    if (o == "gram") {
      p.orientation = Orientation::gram;
    } else if (o == "cogram") {
      p.orientation = Orientation::cogram;
    } else {
      throw FormatError("orientation: expected \"gram\" or \"cogram\"");
    }
  }
  if (j.contains("scale")) p.scale = HermitianPD(matrix_from_json(j.at("scale")));
  p.validate();
  return p;
}

ScaleMixtureSpec mixture_from_json(const Json& j) {
  const Json& w = field(j, "weights");
  const Json& s = field(j, "scales");
  if (!w.is_array() || !s.is_array()) {
    throw FormatError("mixture: weights and scales must be arrays");
  }
  ScaleMixtureSpec p;
  for (const Json& x : w) p.weights.push_back(number(x, "weights"));
  for (const Json& x : s) p.scales.push_back(number(x, "scales"));
  p.validate();
  return p;
}

}  // namespace rdmt
