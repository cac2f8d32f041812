#ifndef RDMT_IO_HPP_
#define RDMT_IO_HPP_

#include "json.hpp"
#include "rdmt/distributions.hpp"

namespace rdmt {

using Json = nlohmann::json;

// Matrix schema:
//   {"beta": B, "rows": m, "cols": n, "data": [[[c0, ..., c_{B-1}], ...], ...]}
// Parsing errors (missing fields, wrong lengths, non-numbers) throw
// FormatError.
Json matrix_to_json(const DivMatrix& x);
DivMatrix matrix_from_json(const Json& j);

// Parameter records mirror the struct field names, with the algebra given
// as "beta".  Absent location and scale fields take their defaults (zero
// mean, identity scales); absent rho is 1.
Json to_json(const MatricTParams& p);
Json to_json(const MatrixMTParams& p);
Json to_json(const WishartParams& p);
Json to_json(const GammaScalarParams& p);
Json to_json(const BetaIIParams& p);
Json to_json(const ScaleMixtureSpec& p);

MatricTParams matric_t_params_from_json(const Json& j);
MatrixMTParams matrix_mt_params_from_json(const Json& j);
WishartParams wishart_params_from_json(const Json& j);
GammaScalarParams gamma_params_from_json(const Json& j);
BetaIIParams beta2_params_from_json(const Json& j);
ScaleMixtureSpec mixture_from_json(const Json& j);

}  // namespace rdmt

#endif  // RDMT_IO_HPP_
