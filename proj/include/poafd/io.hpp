#pragma once

///
/// \file io.hpp
///
/// Interchange formats. Complex numbers are [re, im] pairs throughout.
///
///   disc:     {"type":"disc","coeffs":[[re,im], ...]}                 c_0..c_N
///   boundary: {"type":"boundary","min_k":-N,"coeffs":[[re,im], ...]}  c_{-N}..c_N
///
/// Sampled signals are plain text, one sample per line ("re" or "re,im"),
/// taken at the M uniform points e^{2 pi i j / M}.
///

#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "poafd/basis_method.hpp"
#include "poafd/hardy_model.hpp"
#include "poafd/orthonormalize.hpp"
#include "poafd/poafd_engine.hpp"

namespace poafd::io {

using json = nlohmann::json;
using Function = std::variant<DiscFunction, BoundaryFunction>;

json to_json(Complex z);
Complex complex_from_json(const json& j);

json to_json(const DiscFunction& f);
json to_json(const BoundaryFunction& f);
json to_json(const KernelParam& p);
json to_json(const OrthoSystem& sys);
json to_json(const ExpansionResult& result, bool include_system = true);

DiscFunction disc_from_json(const json& j);
BoundaryFunction boundary_from_json(const json& j);
Function function_from_json(const json& j);

/// Plan file: a JSON list of [re, im] pairs.
std::vector<Complex> plan_from_json(const json& j);

/// Residual report, columns n,q_re,q_im,order,coeff_re,coeff_im,coeff_abs,residual.
std::string residual_csv(const ExpansionResult& result);

/// Fourier coefficients of M uniform samples, band-limited to
/// N = min(M/2 - 1, max_degree).
BoundaryFunction boundary_from_samples(std::span<const Complex> samples, std::size_t max_degree);

/// Reads a coefficient JSON file or a sample file (anything whose first
/// non-blank character is not '{').
Function ingest(const std::filesystem::path& path, std::size_t max_degree = kDefaultDegree);

/// Serialization used for every JSON file the library writes.
std::string dump(const json& j);

}  // namespace poafd::io
