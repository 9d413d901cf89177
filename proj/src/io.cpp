#include "poafd/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <fftw3.h>

#include "poafd/error.hpp"

namespace poafd::io {

namespace {

[[noreturn]] void malformed(const std::string& what)
{
    throw Error(ErrorCode::malformed_input, what);
}

std::vector<Complex> coeffs_from_json(const json& j)
{
    if (!j.is_array()) {
        malformed("\"coeffs\" must be an array of [re, im] pairs");
    }
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto& c : j) {
        out.push_back(complex_from_json(c));
    }
    return out;
}

json coeffs_to_json(std::span<const Complex> coeffs)
{
    json arr = json::array();
    for (const auto& c : coeffs) {
        arr.push_back(to_json(c));
    }
    return arr;
}

}  // namespace

json to_json(Complex z)
{
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        malformed("complex numbers are encoded as [re, im]");
    }
    const Complex z(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        malformed("non-finite complex value");
    }
    return z;
}

json to_json(const DiscFunction& f)
{
    return {{"type", "disc"}, {"coeffs", coeffs_to_json(f.coeffs())}};
}

json to_json(const BoundaryFunction& f)
{
    return {{"type", "boundary"}, {"min_k", f.min_k()}, {"coeffs", coeffs_to_json(f.coeffs())}};
}

json to_json(const KernelParam& p)
{
    return {{"q", to_json(p.q)}, {"order", p.order}};
}

json to_json(const OrthoSystem& sys)
{
    json params = json::array();
    json basis = json::array();
    json transfer = json::array();
    for (std::size_t i = 0; i < sys.size(); ++i) {
        params.push_back(sys.atom(i) ? to_json(*sys.atom(i)) : json(nullptr));
        basis.push_back(to_json(sys.basis(i)));
        transfer.push_back(coeffs_to_json(sys.transfer_rows()[i]));
    }
    return {{"degree", sys.degree()}, {"params", params}, {"basis", basis}, {"transfer", transfer}};
}

json to_json(const ExpansionResult& result, bool include_system)
{
    json params = json::array();
    for (std::size_t i = 0; i < result.system.size(); ++i) {
        params.push_back(result.system.atom(i) ? to_json(*result.system.atom(i)) : json(nullptr));
    }
    json out = {
        {"mode", result.mode == Mode::full ? "full" : "weak"},
        {"terms", result.terms()},
        {"params", params},
        {"coefficients", coeffs_to_json(result.coefficients)},
        {"residual_norms", result.residual_norms},
        {"objective_trace", result.objective_trace},
        {"supremum_trace", result.supremum_trace},
    };
    if (include_system) {
        out["system"] = to_json(result.system);
    }
    return out;
}

DiscFunction disc_from_json(const json& j)
{
    if (!j.is_object() || j.value("type", "") != "disc" || !j.contains("coeffs")) {
        malformed("expected {\"type\":\"disc\",\"coeffs\":[...]}");
    }
    auto coeffs = coeffs_from_json(j["coeffs"]);
    if (coeffs.empty()) {
        malformed("disc function has no coefficients");
    }
    return DiscFunction(std::move(coeffs));
}

BoundaryFunction boundary_from_json(const json& j)
{
    if (!j.is_object() || j.value("type", "") != "boundary" || !j.contains("coeffs") || !j.contains("min_k")) {
        malformed("expected {\"type\":\"boundary\",\"min_k\":-N,\"coeffs\":[...]}");
    }
    if (!j["min_k"].is_number_integer()) {
        malformed("\"min_k\" must be an integer");
    }
    auto coeffs = coeffs_from_json(j["coeffs"]);
    const auto min_k = j["min_k"].get<long>();
    if (min_k > 0 || coeffs.size() != static_cast<std::size_t>(-2 * min_k + 1)) {
        malformed("boundary coefficients must run from min_k = -N to N (length 2N+1)");
    }
    return BoundaryFunction(std::move(coeffs));
}

Function function_from_json(const json& j)
{
    const std::string type = j.is_object() ? j.value("type", "") : "";
    if (type == "disc") {
        return disc_from_json(j);
    }
    if (type == "boundary") {
        return boundary_from_json(j);
    }
    malformed("unknown function type \"" + type + "\"");
}

std::vector<Complex> plan_from_json(const json& j)
{
    if (!j.is_array() || j.empty()) {
        malformed("plan must be a nonempty list of [re, im] pairs");
    }
    std::vector<Complex> out;
    for (const auto& p : j) {
        out.push_back(complex_from_json(p));
    }
    return out;
}

std::string residual_csv(const ExpansionResult& result)
{
    std::ostringstream os;
    os << std::setprecision(17);
    os << "n,q_re,q_im,order,coeff_re,coeff_im,coeff_abs,residual\n";
    for (std::size_t k = 0; k < result.terms(); ++k) {
        const KernelParam p = result.system.atom(k).value_or(KernelParam{});
        const Complex c = result.coefficients[k];
        os << (k + 1) << ',' << p.q.real() << ',' << p.q.imag() << ',' << p.order << ',' << c.real() << ','
           << c.imag() << ',' << std::abs(c) << ',' << result.residual_norms[k + 1] << '\n';
    }
    return os.str();
}

BoundaryFunction boundary_from_samples(std::span<const Complex> samples, std::size_t max_degree)
{
    const std::size_t m = samples.size();
    if (m < 2) {
        malformed("need at least two samples");
    }
    for (const auto& s : samples) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            malformed("non-finite sample");
        }
    }
    // Leaving the Nyquist frequency out avoids its +/- ambiguity.
    const std::size_t band = std::min(m / 2 - 1, max_degree);

    std::vector<Complex> in(samples.begin(), samples.end());
    std::vector<Complex> spectrum(m);
    const auto plan = std::unique_ptr<fftw_plan_s, decltype(&fftw_destroy_plan)>(
        fftw_plan_dft_1d(static_cast<int>(m), reinterpret_cast<fftw_complex*>(in.data()),
                         reinterpret_cast<fftw_complex*>(spectrum.data()), FFTW_FORWARD, FFTW_ESTIMATE),
        &fftw_destroy_plan);
    fftw_execute(plan.get());

    BoundaryFunction out(band);
    const double inv_m = 1.0 / static_cast<double>(m);
    const long n = static_cast<long>(band);
    for (long k = -n; k <= n; ++k) {
        const std::size_t idx = k >= 0 ? static_cast<std::size_t>(k) : m - static_cast<std::size_t>(-k);
        out[k] = spectrum[idx] * inv_m;
    }
    return out;
}

Function ingest(const std::filesystem::path& path, std::size_t max_degree)
{
    std::ifstream in(path);
    if (!in) {
        malformed("cannot open input file " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        malformed("input file " + path.string() + " is empty");
    }
    if (text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            malformed(std::string("invalid JSON: ") + e.what());
        }
        return function_from_json(j);
    }

    std::vector<Complex> samples;
    std::istringstream lines(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        double re = 0.0;
        double im = 0.0;
        if (!(fields >> re)) {
            malformed("bad sample on line " + std::to_string(lineno));
        }
        if (!(fields >> im)) {
            im = 0.0;
            fields.clear();
        }
        std::string rest;
        if (fields >> rest) {
            malformed("too many fields on line " + std::to_string(lineno));
        }
        samples.emplace_back(re, im);
    }
    return boundary_from_samples(samples, max_degree);
}

std::string dump(const json& j)
{
    return j.dump(1);
}

}  // namespace poafd::io
