#include "poafd/cli.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "poafd/basis_method.hpp"
#include "poafd/error.hpp"
#include "poafd/io.hpp"
#include "poafd/problem_solvers.hpp"
#include "poafd/verify.hpp"

namespace poafd::cli {

namespace {

using io::json;

std::string env_name(const std::string& option)
{
    std::string env = "POAFD_" + option;
    for (auto& ch : env) {
        ch = ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    }
    return env;
}

// Reads a JSON object of option names (long form, without dashes) to values,
// for example {"grid-radial": 32, "mode": "weak"}. Keys whose POAFD_ variable
// is set are dropped so the environment takes precedence over the file.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override
    {
        json j;
        try {
            j = json::parse(input);
        } catch (const json::exception& e) {
            throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
        }
        if (!j.is_object()) {
            throw CLI::ConversionError("config file must hold a JSON object");
        }
        std::vector<CLI::ConfigItem> items;
        for (const auto& [key, value] : j.items()) {
            if (std::getenv(env_name(key).c_str()) != nullptr) {
                continue;
            }
            CLI::ConfigItem item;
            item.name = key;
            if (value.is_string()) {
                item.inputs = {value.get<std::string>()};
            } else if (value.is_number() || value.is_boolean()) {
                item.inputs = {value.dump()};
            } else {
                throw CLI::ConversionError("config value for \"" + key + "\" must be a string or number");
            }
            items.push_back(std::move(item));
        }
        return items;
    }
};

struct Settings {
    std::string mode = "full";
    double rho = 0.9;
    int grid_radial = 64;
    int grid_angular = 128;
    double r_max = kDefaultRMax;
    int max_terms = 64;
    double tol_residual = 1e-8;
    std::size_t trunc_n = kDefaultDegree;
    double eps_coincide = kDefaultEpsCoincide;
    double delta_span = kDefaultDeltaSpan;
    int refine_steps = 3;
    std::uint64_t seed = sampling::kDefaultSeed;
    std::size_t trials = 100;
    std::string plan_file;
    std::string input;
    std::string output;
    std::string csv;

    PoafdConfig poafd() const
    {
        PoafdConfig c;
        c.mode = mode == "weak" ? Mode::weak : Mode::full;
        c.rho = rho;
        c.max_terms = max_terms;
        c.tol_residual = tol_residual;
        c.eps_coincide = eps_coincide;
        c.delta_span = delta_span;
        c.grid = SelectionGrid::polar(grid_radial, grid_angular, r_max);
        c.refine_steps = refine_steps;
        c.degree = trunc_n;
        return c;
    }

    json echo() const
    {
        return {{"mode", mode},         {"rho", rho},
                {"grid_radial", grid_radial},   {"grid_angular", grid_angular},
                {"r_max", r_max},       {"max_terms", max_terms},
                {"tol_residual", tol_residual}, {"trunc_n", trunc_n},
                {"eps_coincide", eps_coincide}, {"delta_span", delta_span},
                {"refine_steps", refine_steps}};
    }
};

int exit_code(ErrorCode code)
{
    switch (code) {
    case ErrorCode::malformed_input: return kMalformedInput;
    case ErrorCode::parameter_out_of_domain: return kOutOfDomain;
    case ErrorCode::invalid_argument: return kInvalidArgument;
    case ErrorCode::exhausted_dictionary: return kExhaustedDictionary;
    case ErrorCode::degenerate_plan: return kDegeneratePlan;
    case ErrorCode::ill_conditioned: return kIllConditioned;
    case ErrorCode::zero_input: return kZeroInput;
    }
    return kInternal;
}

void report_error(std::ostream& err, std::string_view kind, const std::string& message, int code,
                  std::optional<std::size_t> index = std::nullopt)
{
    json j = {{"error", kind}, {"message", message}, {"exit_code", code}};
    if (index) {
        j["index"] = *index;
    }
    err << j.dump() << '\n';
}

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0   success\n"
    "  1   internal error\n"
    "  2   usage error\n"
    "  3   malformed input file\n"
    "  4   parameter outside the disc of radius r-max\n"
    "  5   invalid argument\n"
    "  6   exhausted dictionary (every grid point degenerate)\n"
    "  7   degenerate basis plan (coincident or dependent points)\n"
    "  8   ill-conditioned transfer matrix\n"
    "  9   zero input where a nonzero function is required\n"
    "  10  verification suite reported failures\n"
    "Errors are written to stderr as one line of JSON.\n"
    "Every option can also be set through POAFD_<NAME> (for example\n"
    "POAFD_GRID_RADIAL=32) or a JSON --config file; flags win over the\n"
    "environment, which wins over the config file.";

void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error(ErrorCode::invalid_argument, "cannot write " + path);
    }
    f << text;
}

io::Function load_input(const Settings& s)
{
    if (s.input.empty()) {
        throw Error(ErrorCode::invalid_argument, "--input is required");
    }
    return io::ingest(s.input, s.trunc_n);
}

// Analytic input for expand/invert. Boundary data is accepted only when it
// already lies in the Hardy space.
DiscFunction analytic_input(const io::Function& f)
{
    if (const auto* disc = std::get_if<DiscFunction>(&f)) {
        return *disc;
    }
    const auto& b = std::get<BoundaryFunction>(f);
    if (!plemelj_split(b).second.is_zero()) {
        throw Error(ErrorCode::invalid_argument,
                    "input has negative frequencies; use pseudo-invert for general boundary data");
    }
    return apply_L(b);
}

int cmd_expand(const Settings& s, std::ostream& out)
{
    const ExpansionResult r = solve_expansion(analytic_input(load_input(s)), s.poafd());
    if (!s.csv.empty()) {
        write_text(s.csv, io::residual_csv(r), out);
    }
    const json j = {{"command", "expand"}, {"config", s.echo()}, {"expansion", io::to_json(r, false)}};
    write_text(s.output, io::dump(j) + "\n", out);
    return kOk;
}

int cmd_invert(const Settings& s, std::ostream& out)
{
    const InversionResult r = solve_inversion(analytic_input(load_input(s)), s.poafd());
    if (!s.csv.empty()) {
        write_text(s.csv, io::residual_csv(r.expansion), out);
    }
    const json j = {{"command", "invert"},
                    {"config", s.echo()},
                    {"expansion", io::to_json(r.expansion, false)},
                    {"inverse", io::to_json(r.inverse)}};
    write_text(s.output, io::dump(j) + "\n", out);
    return kOk;
}

int cmd_pseudo_invert(const Settings& s, std::ostream& out)
{
    const io::Function in = load_input(s);
    const BoundaryFunction f = std::holds_alternative<BoundaryFunction>(in)
                                   ? std::get<BoundaryFunction>(in)
                                   : apply_L_inverse(std::get<DiscFunction>(in));
    const PseudoInverseResult r = solve_pseudo_inverse(f, s.poafd());
    if (!s.csv.empty()) {
        write_text(s.csv, io::residual_csv(r.expansion), out);
    }
    const json j = {{"command", "pseudo-invert"},
                    {"config", s.echo()},
                    {"defect", r.defect},
                    {"projection", io::to_json(r.projection)},
                    {"expansion", io::to_json(r.expansion, false)},
                    {"inverse", io::to_json(r.inverse)}};
    write_text(s.output, io::dump(j) + "\n", out);
    return kOk;
}

int cmd_basis(const Settings& s, std::ostream& out)
{
    if (s.plan_file.empty()) {
        throw Error(ErrorCode::invalid_argument, "basis needs --plan-file");
    }
    std::ifstream pf(s.plan_file);
    if (!pf) {
        throw Error(ErrorCode::malformed_input, "cannot open plan file " + s.plan_file);
    }
    json plan_json;
    try {
        plan_json = json::parse(pf);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::malformed_input, std::string("plan file is not valid JSON: ") + e.what());
    }
    const BasisPlan plan(io::plan_from_json(plan_json), s.trunc_n, s.eps_coincide, s.r_max);
    const OrthoSystem sys = basis_build(plan, s.delta_span);

    const io::Function in = load_input(s);
    json j = {{"command", "basis"}, {"config", s.echo()}, {"transfer_condition", transfer_condition(sys)}};
    json pts = json::array();
    for (const auto& q : plan.points()) {
        pts.push_back(io::to_json(q));
    }
    j["plan"] = pts;
    if (const auto* b = std::get_if<BoundaryFunction>(&in)) {
        const DiscFunction g = apply_L(*b);
        j["projection"] = io::to_json(basis_expand(g, sys));
        j["pseudo_inverse"] = io::to_json(basis_invert(g, sys, s.r_max));
    } else {
        const auto& f = std::get<DiscFunction>(in);
        j["projection"] = io::to_json(basis_expand(f, sys));
        j["inverse"] = io::to_json(basis_invert(f, sys, s.r_max));
    }
    write_text(s.output, io::dump(j) + "\n", out);
    return kOk;
}

int cmd_verify(const Settings& s, std::ostream& out)
{
    const VerificationReport report = run_verification(s.seed, s.trials);
    json checks = json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"trials", c.trials},
                          {"max_error", c.max_error},
                          {"tolerance", c.tolerance},
                          {"passed", c.passed}});
    }
    const json j = {{"command", "verify"}, {"seed", report.seed}, {"passed", report.passed()}, {"checks", checks}};
    write_text(s.output, io::dump(j) + "\n", out);
    return report.passed() ? kOk : kVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Settings s;
    CLI::App app("Pre-orthogonal adaptive Fourier decomposition in the Hardy space of the disc.", "poafd");
    app.footer(kExitCodes);
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file of option defaults");

    auto opt = [&](const std::string& name, auto& target, const std::string& help) {
        return app.add_option("--" + name, target, help)->envname(env_name(name))->capture_default_str();
    };
    opt("mode", s.mode, "Selection principle")->check(CLI::IsMember({"full", "weak"}));
    opt("rho", s.rho, "Weak-mode acceptance fraction in (0, 1)");
    opt("grid-radial", s.grid_radial, "Radial grid count (origin + rings)")->check(CLI::Range(2, 100000));
    opt("grid-angular", s.grid_angular, "Points per ring")->check(CLI::Range(1, 100000));
    opt("r-max", s.r_max, "Largest admissible |q|");
    opt("max-terms", s.max_terms, "Maximum number of expansion terms")->check(CLI::PositiveNumber);
    opt("tol-residual", s.tol_residual, "Stop when ||G|| <= tol * ||F||")->check(CLI::NonNegativeNumber);
    opt("trunc-n", s.trunc_n, "Truncation degree N")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
    opt("eps-coincide", s.eps_coincide, "Distance below which parameters coincide");
    opt("delta-span", s.delta_span, "Relative defect below which a candidate is dependent");
    opt("refine-steps", s.refine_steps, "Local refinement rounds after the grid scan")
        ->check(CLI::NonNegativeNumber);
    opt("seed", s.seed, "Random seed for verify");
    opt("trials", s.trials, "Trials per verify check")->check(CLI::PositiveNumber);
    opt("plan-file", s.plan_file, "JSON list of [re, im] points (basis)");
    opt("input", s.input, "Coefficient JSON or sample file");
    opt("output", s.output, "Result JSON path (default stdout)");
    opt("csv", s.csv, "Residual report CSV path");

    auto* expand = app.add_subcommand("expand", "POAFD expansion of an analytic function");
    auto* invert = app.add_subcommand("invert", "Minimum-norm preimage under the Cauchy operator");
    auto* pinv = app.add_subcommand("pseudo-invert", "Moore-Penrose inverse of general boundary data");
    auto* basis = app.add_subcommand("basis", "Fixed-plan basis method");
    auto* verify = app.add_subcommand("verify", "Randomized checks against brute-force references");
    for (auto* sub : {expand, invert, pinv, basis, verify}) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        report_error(err, "usage", e.what(), kUsage);
        return kUsage;
    }

    try {
        if (expand->parsed()) {
            return cmd_expand(s, out);
        }
        if (invert->parsed()) {
            return cmd_invert(s, out);
        }
        if (pinv->parsed()) {
            return cmd_pseudo_invert(s, out);
        }
        if (basis->parsed()) {
            return cmd_basis(s, out);
        }
        return cmd_verify(s, out);
    } catch (const DegeneratePlanError& e) {
        report_error(err, to_string(e.code()), e.what(), kDegeneratePlan, e.index());
        return kDegeneratePlan;
    } catch (const Error& e) {
        report_error(err, to_string(e.code()), e.what(), exit_code(e.code()));
        return exit_code(e.code());
    } catch (const std::exception& e) {
        report_error(err, "internal", e.what(), kInternal);
        return kInternal;
    }
}

}  // namespace poafd::cli
